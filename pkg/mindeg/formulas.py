"""Closed-form predictions of the minimal faithful degree.

Every prediction is a ``MuPrediction``; inputs outside a formula's domain
come back inapplicable with ``mu = None`` rather than as a number.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import factorint, isprime

from mindeg.constructors import (
    Abelian,
    Amn,
    Cyclic,
    Dihedral,
    Gmn,
    GroupSpec,
    Hpq,
    Product,
    Symmetric,
    Wreath,
)
from mindeg.exceptions import InvalidDecomposition
from mindeg.ffield import mult_order

EQUALITY = "equality"
STRICT = "strict"
VIOLATION = "violation"


@dataclass(frozen=True)
class MuPrediction:
    family: str
    parameters: tuple
    mu: int | None
    case: str
    applicable: bool = True

    @classmethod
    def inapplicable(cls, family: str, parameters: tuple, reason: str) -> MuPrediction:
        return cls(family, parameters, None, reason, applicable=False)


def psi(k: int) -> int:
    """Sum of the maximal prime-power divisors of k; ``psi(1) == 0``."""
    if k < 1:
        raise ValueError(f"psi is defined for k >= 1, got {k}")
    return sum(p**e for p, e in factorint(k).items())


def is_prime_power(k: int) -> bool:
    return k > 1 and len(factorint(k)) == 1


def primary_parts(invariant_factors: Iterable[int]) -> list[int]:
    """Prime-power cyclic orders of ``C_k1 x ... x C_kt``."""
    parts = []
    for k in invariant_factors:
        parts.extend(p**e for p, e in factorint(k).items())
    return sorted(parts)


def mu_abelian(orders: Sequence[int]) -> int:
    """``a_1 + ... + a_n`` for a decomposition into cyclic prime-power factors."""
    for a in orders:
        if not is_prime_power(a):
            raise InvalidDecomposition(f"{a} is not a prime power > 1")
    return sum(orders)


def dihedral_parameters(n: int) -> tuple[int, int]:
    """``(r, n')`` with ``2n == 2^r * n'`` and n' odd, for the group D(n) of order 2n."""
    order = 2 * n
    r = 0
    while order % 2 == 0:
        order //= 2
        r += 1
    return r, order


def mu_dihedral(r: int, n: int) -> int:
    """Minimal degree of the dihedral-family group of order ``2^r * n``, n odd."""
    if r < 1 or n < 1 or n % 2 == 0:
        raise InvalidDecomposition(f"need r >= 1 and odd n >= 1, got r={r}, n={n}")
    if n == 1:
        return 2**r if r <= 2 else 2 ** (r - 1)
    if r == 1:
        return psi(n)
    return 2 ** (r - 1) + psi(n)


def mu_symmetric_predict(n: int) -> int:
    return n if n >= 2 else 0


def mu_Gppq_predict(p: int, q: int) -> MuPrediction:
    params = (p, p, q)
    if not (isprime(p) and isprime(q)):
        return MuPrediction.inapplicable("G", params, "p and q must be prime")
    if q == 2:
        r, odd = dihedral_parameters(p)
        return MuPrediction("G", params, mu_dihedral(r, odd), "q=2: dihedral of order 2p")
    if p == 2 and q == 3:
        return MuPrediction("G", params, 4, "G(2,2,3) = Sym(4)")
    if p == 2:
        return MuPrediction.inapplicable("G", params, "p=2, q>=5: not covered")
    if p == q:
        return MuPrediction("G", params, p * p, "p=q: p^2")
    if p < q:
        return MuPrediction("G", params, p * q, "p<q: pq")
    if q >= 5:
        return MuPrediction("G", params, p * q, "p>q>=5: pq")
    if p % 3 == 2:
        return MuPrediction("G", params, 3 * p, "q=3, p=2 mod 3: 3p")
    return MuPrediction("G", params, 2 * p, "q=3, p=1 mod 3: 2p")


def mu_Hpq_predict(p: int, q: int) -> MuPrediction:
    """``p^2`` when p = q, else the lesser of pq and l * p^d."""
    params = (p, q)
    if not (isprime(p) and isprime(q)):
        return MuPrediction.inapplicable("H", params, "p and q must be prime")
    if p == q:
        return MuPrediction("H", params, p * p, "p=q: p^2")
    d = mult_order(p, q)
    l = (q - 1) // d
    transitive = p * q
    intransitive = l * p**d
    if intransitive < transitive:
        return MuPrediction("H", params, intransitive, f"l*p^d = {l}*{p}^{d} < pq")
    return MuPrediction("H", params, transitive, f"pq <= l*p^d = {l}*{p}^{d}")


def mu_wreath_predict(m: int, n: int) -> MuPrediction:
    params = (m, n)
    if n == 1:
        return MuPrediction("wreath", params, psi(m), "n=1: cyclic")
    if m == 1:
        return MuPrediction("wreath", params, mu_symmetric_predict(n), "m=1: Sym(n)")
    if isprime(m):
        return MuPrediction("wreath", params, m * n, "m prime: mn")
    return MuPrediction.inapplicable("wreath", params, "composite m")


def lemma_power_exceeds(r: int, n: int) -> bool:
    """``r^(n-1) > n``."""
    return r ** (n - 1) > n


def bounds_Gppq(p: int, q: int) -> tuple[int, int]:
    """Lower bound from A(p,p,q) and upper bound from the natural action."""
    return p * (q - 1), p * q


def direct_product_check(mu_product: int, mu_factors: Sequence[int]) -> str:
    """Compare mu(G x H) with mu(G) + mu(H)."""
    total = sum(mu_factors)
    if mu_product == total:
        return EQUALITY
    if mu_product < total:
        return STRICT
    return VIOLATION


def is_nilpotent(spec: GroupSpec) -> bool:
    """Families this module can recognize as nilpotent from their parameters."""
    match spec:
        case Cyclic() | Abelian():
            return True
        case Gmn():
            return spec.n == 1
        case Amn():
            return True
        case Dihedral(n=n):
            return n & (n - 1) == 0
        case Symmetric(n=n):
            return n <= 2
        case Hpq(p=p, q=q):
            return p == q
        case Product(factors=factors):
            return all(is_nilpotent(f) for f in factors)
    return False


def predict(spec: GroupSpec) -> MuPrediction:
    """Dispatch a spec to the closed form that covers it."""
    family = spec.family
    match spec:
        case Cyclic(k=k):
            return MuPrediction(family, (k,), psi(k), "cyclic: psi(k)")
        case Abelian(factors=factors):
            parts = primary_parts(factors)
            return MuPrediction(family, factors, mu_abelian(parts) if parts else 0, "sum of primary parts")
        case Dihedral(n=n):
            r, odd = dihedral_parameters(n)
            return MuPrediction(family, (n,), mu_dihedral(r, odd), f"dihedral r={r}, n={odd}")
        case Symmetric(n=n):
            return MuPrediction(family, (n,), mu_symmetric_predict(n), "natural action")
        case Wreath(m=m, n=n):
            return mu_wreath_predict(m, n)
        case Gmn(m=m, p=p, n=n):
            if m == p:
                return mu_Gppq_predict(p, n)
            if p == 1:
                return mu_wreath_predict(m, n)
            return MuPrediction.inapplicable(family, (m, p, n), "composite G(m,p,n)")
        case Amn(m=m, p=p, n=n):
            parts = primary_parts([m] * (n - 1) + [m // p])
            return MuPrediction(family, (m, p, n), mu_abelian(parts) if parts else 0, "A(m,p,n) = C_m^(n-1) x C_(m/p)")
        case Hpq(p=p, q=q):
            return mu_Hpq_predict(p, q)
        case Product(factors=factors):
            if not all(is_nilpotent(f) for f in factors):
                return MuPrediction.inapplicable(family, (spec.text,), "non-nilpotent factor")
            parts = [predict(f) for f in factors]
            if not all(part.applicable for part in parts):
                return MuPrediction.inapplicable(family, (spec.text,), "factor without a formula")
            return MuPrediction(family, (spec.text,), sum(part.mu for part in parts), "nilpotent factors: sum")
    return MuPrediction.inapplicable(family, (spec.text,), "no formula")
