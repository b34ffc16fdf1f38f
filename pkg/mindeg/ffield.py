"""Arithmetic over prime fields: cyclotomic factorization and the b-module on A.

Polynomials are stored low-to-high (``coeffs[i]`` is the coefficient of
``x**i``). sympy's galoistools works high-to-low, so values are flipped at
the boundary.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Sequence

from sympy import isprime
from sympy.ntheory import n_order
from sympy.polys.domains import GF, ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_gcd,
    gf_monic,
    gf_mul,
    gf_pow_mod,
    gf_quo,
    gf_rem,
    gf_sub_ground,
)
from sympy.polys.matrices import DomainMatrix

from mindeg.exceptions import NoRootOfUnity, SpecInvalid
from mindeg.perm import Perm, PermGroup
from mindeg.subgroups import SubgroupRecord, generated_subgroup

logger = logging.getLogger(__name__)

Vector = tuple[int, ...]


def _require_primes(**values: int) -> None:
    for name, value in values.items():
        if not isprime(value):
            raise SpecInvalid(f"{name} = {value} is not prime")


# ----------------------------------------------------------------------
# Polynomials
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FpPoly:
    """Polynomial over F_p, coefficients low-to-high, no trailing zeros."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = [int(c) % self.p for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def from_dense(cls, dense: Sequence[int], p: int) -> FpPoly:
        """From galoistools' high-to-low list."""
        return cls(p, tuple(int(c) for c in reversed(dense)))

    @classmethod
    def cyclotomic(cls, r: int, p: int) -> FpPoly:
        """``Q_r(x) = 1 + x + ... + x^(r-1)``."""
        return cls(p, (1,) * r)

    @property
    def dense(self) -> list[int]:
        return [ZZ(c) for c in reversed(self.coeffs)]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __mul__(self, other: FpPoly) -> FpPoly:
        return FpPoly.from_dense(gf_mul(self.dense, other.dense, self.p, ZZ), self.p)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            terms.append(coef + mono)
        return " + ".join(terms)


# ----------------------------------------------------------------------
# Orders and roots
# ----------------------------------------------------------------------

def mult_order(p: int, q: int) -> int:
    """Least d >= 1 with ``p**d == 1 (mod q)``."""
    if p % q == 0:
        raise SpecInvalid(f"{p} is not invertible mod {q}")
    if q == 2:
        return 1
    return int(n_order(p, q))


def root_of_unity(q: int, p: int) -> int:
    """Least primitive q-th root of unity in F_p."""
    _require_primes(q=q, p=p)
    if p % q != 1:
        raise NoRootOfUnity(q, p)
    for x in range(2, p):
        if pow(x, q, p) == 1:
            return x
    raise NoRootOfUnity(q, p)


# ----------------------------------------------------------------------
# Cyclotomic factorization
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CyclotomicFactorization:
    p: int
    r: int
    d: int
    l: int
    factors: tuple[FpPoly, ...]
    seed: int

    def product(self) -> FpPoly:
        acc = FpPoly(self.p, (1,))
        for f in self.factors:
            acc = acc * f
        return acc

    def verify(self) -> list[str]:
        """Violated invariants, empty when the factorization is sound."""
        problems = []
        if self.product() != FpPoly.cyclotomic(self.r, self.p):
            problems.append("product of factors differs from Q_r")
        if len(self.factors) != self.l:
            problems.append(f"{len(self.factors)} factors, expected {self.l}")
        for f in self.factors:
            if f.degree != self.d or not f.is_monic:
                problems.append(f"factor {f} is not monic of degree {self.d}")
        for i, f in enumerate(self.factors):
            for g in self.factors[i + 1:]:
                if len(gf_gcd(f.dense, g.dense, self.p, ZZ)) > 1:
                    problems.append(f"factors {f} and {g} share a root")
        return problems

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "d": self.d,
            "l": self.l,
            "factors": [list(f.coeffs) for f in self.factors],
            "seed": self.seed,
        }


def _random_dense(rng: random.Random, degree: int, p: int) -> list[int]:
    """Random nonconstant polynomial of degree below ``degree`` (high-to-low)."""
    while True:
        dense = [ZZ(rng.randrange(p)) for _ in range(degree)]
        while dense and dense[0] == 0:
            dense.pop(0)
        if len(dense) > 1:
            return dense


def _split_once(f: list[int], d: int, p: int, rng: random.Random) -> list[int] | None:
    """One Cantor-Zassenhaus attempt: a proper factor of f, or None."""
    a = _random_dense(rng, len(f) - 1, p)
    if p == 2:
        # trace map a + a^2 + ... + a^(2^(d-1)) mod f
        h = r = gf_rem(a, f, p, ZZ)
        for _ in range(d - 1):
            r = gf_pow_mod(r, 2, f, p, ZZ)
            h = gf_add(h, r, p, ZZ)
        g = gf_gcd(f, h, p, ZZ)
    else:
        h = gf_pow_mod(a, (p**d - 1) // 2, f, p, ZZ)
        g = gf_gcd(f, gf_sub_ground(h, ZZ.one, p, ZZ), p, ZZ)
    if 1 < len(g) < len(f):
        return g
    return None


def factor_cyclotomic(r: int, p: int, seed: int = 0) -> CyclotomicFactorization:
    """Factor ``Q_r`` over F_p into its (r-1)/d monic irreducibles of degree d."""
    _require_primes(r=r, p=p)
    if r == p:
        raise SpecInvalid(f"r and p must differ, got r = p = {r}")
    d = mult_order(p, r)
    l = (r - 1) // d
    Q = FpPoly.cyclotomic(r, p)

    if d == 1:
        roots = [x for x in range(1, p) if Q(x) == 0]
        factors = [FpPoly(p, (-x, 1)) for x in roots]
    elif l == 1:
        factors = [Q]
    else:
        rng = random.Random(seed)
        done: list[list[int]] = []
        stack = [gf_monic(Q.dense, p, ZZ)[1]]
        attempts = 0
        while stack:
            f = stack.pop()
            if len(f) - 1 == d:
                done.append(f)
                continue
            g = None
            while g is None:
                attempts += 1
                g = _split_once(f, d, p, rng)
            stack.append(g)
            stack.append(gf_quo(f, g, p, ZZ))
        logger.debug("Q_%d over F_%d split after %d attempts (seed %d)", r, p, attempts, seed)
        factors = [FpPoly.from_dense(gf_monic(f, p, ZZ)[1], p) for f in done]

    factors.sort(key=lambda f: f.coeffs)
    return CyclotomicFactorization(p, r, d, l, tuple(factors), seed)


# ----------------------------------------------------------------------
# Linear algebra mod p
# ----------------------------------------------------------------------

def field_matrix(rows: Sequence[Sequence[int]], p: int) -> DomainMatrix:
    return DomainMatrix.from_list([[int(x) for x in row] for row in rows], GF(p))


def _vectors(M: DomainMatrix, p: int) -> tuple[Vector, ...]:
    return tuple(tuple(int(x) % p for x in row) for row in M.to_list())


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    return field_matrix(rows, p).rank() if rows else 0


def left_kernel(M: DomainMatrix, p: int) -> list[Vector]:
    """Basis of ``{v : v M = 0}`` over F_p."""
    return list(_vectors(M.transpose().nullspace(), p))


# ----------------------------------------------------------------------
# Module decomposition
# ----------------------------------------------------------------------

def companion_matrix(p: int, q: int) -> DomainMatrix:
    """Matrix of b acting on A in the basis c_1, ..., c_(q-1), rows as images."""
    n = q - 1
    rows = [[1 if j == i + 1 else 0 for j in range(n)] for i in range(n - 1)]
    rows.append([p - 1] * n)
    return field_matrix(rows, p)


def poly_at_matrix(f: FpPoly, M: DomainMatrix) -> DomainMatrix:
    """Horner evaluation of f at a square matrix over GF(p)."""
    n = M.shape[0]
    identity = field_matrix([[int(i == j) for j in range(n)] for i in range(n)], f.p)
    acc = identity.scalarmul(M.domain(0))
    for c in reversed(f.coeffs):
        acc = acc * M + identity.scalarmul(M.domain(c))
    return acc


@dataclass(frozen=True, eq=False)
class ModuleDecomposition:
    p: int
    q: int
    companion: DomainMatrix
    factors: tuple[FpPoly, ...]
    submodules: tuple[tuple[Vector, ...], ...]
    d: int = field(default=0)

    @property
    def l(self) -> int:
        return len(self.submodules)

    def verify(self) -> list[str]:
        """Violated invariants, empty when the decomposition is sound."""
        problems = []
        n = self.q - 1
        for basis in self.submodules:
            if len(basis) != self.d:
                problems.append(f"submodule of dimension {len(basis)}, expected {self.d}")
            if not basis:
                continue
            images = _vectors(field_matrix(basis, self.p) * self.companion, self.p)
            if rank_mod_p(list(basis) + list(images), self.p) != len(basis):
                problems.append(f"submodule spanned by {basis} is not B-invariant")
        everything = [v for basis in self.submodules for v in basis]
        if rank_mod_p(everything, self.p) != n or len(everything) != n:
            problems.append("submodules do not form a direct sum decomposition")
        return problems


def decompose_module(p: int, q: int, seed: int = 0) -> ModuleDecomposition:
    """Irreducible b-submodules of A = F_p^(q-1), one per irreducible factor of Q_q."""
    if p == q:
        raise SpecInvalid(f"p and q must differ, got p = q = {p}")
    factorization = factor_cyclotomic(q, p, seed=seed)
    B = companion_matrix(p, q)
    submodules = tuple(tuple(left_kernel(poly_at_matrix(f, B), p)) for f in factorization.factors)
    logger.debug(
        "A(%d,%d,%d): %d submodules of dimension %d",
        p, p, q, len(submodules), factorization.d,
    )
    return ModuleDecomposition(p, q, B, factorization.factors, submodules, factorization.d)


def submodule_to_subgroup(
    decomp: ModuleDecomposition,
    group: PermGroup,
    c: Sequence[Perm],
) -> list[SubgroupRecord]:
    """Map each submodule to the subgroup of H spanned by ``c_1^a_1 ... c_(q-1)^a_(q-1)``."""
    if len(c) != decomp.q - 1:
        raise SpecInvalid(f"expected {decomp.q - 1} basis elements c_i, got {len(c)}")
    records = []
    for i, basis in enumerate(decomp.submodules):
        gens = []
        for alpha in basis:
            x = group.identity
            for ci, a in zip(c, alpha):
                x = x * ci**a
            gens.append(x)
        records.append(generated_subgroup(group, gens, name=f"A_{i + 1}"))
    return records
