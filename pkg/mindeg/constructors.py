"""Group families as explicit permutation groups.

Block layout: for the families built on m-point blocks (Wreath, A, G, H),
block i occupies points ``i*m .. i*m + m - 1`` and ``theta_i`` cycles that
block. ``c_i = theta_i * theta_(i+1)^-1``, ``a`` swaps blocks 0 and 1, ``b``
sends block i to block i+1 (mod n), and ``gamma`` is the product of all
``theta_i``. Lists are 0-based, so ``c[0]`` is c_1.
"""

from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, ClassVar

from sympy import isprime

from mindeg.config import DEFAULT_MAX_ORDER
from mindeg.exceptions import SpecInvalid
from mindeg.ffield import root_of_unity
from mindeg.perm import Perm, PermGroup
from mindeg.subgroups import (
    SubgroupRecord,
    center,
    generated_subgroup,
    intersection,
)

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Specs
# ----------------------------------------------------------------------

class GroupSpec(ABC):
    """A group family tag with its parameters."""

    family: ClassVar[str] = ""

    @property
    @abstractmethod
    def text(self) -> str:
        """Canonical spec text, parseable back into an equal spec."""

    def validate(self) -> None:
        pass

    def __str__(self) -> str:
        return self.text


def _positive(**values: int) -> None:
    for name, value in values.items():
        if value < 1:
            raise SpecInvalid(f"{name} must be >= 1, got {value}")


@dataclass(frozen=True)
class Cyclic(GroupSpec):
    family: ClassVar[str] = "cyclic"
    k: int

    @property
    def text(self) -> str:
        return f"C({self.k})"

    def validate(self) -> None:
        _positive(k=self.k)


@dataclass(frozen=True)
class Abelian(GroupSpec):
    family: ClassVar[str] = "abelian"
    factors: tuple[int, ...]

    @property
    def text(self) -> str:
        return f"Ab({','.join(map(str, self.factors))})"

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    def validate(self) -> None:
        if not self.factors:
            raise SpecInvalid("Ab() needs at least one factor")
        for k in self.factors:
            _positive(k=k)


@dataclass(frozen=True)
class Dihedral(GroupSpec):
    """Dihedral group of order 2n."""

    family: ClassVar[str] = "dihedral"
    n: int

    @property
    def text(self) -> str:
        return f"D({self.n})"

    def validate(self) -> None:
        _positive(n=self.n)


@dataclass(frozen=True)
class Symmetric(GroupSpec):
    family: ClassVar[str] = "symmetric"
    n: int

    @property
    def text(self) -> str:
        return f"S({self.n})"

    def validate(self) -> None:
        _positive(n=self.n)


@dataclass(frozen=True)
class Wreath(GroupSpec):
    """C_m wr Sym(n)."""

    family: ClassVar[str] = "wreath"
    m: int
    n: int

    @property
    def text(self) -> str:
        return f"Wr({self.m},{self.n})"

    def validate(self) -> None:
        _positive(m=self.m, n=self.n)


@dataclass(frozen=True)
class Amn(GroupSpec):
    family: ClassVar[str] = "A"
    m: int
    p: int
    n: int

    @property
    def text(self) -> str:
        return f"A({self.m},{self.p},{self.n})"

    def validate(self) -> None:
        _positive(m=self.m, p=self.p, n=self.n)
        if self.m % self.p:
            raise SpecInvalid(f"{self.p} does not divide {self.m} in {self.text}")


@dataclass(frozen=True)
class Gmn(Amn):
    family: ClassVar[str] = "G"

    @property
    def text(self) -> str:
        return f"G({self.m},{self.p},{self.n})"


@dataclass(frozen=True)
class Hpq(GroupSpec):
    """``<c_1, ..., c_(q-1), b>`` inside G(p,p,q)."""

    family: ClassVar[str] = "H"
    p: int
    q: int

    @property
    def text(self) -> str:
        return f"H({self.p},{self.q})"

    def validate(self) -> None:
        for name, value in (("p", self.p), ("q", self.q)):
            if not isprime(value):
                raise SpecInvalid(f"{name} = {value} is not prime in {self.text}")


@dataclass(frozen=True)
class Product(GroupSpec):
    family: ClassVar[str] = "product"
    factors: tuple[GroupSpec, ...]

    @property
    def text(self) -> str:
        return f"X({','.join(f.text for f in self.factors)})"

    def validate(self) -> None:
        if len(self.factors) < 2:
            raise SpecInvalid("X() needs at least two factors")
        for f in self.factors:
            f.validate()


# ----------------------------------------------------------------------
# Named elements
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class NamedElements:
    """The elements a block-layout family is described by."""

    m: int
    n: int
    theta: tuple[Perm, ...]
    c: tuple[Perm, ...]
    a: Perm | None
    b: Perm | None
    gamma: Perm

    @classmethod
    def build(cls, m: int, n: int) -> NamedElements:
        degree = m * n
        theta = tuple(
            Perm.from_cycles(degree, tuple(range(i * m, (i + 1) * m))) for i in range(n)
        )
        c = tuple(theta[i] * theta[i + 1].inverse() for i in range(n - 1))
        a = b = None
        if n >= 2:
            swap = list(range(degree))
            for j in range(m):
                swap[j], swap[m + j] = m + j, j
            a = Perm(tuple(swap))
            b = Perm(tuple(((pt // m + 1) % n) * m + pt % m for pt in range(degree)))
        gamma = Perm.identity(degree)
        for t in theta:
            gamma = gamma * t
        return cls(m, n, theta, c, a, b, gamma)

    @property
    def degree(self) -> int:
        return self.m * self.n

    def c_power(self, alpha: tuple[int, ...]) -> Perm:
        """``c_1^alpha_1 * ... * c_(n-1)^alpha_(n-1)``."""
        x = Perm.identity(self.degree)
        for ci, a in zip(self.c, alpha):
            x = x * ci**a
        return x


def b_action_holds(named: NamedElements) -> bool:
    """``c_i^b == c_(i+1)`` for i < n-1 and ``c_(n-1)^b == (c_1 ... c_(n-1))^-1``."""
    if named.b is None or named.n < 2:
        return True
    c, b = named.c, named.b
    for i in range(len(c) - 1):
        if c[i].conjugate(b) != c[i + 1]:
            return False
    product = Perm.identity(named.degree)
    for ci in c:
        product = product * ci
    return c[-1].conjugate(b) == product.inverse()


# ----------------------------------------------------------------------
# Builders
# ----------------------------------------------------------------------

@dataclass
class Construction:
    spec: GroupSpec
    group: PermGroup
    named: NamedElements | None = None


_builders: dict[type, Callable[[GroupSpec, int], Construction]] = {}


def _builds(spec_type: type):
    def decorator(fn):
        _builders[spec_type] = fn
        return fn
    return decorator


def construct(spec: GroupSpec, max_order: int = DEFAULT_MAX_ORDER) -> Construction:
    """Build ``spec`` as a permutation group (not yet materialized)."""
    spec.validate()
    builder = _builders.get(type(spec))
    if builder is None:
        raise SpecInvalid(f"no constructor for {type(spec).__name__}")
    built = builder(spec, max_order)
    logger.debug("constructed %s on %d points", spec.text, built.group.degree)
    return built


def _cycle(degree: int, start: int, length: int) -> Perm:
    return Perm.from_cycles(degree, tuple(range(start, start + length)))


@_builds(Cyclic)
def _cyclic(spec: Cyclic, max_order: int) -> Construction:
    group = PermGroup(spec.k, [_cycle(spec.k, 0, spec.k)], name=spec.text, max_order=max_order)
    return Construction(spec, group)


@_builds(Abelian)
def _abelian(spec: Abelian, max_order: int) -> Construction:
    degree = sum(spec.factors)
    gens = []
    start = 0
    for k in spec.factors:
        gens.append(_cycle(degree, start, k))
        start += k
    return Construction(spec, PermGroup(degree, gens, name=spec.text, max_order=max_order))


@_builds(Dihedral)
def _dihedral(spec: Dihedral, max_order: int) -> Construction:
    n = spec.n
    if n == 1:
        gens = [Perm.from_cycles(2, (0, 1))]
        degree = 2
    elif n == 2:
        # Klein four-group, regular on 4 points
        gens = [Perm.from_cycles(4, (0, 1), (2, 3)), Perm.from_cycles(4, (0, 2), (1, 3))]
        degree = 4
    else:
        rotation = _cycle(n, 0, n)
        reflection = Perm(tuple((-i) % n for i in range(n)))
        gens = [rotation, reflection]
        degree = n
    return Construction(spec, PermGroup(degree, gens, name=spec.text, max_order=max_order))


@_builds(Symmetric)
def _symmetric(spec: Symmetric, max_order: int) -> Construction:
    n = spec.n
    gens = []
    if n >= 2:
        gens = [Perm.from_cycles(n, (0, 1)), _cycle(n, 0, n)]
    return Construction(spec, PermGroup(n, gens, name=spec.text, max_order=max_order))


@_builds(Wreath)
def _wreath(spec: Wreath, max_order: int) -> Construction:
    named = NamedElements.build(spec.m, spec.n)
    gens = [named.theta[0], named.a, named.b]
    group = PermGroup(named.degree, [g for g in gens if g is not None], name=spec.text, max_order=max_order)
    return Construction(spec, group, named)


def _diagonal_generators(named: NamedElements, p: int) -> list[Perm]:
    """Generators of A(m,p,n): the c_i and theta_1^p."""
    return list(named.c) + [named.theta[0] ** p]


@_builds(Amn)
def _amn(spec: Amn, max_order: int) -> Construction:
    named = NamedElements.build(spec.m, spec.n)
    group = PermGroup(named.degree, _diagonal_generators(named, spec.p), name=spec.text, max_order=max_order)
    return Construction(spec, group, named)


@_builds(Gmn)
def _gmn(spec: Gmn, max_order: int) -> Construction:
    named = NamedElements.build(spec.m, spec.n)
    gens = _diagonal_generators(named, spec.p) + [g for g in (named.a, named.b) if g is not None]
    return Construction(spec, PermGroup(named.degree, gens, name=spec.text, max_order=max_order), named)


@_builds(Hpq)
def _hpq(spec: Hpq, max_order: int) -> Construction:
    named = NamedElements.build(spec.p, spec.q)
    gens = list(named.c) + ([named.b] if named.b is not None else [])
    return Construction(spec, PermGroup(named.degree, gens, name=spec.text, max_order=max_order), named)


@_builds(Product)
def _product(spec: Product, max_order: int) -> Construction:
    parts = [construct(f, max_order).group for f in spec.factors]
    degree = sum(g.degree for g in parts)
    gens = []
    offset = 0
    for part in parts:
        for g in part.generators:
            images = list(range(degree))
            for i, j in enumerate(g.images):
                images[offset + i] = offset + j
            gens.append(Perm(tuple(images)))
        offset += part.degree
    return Construction(spec, PermGroup(degree, gens, name=spec.text, max_order=max_order))


def expected_order(spec: GroupSpec) -> int | None:
    """Closed-form order of a family, None where there is none."""
    match spec:
        case Cyclic(k=k):
            return k
        case Abelian():
            return spec.order
        case Dihedral(n=n):
            return 2 * n
        case Symmetric(n=n):
            return math.factorial(n)
        case Wreath(m=m, n=n):
            return m**n * math.factorial(n)
        case Gmn(m=m, p=p, n=n):
            return m**n * math.factorial(n) // p
        case Amn(m=m, p=p, n=n):
            return m**n // p
        case Hpq(p=p, q=q):
            return p ** (q - 1) * q
        case Product(factors=factors):
            orders = [expected_order(f) for f in factors]
            return None if None in orders else math.prod(orders)
    return None


# ----------------------------------------------------------------------
# Named subgroups
# ----------------------------------------------------------------------

def _odd_prime(name: str, value: int) -> None:
    if value == 2 or not isprime(value):
        raise SpecInvalid(f"{name} = {value} must be an odd prime")


def subgroup_H(p: int, q: int, max_order: int = DEFAULT_MAX_ORDER) -> tuple[Construction, SubgroupRecord]:
    """G(p,p,q) and its subgroup ``<c_1, ..., c_(q-1), b>`` of order p^(q-1) q."""
    _odd_prime("p", p)
    _odd_prime("q", q)
    built = construct(Gmn(p, p, q), max_order)
    named = built.named
    H = generated_subgroup(built.group, list(named.c) + [named.b], name=f"H({p},{q})")
    return built, H


def special_L(p: int, max_order: int = DEFAULT_MAX_ORDER) -> tuple[Construction, SubgroupRecord]:
    """G(p,p,3) and ``L = <c_1 * c_2^-z, b>`` for the least primitive cube root z."""
    _odd_prime("p", p)
    root_of_unity(3, p)
    built = construct(Gmn(p, p, 3), max_order)
    named = built.named
    L = generated_subgroup(built.group, [eigenline(p, named), named.b], name=f"L({p})")
    return built, L


def eigenline(p: int, named: NamedElements) -> Perm:
    """``c_1 * c_2^-z``, the b-eigenvector spanning the normal part of L."""
    zeta = root_of_unity(3, p)
    return named.c_power((1, (p - zeta) % p))


@dataclass
class WreathDecomposition:
    p: int
    q: int
    applicable: bool
    gamma: SubgroupRecord
    gmn: SubgroupRecord
    intersection_trivial: bool
    product_order: int
    wreath_order: int
    gamma_central: bool
    centralizer_inside_gmn: bool | None = None

    @property
    def holds(self) -> bool:
        if not self.applicable:
            return bool(self.centralizer_inside_gmn)
        return self.intersection_trivial and self.product_order == self.wreath_order and self.gamma_central


def wreath_decomposition(p: int, q: int, max_order: int = DEFAULT_MAX_ORDER) -> WreathDecomposition:
    """Check that C_p wr Sym(q) is the internal direct product of <gamma> and G(p,p,q).

    For p == q the decomposition does not apply; instead the centralizer of
    G(p,p,p) in the wreath product is checked to lie inside G(p,p,p).
    """
    _odd_prime("p", p)
    _odd_prime("q", q)
    built = construct(Wreath(p, q), max_order)
    W = built.group
    W.materialize()
    named = built.named
    gmn_gens = _diagonal_generators(named, p) + [named.a, named.b]
    G = generated_subgroup(W, gmn_gens, name=f"G({p},{p},{q})")
    gamma = generated_subgroup(W, [named.gamma], name="<gamma>")
    meet = intersection(gamma, G)
    Z = center(W)
    result = WreathDecomposition(
        p=p,
        q=q,
        applicable=p != q,
        gamma=gamma,
        gmn=G,
        intersection_trivial=meet.is_trivial,
        product_order=gamma.order * G.order // meet.order,
        wreath_order=W.order,
        gamma_central=named.gamma in Z,
    )
    if p == q:
        centralizer = [w for w in W.elements if all(w.commutes_with(g) for g in G.generators)]
        result.centralizer_inside_gmn = all(w in G for w in centralizer)
    return result
