"""Permutations and finitely generated permutation groups.

Points are 0-based. Composition is left-to-right: ``(p * q)(i) == q(p(i))``,
so conjugation ``g^-1 * x * g`` and right cosets ``H * g`` read left to
right.
"""

from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy.combinatorics import Permutation, PermutationGroup

from mindeg.config import DEFAULT_MAX_ORDER
from mindeg.exceptions import CapExceeded

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True, slots=True)
class Perm:
    """A bijection of {0, ..., degree - 1}, ordered by its image sequence."""

    images: tuple[int, ...]

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def of(cls, images: Sequence[int]) -> Perm:
        """Validated constructor."""
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        return cls(images)

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Perm:
        """Build from disjoint cycles, e.g. ``Perm.from_cycles(3, (0, 1, 2))``."""
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            for i, point in enumerate(cycle):
                if point in seen or not 0 <= point < degree:
                    raise ValueError(f"bad cycle {cycle} for degree {degree}")
                seen.add(point)
                images[point] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(images))

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Perm) -> Perm:
        return Perm(tuple(map(other.images.__getitem__, self.images)))

    def inverse(self) -> Perm:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def __pow__(self, k: int) -> Perm:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Perm.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, g: Perm) -> Perm:
        """``g^-1 * self * g``."""
        return g.inverse() * self * g

    def commutes_with(self, other: Perm) -> bool:
        return self * other == other * self

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point."""
        seen: set[int] = set()
        out = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if not self.is_identity else 1

    def __repr__(self) -> str:
        if self.is_identity:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())


def closure(
    generators: Sequence[Perm],
    degree: int,
    cap: int | None = None,
    what: str = "closure",
) -> frozenset[Perm]:
    """Breadth-first closure of ``generators`` under right multiplication."""
    identity = Perm.identity(degree)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    if cap is not None and len(seen) > cap:
                        raise CapExceeded(what, cap)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def extend_closure(
    elements: frozenset[Perm],
    generators: Sequence[Perm],
    new: Perm,
) -> frozenset[Perm]:
    """Dimino step: the closure of a known subgroup plus one more element.

    ``elements`` must be the subgroup generated by ``generators``. The result
    is built coset by coset, so each element is multiplied out once.
    """
    if new in elements:
        return elements
    gens = list(generators) + [new]
    base = list(elements)
    result = set(elements)
    reps = [Perm.identity(new.degree)]
    i = 0
    while i < len(reps):
        r = reps[i]
        i += 1
        for t in gens:
            z = r * t
            if z not in result:
                result.update(s * z for s in base)
                reps.append(z)
    return frozenset(result)


class PermGroup:
    """A permutation group given by generators, materialized on demand.

    Materialization is exhaustive and bounded by ``max_order``. The element
    tuple is sorted by image sequence, which fixes iteration order for every
    downstream computation.
    """

    def __init__(
        self,
        degree: int,
        generators: Iterable[Perm] = (),
        name: str = "",
        max_order: int = DEFAULT_MAX_ORDER,
    ):
        gens: list[Perm] = []
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
            if not g.is_identity and g not in gens:
                gens.append(g)
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(gens)
        self.name = name
        self.max_order = max_order
        self._elements: tuple[Perm, ...] | None = None
        self._element_set: frozenset[Perm] | None = None
        self._lock = threading.Lock()

    @classmethod
    def from_elements(
        cls,
        degree: int,
        generators: Iterable[Perm],
        elements: Iterable[Perm],
        name: str = "",
        max_order: int = DEFAULT_MAX_ORDER,
    ) -> PermGroup:
        """A group whose element set is already known (e.g. a subgroup)."""
        group = cls(degree, generators, name=name, max_order=max_order)
        group._element_set = frozenset(elements)
        group._elements = tuple(sorted(group._element_set))
        return group

    # ------------------------------------------------------------------
    # Materialization
    # ------------------------------------------------------------------

    @property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def projected_order(self) -> int:
        """Order from a Schreier-Sims run, without listing elements."""
        if self._elements is not None:
            return len(self._elements)
        if not self.generators:
            return 1
        sym = PermutationGroup([Permutation(list(g.images)) for g in self.generators])
        return int(sym.order())

    def materialize(self) -> tuple[Perm, ...]:
        """Closed, sorted element tuple. Raises CapExceeded past ``max_order``."""
        if self._elements is not None:
            return self._elements
        with self._lock:
            if self._elements is None:
                projected = self.projected_order()
                if projected > self.max_order:
                    raise CapExceeded(f"order of {self.name or 'group'} ({projected})", self.max_order)
                elements = closure(self.generators, self.degree, self.max_order, self.name or "group")
                logger.debug("materialized %s: order %d", self.name or "group", len(elements))
                self._element_set = elements
                self._elements = tuple(sorted(elements))
        return self._elements

    @property
    def elements(self) -> tuple[Perm, ...]:
        return self.materialize()

    @property
    def element_set(self) -> frozenset[Perm]:
        self.materialize()
        return self._element_set

    @property
    def order(self) -> int:
        return len(self.materialize())

    @property
    def is_materialized(self) -> bool:
        return self._elements is not None

    @property
    def is_trivial(self) -> bool:
        return not self.generators

    def __contains__(self, g: Perm) -> bool:
        return g in self.element_set

    def __repr__(self) -> str:
        label = self.name or f"<{len(self.generators)} generators>"
        size = f", order {len(self._elements)}" if self._elements is not None else ""
        return f"PermGroup({label}, degree {self.degree}{size})"


def materialize(group: PermGroup) -> tuple[tuple[Perm, ...], int]:
    """Element tuple and order of ``group``."""
    elements = group.materialize()
    return elements, len(elements)
