"""Subgroups of materialized permutation groups.

Everything here works on explicit element sets: cores are intersections of
conjugates over a right transversal, normal lattices are built from
conjugacy-class closures, and coset actions are written out point by point.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from mindeg.budget import Budget
from mindeg.perm import Perm, PermGroup, extend_closure
from mindeg.utils.hashing import fingerprint

logger = logging.getLogger(__name__)


class SubgroupRecord:
    """A subgroup of ``parent`` held as an explicit element set.

    Generators, fingerprint and core are computed on first access. Two
    records are equal when their element sets are equal.
    """

    def __init__(
        self,
        parent: PermGroup,
        elements: Iterable[Perm],
        generators: Sequence[Perm] | None = None,
        name: str = "",
        normal: bool = False,
    ):
        self.parent = parent
        self.element_set: frozenset[Perm] = frozenset(elements)
        self.name = name
        if generators is not None:
            self.__dict__["generators"] = tuple(g for g in generators if not g.is_identity)
        if normal:
            self.__dict__["core"] = self

    @classmethod
    def whole(cls, group: PermGroup) -> SubgroupRecord:
        return cls(group, group.element_set, group.generators, name=group.name, normal=True)

    @classmethod
    def trivial(cls, group: PermGroup) -> SubgroupRecord:
        return cls(group, [group.identity], (), name="1", normal=True)

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        return tuple(sorted(self.element_set))

    @cached_property
    def generators(self) -> tuple[Perm, ...]:
        """Greedy generating set: each generator leaves the span of the earlier ones."""
        identity = self.parent.identity
        span = frozenset([identity])
        gens: list[Perm] = []
        for x in self.elements:
            if x not in span:
                span = extend_closure(span, gens, x)
                gens.append(x)
                if len(span) == len(self.element_set):
                    break
        return tuple(gens)

    @cached_property
    def fingerprint(self) -> str:
        return fingerprint(x.images for x in self.elements)

    @cached_property
    def core(self) -> SubgroupRecord:
        return core_of(self.parent, self)

    @property
    def order(self) -> int:
        return len(self.element_set)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @property
    def is_trivial(self) -> bool:
        return len(self.element_set) == 1

    @property
    def is_core_free(self) -> bool:
        return self.core.is_trivial

    def issubset(self, other: SubgroupRecord) -> bool:
        return self.element_set <= other.element_set

    def as_group(self) -> PermGroup:
        """This subgroup as a standalone group on the parent's points."""
        return PermGroup.from_elements(
            self.parent.degree,
            self.generators,
            self.element_set,
            name=self.name,
            max_order=self.parent.max_order,
        )

    def __contains__(self, g: Perm) -> bool:
        return g in self.element_set

    def __len__(self) -> int:
        return len(self.element_set)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubgroupRecord):
            return NotImplemented
        return self.element_set == other.element_set

    def __hash__(self) -> int:
        return hash(self.element_set)

    def __repr__(self) -> str:
        label = self.name or f"<{len(self.generators)} generators>"
        return f"SubgroupRecord({label}, order {self.order}, index {self.index})"


def right_transversal(group: PermGroup, H: SubgroupRecord) -> list[Perm]:
    """First-seen representatives of the right cosets ``H * g``."""
    covered: set[Perm] = set()
    reps: list[Perm] = []
    for g in group.elements:
        if g not in covered:
            reps.append(g)
            covered.update(h * g for h in H.element_set)
    return reps


def core_of(parent: PermGroup, H: SubgroupRecord) -> SubgroupRecord:
    """Intersection of all conjugates of H, the largest normal subgroup inside it."""
    members = H.element_set
    current = set(members)
    for g in right_transversal(parent, H):
        if len(current) == 1:
            break
        g_inv = g.inverse()
        # x lies in g^-1 H g exactly when g x g^-1 lies in H
        current = {x for x in current if g * x * g_inv in members}
    name = f"core({H.name})" if H.name else ""
    return SubgroupRecord(parent, current, name=name, normal=True)


def generated_subgroup(
    group: PermGroup,
    generators: Iterable[Perm],
    name: str = "",
) -> SubgroupRecord:
    """The subgroup of ``group`` generated by ``generators``."""
    span = frozenset([group.identity])
    used: list[Perm] = []
    for g in generators:
        if g not in span:
            span = extend_closure(span, used, g)
            used.append(g)
    return SubgroupRecord(group, span, used, name=name)


def intersection(A: SubgroupRecord, B: SubgroupRecord) -> SubgroupRecord:
    if A.parent is not B.parent:
        raise ValueError("subgroups belong to different groups")
    return SubgroupRecord(A.parent, A.element_set & B.element_set)


def is_normal(group: PermGroup, H: SubgroupRecord) -> bool:
    """Generator conjugation test."""
    return all(
        h.conjugate(g) in H.element_set
        for g in group.generators
        for h in H.generators
    )


def conjugate(group: PermGroup, H: SubgroupRecord, g: Perm) -> SubgroupRecord:
    """``g^-1 * H * g``."""
    return SubgroupRecord(
        group,
        (x.conjugate(g) for x in H.element_set),
        [x.conjugate(g) for x in H.generators],
    )


def find_conjugator(group: PermGroup, H: SubgroupRecord, K: SubgroupRecord) -> Perm | None:
    """Some g with ``H^g == K``, or None."""
    if H.order != K.order:
        return None
    target = K.element_set
    for g in right_transversal(group, H):
        g_inv = g.inverse()
        if all(g_inv * x * g in target for x in H.generators):
            return g
    return None


def is_conjugate(group: PermGroup, H: SubgroupRecord, K: SubgroupRecord) -> bool:
    return find_conjugator(group, H, K) is not None


def center(group: PermGroup) -> SubgroupRecord:
    gens = group.generators
    return SubgroupRecord(
        group,
        (x for x in group.elements if all(x.commutes_with(g) for g in gens)),
        name=f"Z({group.name})" if group.name else "",
        normal=True,
    )


def centralizer_in_subgroup(group: PermGroup, g: Perm, S: SubgroupRecord) -> SubgroupRecord:
    """``{s in S : s * g == g * s}``."""
    if g not in group:
        raise ValueError(f"{g} is not an element of {group}")
    return SubgroupRecord(group, (s for s in S.element_set if s.commutes_with(g)))


# ----------------------------------------------------------------------
# Normal lattice
# ----------------------------------------------------------------------

def conjugacy_classes(group: PermGroup) -> list[tuple[Perm, ...]]:
    """Orbits of the conjugation action, each sorted, in order of least member."""
    seen: set[Perm] = set()
    classes = []
    for x in group.elements:
        if x in seen:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g in group.generators:
                    z = y.conjugate(g)
                    if z not in orbit:
                        orbit.add(z)
                        nxt.append(z)
            frontier = nxt
        seen |= orbit
        classes.append(tuple(sorted(orbit)))
    return classes


def _product_set(A: frozenset[Perm], B: frozenset[Perm]) -> frozenset[Perm]:
    """``A * B`` for subgroups A, B where one normalizes the other."""
    if A <= B:
        return B
    if B <= A:
        return A
    return frozenset(a * b for a in A for b in B)


@dataclass
class NormalLattice:
    """Normal subgroups of a group, sorted by (order, fingerprint)."""

    group: PermGroup
    normals: list[SubgroupRecord]
    minimal_normals: list[SubgroupRecord]
    socle: SubgroupRecord
    dim: int = field(init=False)

    def __post_init__(self):
        self.dim = len(self.minimal_normals)

    def dim_of(self, H: SubgroupRecord) -> int:
        """Number of minimal normal subgroups of the group contained in H."""
        return sum(1 for M in self.minimal_normals if M.issubset(H))

    def codim_of(self, H: SubgroupRecord) -> int:
        """Number of minimal normal subgroups of the group not contained in H."""
        return self.dim - self.dim_of(H)

    def contains_minimal(self, N: SubgroupRecord) -> bool:
        return N.is_trivial or any(M.issubset(N) for M in self.minimal_normals)


def normal_lattice(
    group: PermGroup,
    candidates: Sequence[SubgroupRecord] | None = None,
    budget: Budget | None = None,
) -> NormalLattice:
    """All normal subgroups, or a verified set of supplied candidates.

    Without candidates, every normal subgroup is a join of normal closures of
    conjugacy classes; the joins are closed under products until nothing new
    appears. Candidates that fail the normality test are dropped.
    """
    budget = budget or Budget.unlimited()
    trivial = SubgroupRecord.trivial(group)
    found: dict[frozenset[Perm], SubgroupRecord] = {trivial.element_set: trivial}

    if candidates is not None:
        for H in candidates:
            if not is_normal(group, H):
                logger.warning("dropping non-normal candidate %r", H)
                continue
            found.setdefault(H.element_set, SubgroupRecord(group, H.element_set, H.generators, H.name, normal=True))
    else:
        class_closures: list[frozenset[Perm]] = []
        for cls in conjugacy_classes(group)[1:]:
            budget.check()
            closure = generated_subgroup(group, cls).element_set
            if closure not in class_closures:
                class_closures.append(closure)
        worklist = list(class_closures)
        for c in class_closures:
            found.setdefault(c, SubgroupRecord(group, c, normal=True))
        while worklist:
            N = worklist.pop()
            for K in class_closures:
                budget.check()
                joined = _product_set(N, K)
                if joined not in found:
                    found[joined] = SubgroupRecord(group, joined, normal=True)
                    worklist.append(joined)

    normals = sorted(found.values(), key=lambda N: (N.order, N.fingerprint))
    nontrivial = [N for N in normals if not N.is_trivial]
    minimal = [
        N for N in nontrivial
        if not any(M.order < N.order and M.issubset(N) for M in nontrivial)
    ]
    socle_set = trivial.element_set
    for M in minimal:
        socle_set = _product_set(socle_set, M.element_set)
    socle = SubgroupRecord(group, socle_set, name="soc", normal=True)
    logger.debug(
        "normal lattice of %s: %d normals, %d minimal",
        group.name or "group", len(normals), len(minimal),
    )
    return NormalLattice(group, normals, minimal, socle)


# ----------------------------------------------------------------------
# Coset actions
# ----------------------------------------------------------------------

@dataclass
class CosetAction:
    """Action of a group on the disjoint union of right coset spaces."""

    image: PermGroup
    kernel: SubgroupRecord
    degree: int
    offsets: tuple[int, ...]

    @property
    def is_faithful(self) -> bool:
        return self.kernel.is_trivial


def coset_action(group: PermGroup, collection: Sequence[SubgroupRecord]) -> CosetAction:
    """Induced action on ``H_1\\G + ... + H_k\\G``; the kernel is computed exactly."""
    blocks = []
    offsets = []
    offset = 0
    for H in collection:
        coset_of: dict[Perm, int] = {}
        reps: list[Perm] = []
        for g in group.elements:
            if g not in coset_of:
                for h in H.element_set:
                    coset_of[h * g] = len(reps)
                reps.append(g)
        blocks.append((coset_of, reps))
        offsets.append(offset)
        offset += len(reps)

    def act(x: Perm) -> list[int]:
        images: list[int] = []
        for (coset_of, reps), base in zip(blocks, offsets):
            images.extend(base + coset_of[r * x] for r in reps)
        return images

    identity = list(range(offset))
    kernel = SubgroupRecord(
        group,
        (x for x in group.elements if act(x) == identity),
        name="kernel",
        normal=True,
    )
    image = PermGroup(
        offset,
        [Perm(tuple(act(g))) for g in group.generators],
        name=f"{group.name} on cosets" if group.name else "",
        max_order=group.max_order,
    )
    return CosetAction(image, kernel, offset, tuple(offsets))
