"""Complete subgroup lattices of small groups.

Elements are replaced by their index in the sorted element tuple and all
products come from a precomputed multiplication table, so the inner loops
only touch lists of ints.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property

from sympy import factorint

from mindeg.budget import Budget
from mindeg.config import DEFAULT_LATTICE_CAP
from mindeg.exceptions import CapExceeded
from mindeg.perm import PermGroup
from mindeg.subgroups import SubgroupRecord
from mindeg.utils.hashing import fingerprint

logger = logging.getLogger(__name__)


class GroupTable:
    """Multiplication and inverse tables over element indices."""

    def __init__(self, group: PermGroup):
        self.group = group
        self.elements = group.elements
        self.index = {x: i for i, x in enumerate(self.elements)}
        n = len(self.elements)
        self.identity = self.index[group.identity]
        self.mul = [
            [self.index[x * y] for y in self.elements]
            for x in self.elements
        ]
        self.inv = [self.index[x.inverse()] for x in self.elements]
        self.generators = [self.index[g] for g in group.generators]
        # conj[k][i] is the index of g_k^-1 x_i g_k
        self.conj = [
            [self.mul[self.mul[self.inv[g]][i]][g] for i in range(n)]
            for g in self.generators
        ]

    @property
    def order(self) -> int:
        return len(self.elements)

    def cyclic(self, g: int) -> list[int]:
        out = [self.identity]
        x = g
        while x != self.identity:
            out.append(x)
            x = self.mul[x][g]
        return out


@dataclass(eq=False)
class LatticeEntry:
    """One subgroup as a sorted tuple of element indices."""

    members: tuple[int, ...]
    key: bytes
    generators: tuple[int, ...]
    elements: tuple = field(repr=False, default=())
    normal: bool = False
    core: int = -1

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def fingerprint(self) -> str:
        return fingerprint(self.elements[i].images for i in self.members)


def _flags(members, n: int) -> bytearray:
    flags = bytearray(n)
    for i in members:
        flags[i] = 1
    return flags


class SubgroupLattice:
    """All subgroups of a group with normality, cores and conjugacy classes.

    ``entries`` is sorted by (order, fingerprint). ``core`` of an entry is
    the position of its core in ``entries``.
    """

    def __init__(self, group: PermGroup, table: GroupTable, entries: list[LatticeEntry]):
        self.group = group
        self.table = table
        self.entries = entries
        self.position = {e.key: i for i, e in enumerate(entries)}
        self._records: dict[int, SubgroupRecord] = {}

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def order(self) -> int:
        return self.table.order

    @cached_property
    def normals(self) -> list[int]:
        return [i for i, e in enumerate(self.entries) if e.normal]

    @cached_property
    def minimal_normals(self) -> list[int]:
        nontrivial = [i for i in self.normals if self.entries[i].order > 1]
        return [
            i for i in nontrivial
            if not any(
                self.entries[j].order < self.entries[i].order and self.contains(i, j)
                for j in nontrivial
            )
        ]

    @cached_property
    def classes(self) -> list[list[int]]:
        """Conjugacy classes of subgroups, each led by its fingerprint-minimal member."""
        seen: set[int] = set()
        out = []
        for i in range(len(self.entries)):
            if i in seen:
                continue
            orbit = {i}
            frontier = [i]
            while frontier:
                nxt = []
                for j in frontier:
                    members = self.entries[j].members
                    for conj in self.table.conj:
                        key = bytes(_flags((conj[x] for x in members), self.order))
                        k = self.position[key]
                        if k not in orbit:
                            orbit.add(k)
                            nxt.append(k)
                frontier = nxt
            seen |= orbit
            out.append(sorted(orbit))
        return out

    @cached_property
    def class_of(self) -> dict[int, int]:
        return {i: c for c, members in enumerate(self.classes) for i in members}

    def contains(self, big: int, small: int) -> bool:
        key = self.entries[big].key
        return all(key[x] for x in self.entries[small].members)

    def record(self, i: int) -> SubgroupRecord:
        """Entry ``i`` as a SubgroupRecord of the group, with its core attached."""
        if i not in self._records:
            e = self.entries[i]
            elements = self.table.elements
            rec = SubgroupRecord(
                self.group,
                (elements[x] for x in e.members),
                [elements[x] for x in e.generators],
                normal=e.normal,
            )
            if not e.normal:
                rec.__dict__["core"] = self.record(e.core)
            self._records[i] = rec
        return self._records[i]

    def find(self, H: SubgroupRecord) -> int:
        """Position of H in the lattice."""
        members = [self.table.index[x] for x in H.element_set]
        return self.position[bytes(_flags(members, self.order))]


def _join(table: GroupTable, members: list[int], flags: bytearray, gens: list[int]) -> list[int]:
    """Dimino closure of a known subgroup with extra generators appended."""
    mul = table.mul
    result = list(members)
    reps = [table.identity]
    i = 0
    while i < len(reps):
        r = reps[i]
        i += 1
        for t in gens:
            z = mul[r][t]
            if not flags[z]:
                coset = [mul[s][z] for s in members]
                for y in coset:
                    flags[y] = 1
                result.extend(coset)
                reps.append(z)
    return result


def enumerate_subgroups(
    group: PermGroup,
    lattice_cap: int = DEFAULT_LATTICE_CAP,
    budget: Budget | None = None,
) -> SubgroupLattice:
    """Every subgroup, by joining subgroups with cyclic subgroups to a fixpoint."""
    budget = budget or Budget.unlimited()
    projected = group.projected_order()
    if projected > lattice_cap:
        raise CapExceeded(f"subgroup lattice of {group.name or 'group'} (order {projected})", lattice_cap)
    table = GroupTable(group)
    n = table.order

    found: dict[bytes, tuple[list[int], tuple[int, ...]]] = {}
    trivial = [table.identity]
    found[bytes(_flags(trivial, n))] = (trivial, ())
    # subgroups are joins of cyclic subgroups of prime-power order
    cyclic_gens: list[int] = []
    for g in range(n):
        members = table.cyclic(g)
        if len(factorint(len(members))) != 1:
            continue
        key = bytes(_flags(members, n))
        if key not in found:
            found[key] = (members, (g,))
            cyclic_gens.append(g)

    worklist = list(found)
    while worklist:
        key = worklist.pop()
        members, gens = found[key]
        for g in cyclic_gens:
            if key[g]:
                continue
            budget.check()
            flags = bytearray(key)
            joined = _join(table, members, flags, list(gens) + [g])
            new_key = bytes(flags)
            if new_key not in found:
                found[new_key] = (joined, gens + (g,))
                worklist.append(new_key)

    entries = [
        LatticeEntry(tuple(sorted(members)), key, gens, table.elements)
        for key, (members, gens) in found.items()
    ]
    _mark_normals(table, entries)
    entries.sort(key=lambda e: (e.order, e.fingerprint))
    lattice = SubgroupLattice(group, table, entries)
    _assign_cores(lattice)
    logger.debug(
        "lattice of %s: %d subgroups, %d normal, %d classes",
        group.name or "group", len(entries), len(lattice.normals), len(lattice.classes),
    )
    return lattice


def _mark_normals(table: GroupTable, entries: list[LatticeEntry]) -> None:
    for e in entries:
        e.normal = all(
            e.key[conj[s]]
            for conj in table.conj
            for s in e.generators
        )


def _assign_cores(lattice: SubgroupLattice) -> None:
    """Core of each entry: the largest normal entry it contains."""
    normals_desc = sorted(lattice.normals, key=lambda i: -lattice.entries[i].order)
    for i, e in enumerate(lattice.entries):
        if e.normal:
            e.core = i
            continue
        for j in normals_desc:
            N = lattice.entries[j]
            if N.order < e.order and e.order % N.order == 0 and lattice.contains(i, j):
                e.core = j
                break
