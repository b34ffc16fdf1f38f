"""The faithful-collection problem as weighted set cover.

A collection of subgroups is faithful exactly when every minimal normal
subgroup escapes the core of some member, so the universe is the set of
minimal normal subgroups and a subgroup covers those its core misses.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from mindeg.budget import Budget
from mindeg.exceptions import NoFeasibleCover
from mindeg.solver.lattice import SubgroupLattice

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Candidate:
    cover: int  # bitmask over the universe
    weight: int  # index of the subgroup
    subgroup: int  # position in the lattice
    fingerprint: str
    conjugacy_class: int

    def covers(self, element: int) -> bool:
        return bool(self.cover >> element & 1)


@dataclass
class CoverInstance:
    universe: tuple[int, ...]  # lattice positions of the minimal normals
    candidates: list[Candidate]
    lattice: SubgroupLattice = field(repr=False)

    @property
    def full(self) -> int:
        return (1 << len(self.universe)) - 1

    @property
    def provenance(self) -> dict[int, int]:
        """Candidate subgroup position to its subgroup conjugacy class."""
        return {c.subgroup: c.conjugacy_class for c in self.candidates}

    def covers_universe(self, chosen: list[Candidate]) -> bool:
        mask = 0
        for c in chosen:
            mask |= c.cover
        return mask == self.full


@dataclass
class CoverSolution:
    chosen: list[Candidate]
    weight: int
    nodes: int


def build_cover(lattice: SubgroupLattice, prune: bool = True) -> CoverInstance:
    """Cover instance over the minimal normals, keeping one largest subgroup per core."""
    universe = tuple(lattice.minimal_normals)
    entries = lattice.entries
    best_per_core: dict[int, int] = {}
    for i, e in enumerate(entries):
        core = e.core
        if not prune:
            best_per_core[i] = i
            continue
        incumbent = best_per_core.get(core)
        if incumbent is None:
            best_per_core[core] = i
            continue
        other = entries[incumbent]
        if (-e.order, e.fingerprint) < (-other.order, other.fingerprint):
            best_per_core[core] = i

    class_of = lattice.class_of
    candidates = []
    for i in best_per_core.values():
        e = entries[i]
        mask = 0
        for bit, m in enumerate(universe):
            if not lattice.contains(e.core, m):
                mask |= 1 << bit
        if not mask:
            continue
        candidates.append(Candidate(mask, lattice.order // e.order, i, e.fingerprint, class_of[i]))
    candidates.sort(key=lambda c: (c.weight, c.fingerprint))
    logger.debug("cover instance: universe %d, %d candidates", len(universe), len(candidates))
    return CoverInstance(universe, candidates, lattice)


def solve_cover(
    instance: CoverInstance,
    min_candidates: int = 1,
    budget: Budget | None = None,
) -> CoverSolution:
    """Exact minimum-weight cover by branch-and-bound.

    Branches on the uncovered element with the fewest covering candidates.
    ``min_candidates`` forces at least that many distinct candidates into
    the solution; 2 gives the intransitive optimum.
    """
    budget = budget or Budget.unlimited()
    full = instance.full
    candidates = instance.candidates
    size = len(instance.universe)
    covering = [[c for c in candidates if c.covers(e)] for e in range(size)]
    cheapest = [cs[0].weight if cs else None for cs in covering]

    best_weight = float("inf")
    best: list[Candidate] = []
    memo: dict[tuple[int, int], int] = {}
    nodes = 0

    def pad(chosen: list[Candidate]) -> list[Candidate]:
        extra = [c for c in candidates if c not in chosen]
        return chosen + extra[: max(0, min_candidates - len(chosen))]

    def search(covered: int, chosen: list[Candidate], weight: int) -> None:
        nonlocal best_weight, best, nodes
        nodes += 1
        budget.check()
        if covered == full:
            final = pad(chosen)
            if len(final) < min_candidates:
                return
            total = sum(c.weight for c in final)
            if total < best_weight:
                best_weight, best = total, final
            return
        uncovered = [e for e in range(size) if not covered >> e & 1]
        if any(cheapest[e] is None for e in uncovered):
            return
        if weight + min(cheapest[e] for e in uncovered) >= best_weight:
            return
        state = (covered, min(len(chosen), min_candidates))
        if memo.get(state, best_weight) <= weight:
            return
        memo[state] = weight
        pivot = min(uncovered, key=lambda e: len(covering[e]))
        for c in covering[pivot]:
            if weight + c.weight >= best_weight:
                break
            search(covered | c.cover, chosen + [c], weight + c.weight)

    if size == 0:
        return CoverSolution([], 0, 0)
    search(0, [], 0)
    logger.debug("branch-and-bound: weight %s after %d nodes", best_weight, nodes)
    if not best:
        raise NoFeasibleCover(min_candidates)
    return CoverSolution(best, int(best_weight), nodes)
