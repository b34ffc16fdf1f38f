"""Minimal faithful permutation degree: exact, transitive, naive and sandwich."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Sequence

from sympy.combinatorics import Permutation, PermutationGroup

from mindeg.budget import Budget
from mindeg.config import EngineConfig
from mindeg.exceptions import CapExceeded, CertificateError
from mindeg.perm import Perm, PermGroup
from mindeg.solver.cover import build_cover, solve_cover
from mindeg.solver.lattice import SubgroupLattice, enumerate_subgroups
from mindeg.subgroups import (
    NormalLattice,
    SubgroupRecord,
    coset_action,
    normal_lattice,
)

logger = logging.getLogger(__name__)

METHODS = ("exact-cover", "transitive-scan", "naive", "sandwich")


@dataclass(frozen=True)
class WitnessEntry:
    """One member of a witness collection, as it is written to disk."""

    generators: tuple[tuple[int, ...], ...]
    order: int
    index: int

    @classmethod
    def from_record(cls, rec: SubgroupRecord) -> WitnessEntry:
        return cls(tuple(g.images for g in rec.generators), rec.order, rec.index)

    def to_dict(self) -> dict[str, Any]:
        return {"generators": [list(g) for g in self.generators], "order": self.order, "index": self.index}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> WitnessEntry:
        return cls(tuple(tuple(g) for g in data["generators"]), int(data["order"]), int(data["index"]))


@dataclass
class MuCertificate:
    group: str
    order: int
    degree: int
    mu: int
    method: str
    witness: tuple[WitnessEntry, ...] = ()
    lower_bound_evidence: MuCertificate | None = None
    seed: int = 0
    config: dict[str, Any] = field(default_factory=dict)
    elapsed_ms: float = 0.0
    subgroups: tuple[SubgroupRecord, ...] = field(default=(), repr=False, compare=False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "group": self.group,
            "order": self.order,
            "degree": self.degree,
            "mu": self.mu,
            "method": self.method,
            "witness": [w.to_dict() for w in self.witness],
            "lower_bound_evidence": (
                self.lower_bound_evidence.to_dict() if self.lower_bound_evidence else None
            ),
            "seed": self.seed,
            "config": self.config,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> MuCertificate:
        try:
            evidence = data.get("lower_bound_evidence")
            return cls(
                group=data["group"],
                order=int(data["order"]),
                degree=int(data["degree"]),
                mu=int(data["mu"]),
                method=data["method"],
                witness=tuple(WitnessEntry.from_dict(w) for w in data.get("witness", [])),
                lower_bound_evidence=cls.from_dict(evidence) if evidence else None,
                seed=int(data.get("seed", 0)),
                config=dict(data.get("config", {})),
                elapsed_ms=float(data.get("elapsed_ms", 0.0)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise CertificateError(f"malformed certificate: {e}") from e


@dataclass(frozen=True)
class SandwichInterval:
    """Inconclusive sandwich: ``lower <= mu(G) <= upper``."""

    group: str
    lower: int
    upper: int
    evidence: MuCertificate

    @property
    def conclusive(self) -> bool:
        return False


def _label(group: PermGroup, label: str | None) -> str:
    return label or group.name or f"<group on {group.degree} points>"


def _ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


def verify_witness(group: PermGroup, records: Sequence[SubgroupRecord], mu: int) -> None:
    """Raise CertificateError unless the collection is faithful of total index ``mu``."""
    total = sum(r.index for r in records)
    if total != mu:
        raise CertificateError(f"witness indices sum to {total}, certificate claims {mu}")
    if group.order > 1:
        action = coset_action(group, list(records))
        if not action.is_faithful:
            raise CertificateError(f"witness action has kernel of order {action.kernel.order}")


def _certificate(
    group: PermGroup,
    label: str | None,
    mu: int,
    method: str,
    records: Sequence[SubgroupRecord],
    config: EngineConfig,
    start: float,
) -> MuCertificate:
    return MuCertificate(
        group=_label(group, label),
        order=group.order,
        degree=group.degree,
        mu=mu,
        method=method,
        witness=tuple(WitnessEntry.from_record(r) for r in records),
        seed=config.seed,
        config=config.snapshot(),
        elapsed_ms=_ms(start),
        subgroups=tuple(records),
    )


@dataclass
class ExactSolve:
    """Intermediate products of an exact solve, kept for structural checks."""

    lattice: SubgroupLattice
    records: list[SubgroupRecord]
    weight: int
    nodes: int


def solve_exact(
    group: PermGroup,
    config: EngineConfig | None = None,
    budget: Budget | None = None,
    min_candidates: int = 1,
) -> ExactSolve:
    config = config or EngineConfig()
    lattice = enumerate_subgroups(group, config.lattice_cap, budget)
    instance = build_cover(lattice)
    solution = solve_cover(instance, min_candidates=min_candidates, budget=budget)
    records = [lattice.record(c.subgroup) for c in solution.chosen]
    return ExactSolve(lattice, records, solution.weight, solution.nodes)


def mu_exact(
    group: PermGroup,
    config: EngineConfig | None = None,
    budget: Budget | None = None,
    label: str | None = None,
) -> MuCertificate:
    """mu(G) by full lattice enumeration and exact set cover; the witness is re-verified."""
    config = config or EngineConfig()
    start = time.perf_counter()
    if group.is_trivial:
        return _certificate(group, label, 0, "exact-cover", [], config, start)
    solved = solve_exact(group, config, budget)
    verify_witness(group, solved.records, solved.weight)
    logger.info("mu(%s) = %d (exact, %d nodes)", _label(group, label), solved.weight, solved.nodes)
    return _certificate(group, label, solved.weight, "exact-cover", solved.records, config, start)


def intransitive_optimum(
    group: PermGroup,
    config: EngineConfig | None = None,
    budget: Budget | None = None,
) -> ExactSolve:
    """Best faithful collection with at least two members."""
    solved = solve_exact(group, config, budget, min_candidates=2)
    verify_witness(group, solved.records, solved.weight)
    return solved


def mu_transitive(
    group: PermGroup,
    config: EngineConfig | None = None,
    budget: Budget | None = None,
) -> int | None:
    """Least index of a nontrivial core-free subgroup, or None when there is none."""
    config = config or EngineConfig()
    if group.is_trivial:
        return None
    lattice = enumerate_subgroups(group, config.lattice_cap, budget)
    indices = [
        lattice.order // e.order
        for e in lattice.entries
        if e.order > 1 and lattice.entries[e.core].order == 1
    ]
    return min(indices) if indices else None


def transitive_certificate(
    group: PermGroup,
    config: EngineConfig | None = None,
    budget: Budget | None = None,
    label: str | None = None,
) -> MuCertificate | None:
    """The least-index core-free subgroup as a single-member witness."""
    config = config or EngineConfig()
    start = time.perf_counter()
    if group.is_trivial:
        return None
    lattice = enumerate_subgroups(group, config.lattice_cap, budget)
    best = None
    for i, e in enumerate(lattice.entries):
        if e.order > 1 and lattice.entries[e.core].order == 1:
            if best is None or e.order > lattice.entries[best].order:
                best = i
    if best is None:
        return None
    rec = lattice.record(best)
    verify_witness(group, [rec], rec.index)
    return _certificate(group, label, rec.index, "transitive-scan", [rec], config, start)


def naive_mu(
    group: PermGroup,
    config: EngineConfig | None = None,
    label: str | None = None,
) -> MuCertificate:
    """Exhaustive search over subgroup collections of size at most dim(G).

    Cores come from conjugate intersection and dim from the class-closure
    normal lattice, so nothing is shared with the cover reduction beyond the
    list of subgroups.
    """
    config = config or EngineConfig()
    start = time.perf_counter()
    order = group.projected_order()
    if order > config.naive_cap:
        raise CapExceeded(f"naive search on {_label(group, label)} (order {order})", config.naive_cap)
    if group.is_trivial:
        return _certificate(group, label, 0, "naive", [], config, start)

    lattice = enumerate_subgroups(group, lattice_cap=config.naive_cap)
    subs = [SubgroupRecord(group, [lattice.table.elements[x] for x in e.members]) for e in lattice.entries]
    subs = [s for s in subs if s.core.order < group.order]
    subs.sort(key=lambda s: (s.index, s.fingerprint))
    dim = normal_lattice(group).dim

    trivial = next(s for s in subs if s.is_trivial)
    best_weight = group.order
    best: list[SubgroupRecord] = [trivial]

    def dfs(start_at: int, meet: frozenset[Perm], weight: int, chosen: list[SubgroupRecord]) -> None:
        nonlocal best_weight, best
        if len(meet) == 1:
            if weight < best_weight:
                best_weight, best = weight, list(chosen)
            return
        if len(chosen) == dim:
            return
        for k in range(start_at, len(subs)):
            s = subs[k]
            if weight + s.index >= best_weight:
                break
            narrowed = meet & s.core.element_set
            if narrowed == meet:
                continue
            chosen.append(s)
            dfs(k + 1, narrowed, weight + s.index, chosen)
            chosen.pop()

    dfs(0, group.element_set, 0, [])
    verify_witness(group, best, best_weight)
    return _certificate(group, label, best_weight, "naive", best, config, start)


def sympy_group(group: PermGroup) -> PermutationGroup:
    gens = [Permutation(list(g.images)) for g in group.generators]
    return PermutationGroup(gens or [Permutation(list(range(group.degree)))])


def moved_points(group: PermGroup) -> list[int]:
    return sorted({i for g in group.generators for i, j in enumerate(g.images) if i != j})


def certify_sandwich(
    group: PermGroup,
    sub: PermGroup,
    config: EngineConfig | None = None,
    budget: Budget | None = None,
    label: str | None = None,
    sub_label: str | None = None,
) -> MuCertificate | SandwichInterval:
    """Certify mu(G) = D from G's own D moved points and a subgroup with mu = D.

    ``sub`` acts on the same points as ``group``. Membership and orbit
    stabilizers come from Schreier-Sims, so G is never materialized.
    """
    config = config or EngineConfig()
    start = time.perf_counter()
    if sub.degree != group.degree:
        raise CertificateError(f"subgroup acts on {sub.degree} points, group on {group.degree}")
    G = sympy_group(group)
    for h in sub.generators:
        if not G.contains(Permutation(list(h.images))):
            raise CertificateError(f"{h} from {_label(sub, sub_label)} is not in {_label(group, label)}")

    lower = mu_exact(sub, config, budget, label=sub_label)
    upper = len(moved_points(group))
    if lower.mu > upper:
        raise CertificateError(
            f"mu({_label(sub, sub_label)}) = {lower.mu} exceeds the {upper} points moved by {_label(group, label)}"
        )
    if lower.mu != upper:
        logger.info("sandwich on %s inconclusive: [%d, %d]", _label(group, label), lower.mu, upper)
        return SandwichInterval(_label(group, label), lower.mu, upper, lower)

    order = group.projected_order()
    witness = []
    for orbit in G.orbits():
        rep = min(orbit)
        if len(orbit) == 1:
            continue
        stab = G.stabilizer(rep)
        gens = tuple(
            tuple(p.array_form) + tuple(range(p.size, group.degree))
            for p in stab.generators
            if not p.is_Identity
        )
        witness.append(WitnessEntry(gens, order // len(orbit), len(orbit)))
    witness.sort(key=lambda w: w.index)
    return MuCertificate(
        group=_label(group, label),
        order=order,
        degree=group.degree,
        mu=upper,
        method="sandwich",
        witness=tuple(witness),
        lower_bound_evidence=lower,
        seed=config.seed,
        config=config.snapshot(),
        elapsed_ms=_ms(start),
    )


def replacement_pair(
    group: PermGroup,
    lattice: NormalLattice,
    L: SubgroupRecord,
) -> tuple[SubgroupRecord, SubgroupRecord]:
    """``(L * N_1, L * N_2)`` for the first two minimal normals outside L.

    For L of codimension at least 2 whose order is divisible by the order of
    the acting cyclic part, the pair has cores meeting in core(L) and total
    index below index(L).
    """
    outside = [M for M in lattice.minimal_normals if not M.issubset(L)]
    if len(outside) < 2:
        raise ValueError(f"{L!r} has codimension {len(outside)}, need at least 2")
    pair = []
    for N in outside[:2]:
        product = frozenset(x * n for x in L.element_set for n in N.element_set)
        pair.append(SubgroupRecord(group, product, list(L.generators) + list(N.generators)))
    return pair[0], pair[1]
