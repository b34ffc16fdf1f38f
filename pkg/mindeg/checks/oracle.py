"""Row kind ``oracle``: the cover reduction against exhaustive collection search."""

from __future__ import annotations

from itertools import combinations

from mindeg.checks import BaseCheck, CheckMeta, CheckOutcome, CheckRegistry
from mindeg.constructors import construct
from mindeg.parser import parse_spec
from mindeg.solver import build_cover, enumerate_subgroups, mu_exact, naive_mu
from mindeg.subgroups import coset_action


@CheckRegistry.register("oracle")
class OracleCheck(BaseCheck):
    meta = CheckMeta(
        description="mu_exact equals naive_mu, and covering the minimal normals matches a trivial kernel",
        param_docs={"pairs": "bool (default true): also test every collection of at most two subgroups"},
        needs_spec=True,
    )

    def run(self) -> CheckOutcome:
        spec = parse_spec(self.row.spec)
        group = construct(spec, self.config.max_order).group
        naive = naive_mu(group, self.config, label=spec.text)
        exact = mu_exact(group, self.config, self.budget, label=spec.text)
        out = CheckOutcome(
            family=spec.family,
            parameters=spec.text,
            order=group.order,
            degree=group.degree,
            mu_predicted=naive.mu,
            mu_computed=exact.mu,
            method="exact-cover vs naive",
            certificate=exact,
        )
        if naive.mu != exact.mu:
            out.fail(f"naive search found {naive.mu}, cover reduction {exact.mu}")
        if self.param("pairs", True) and not group.is_trivial:
            self._cover_matches_kernel(group, out)
        return out

    def _cover_matches_kernel(self, group, out: CheckOutcome) -> None:
        lattice = enumerate_subgroups(group, self.config.lattice_cap, self.budget)
        instance = build_cover(lattice, prune=False)
        mask = {c.subgroup: c.cover for c in instance.candidates}
        records = [lattice.record(i) for i in range(len(lattice))]
        collections = [(i,) for i in range(len(records))] + list(combinations(range(len(records)), 2))
        mismatches = 0
        for chosen in collections:
            self.budget.check()
            covered = 0
            for i in chosen:
                covered |= mask.get(i, 0)
            faithful = coset_action(group, [records[i] for i in chosen]).is_faithful
            if (covered == instance.full) != faithful:
                mismatches += 1
        out.detail = f"{len(collections)} collections of at most two subgroups"
        if mismatches:
            out.fail(f"{mismatches} collection(s) where covering and kernel disagree")
