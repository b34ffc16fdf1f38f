"""Row kind ``mu``: compute mu(G) and compare it with the closed form."""

from __future__ import annotations

from mindeg.checks import BaseCheck, CheckMeta, CheckOutcome, CheckRegistry
from mindeg.constructors import construct, special_L
from mindeg.formulas import predict
from mindeg.parser import parse_spec
from mindeg.solver import SandwichInterval
from mindeg.strategy import compute_mu
from mindeg.subgroups import SubgroupRecord, is_conjugate


@CheckRegistry.register("mu")
class MuCheck(BaseCheck):
    meta = CheckMeta(
        description="mu(G) by the row's method against the predicted value",
        param_docs={
            "inconclusive": "bool: the sandwich is expected not to close",
            "special_L": "int p: the witness must be conjugate to L(p) in G(p,p,3)",
        },
        needs_spec=True,
    )

    def run(self) -> CheckOutcome:
        spec = parse_spec(self.row.spec)
        built = construct(spec, self.config.max_order)
        group = built.group
        prediction = predict(spec)
        predicted = self.row.expected if self.row.expected is not None else prediction.mu

        out = CheckOutcome(
            family=spec.family,
            parameters=spec.text,
            order=group.projected_order(),
            degree=group.degree,
            mu_predicted=predicted,
            method=self.row.method,
            detail=self.row.cite or (prediction.case if prediction.applicable else ""),
        )
        result = compute_mu(
            group,
            self.row.method,
            self.config,
            self.budget,
            lower=self.row.lower,
            label=spec.text,
        )

        if isinstance(result, SandwichInterval):
            out.detail = f"interval [{result.lower}, {result.upper}], inconclusive"
            out.method = "sandwich"
            if not self.param("inconclusive", False):
                return out.fail("sandwich did not close")
            return out

        if result is None:
            return out.fail("no nontrivial core-free subgroup")
        out.mu_computed = result.mu
        out.method = result.method
        out.certificate = result
        if self.param("inconclusive", False):
            return out.fail("expected an inconclusive sandwich")
        if predicted is not None and predicted != result.mu:
            return out.fail(f"predicted {predicted}, computed {result.mu}")

        p = self.param("special_L")
        if p is not None:
            self._match_special_L(int(p), result.subgroups, out)
        return out

    def _match_special_L(self, p: int, witness: tuple[SubgroupRecord, ...], out: CheckOutcome) -> None:
        if len(witness) != 1:
            out.fail(f"witness has {len(witness)} members, expected one")
            return
        rec = witness[0]
        built, L = special_L(p, self.config.max_order)
        # witness lives in the row's group; rebuild it inside G(p,p,3)
        G = built.group
        if G.degree != rec.parent.degree:
            out.fail("witness group does not act on the points of G(p,p,3)")
            return
        mirrored = SubgroupRecord(G, rec.element_set, rec.generators)
        if rec.order != 3 * p or not mirrored.is_core_free:
            out.fail(f"witness of order {rec.order} is not a core-free subgroup of order {3 * p}")
        elif not is_conjugate(G, mirrored, L):
            out.fail(f"witness is not conjugate to L({p})")
        else:
            out.detail = f"{out.detail}; witness conjugate to L({p})".lstrip("; ")
