"""Row kind ``product``: mu of a direct product against the sum over its factors."""

from __future__ import annotations

from mindeg.checks import BaseCheck, CheckMeta, CheckOutcome, CheckRegistry
from mindeg.constructors import Cyclic, Gmn, Product, Wreath, construct, wreath_decomposition
from mindeg.exceptions import SpecInvalid
from mindeg.formulas import EQUALITY, STRICT, VIOLATION, direct_product_check, predict
from mindeg.parser import parse_spec
from mindeg.solver import SandwichInterval, mu_exact
from mindeg.strategy import compute_mu


@CheckRegistry.register("product")
class ProductCheck(BaseCheck):
    meta = CheckMeta(
        description="mu(G1 x ... x Gk) compared with mu(G1) + ... + mu(Gk)",
        param_docs={
            "realization": "spec of a group isomorphic to the product, used in its place",
            "relation": "expected relation: strict or equality",
        },
        needs_spec=True,
    )

    def run(self) -> CheckOutcome:
        spec = parse_spec(self.row.spec)
        if not isinstance(spec, Product):
            raise SpecInvalid(f"product rows need an X(...) spec, got {spec.text}")

        realization = self.param("realization")
        target = parse_spec(realization) if realization else spec
        group = construct(target, self.config.max_order).group
        prediction = predict(spec)
        out = CheckOutcome(
            family=spec.family,
            parameters=spec.text,
            order=group.projected_order(),
            degree=group.degree,
            mu_predicted=self.row.expected if self.row.expected is not None else prediction.mu,
            method=self.row.method,
        )

        if isinstance(target, Wreath):
            self._check_realization(spec, target, out)

        factor_mu = []
        for factor in spec.factors:
            built = construct(factor, self.config.max_order)
            factor_mu.append(mu_exact(built.group, self.config, self.budget, label=factor.text).mu)

        result = compute_mu(group, self.row.method, self.config, self.budget, lower=self.row.lower, label=target.text)
        if isinstance(result, SandwichInterval):
            return out.fail(f"sandwich inconclusive: [{result.lower}, {result.upper}]")
        if result is None:
            return out.fail("no nontrivial core-free subgroup")

        out.mu_computed = result.mu
        out.method = result.method
        out.certificate = result
        out.relation = direct_product_check(result.mu, factor_mu)
        symbol = {STRICT: "<", EQUALITY: "=", VIOLATION: ">"}[out.relation]
        summary = f"{result.mu} {symbol} {' + '.join(map(str, factor_mu))} = {sum(factor_mu)}"
        out.detail = "; ".join(d for d in (out.detail, summary) if d)

        if out.relation == VIOLATION:
            return out.fail("mu of a product exceeds the sum over its factors")
        expected = self.param("relation")
        if expected and expected != out.relation:
            return out.fail(f"expected relation {expected}")
        if out.mu_predicted is not None and out.mu_predicted != result.mu:
            return out.fail(f"predicted {out.mu_predicted}, computed {result.mu}")
        return out

    def _check_realization(self, spec: Product, realization: Wreath, out: CheckOutcome) -> None:
        """C_p wr Sym(q) stands in for C_p x G(p,p,q) only through the direct decomposition."""
        m, n = realization.m, realization.n
        if list(spec.factors) != [Cyclic(m), Gmn(m, m, n)]:
            out.fail(f"{realization.text} is not a realization of {spec.text}")
            return
        decomposition = wreath_decomposition(m, n, self.config.max_order)
        if not decomposition.holds:
            out.fail(f"{realization.text} is not <gamma> x G({m},{m},{n})")
        else:
            out.detail = f"{realization.text} = <gamma> x G({m},{m},{n})"
