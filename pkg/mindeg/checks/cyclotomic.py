"""Row kind ``cyclotomic``: factor Q_r over F_p and check the factor count and degrees."""

from __future__ import annotations

from mindeg.checks import BaseCheck, CheckMeta, CheckOutcome, CheckRegistry
from mindeg.ffield import factor_cyclotomic, mult_order


@CheckRegistry.register("cyclotomic")
class CyclotomicCheck(BaseCheck):
    meta = CheckMeta(
        description="Q_r over F_p splits into (r-1)/d monic irreducibles of degree d = ord_r(p)",
        param_docs={"r": "prime", "p": "prime different from r"},
    )

    def run(self) -> CheckOutcome:
        r, p = int(self.param("r")), int(self.param("p"))
        factorization = factor_cyclotomic(r, p, seed=self.config.seed)
        d = mult_order(p, r)
        out = CheckOutcome(
            family="cyclotomic",
            parameters=f"r={r},p={p}",
            method="cantor-zassenhaus" if factorization.l > 1 and d > 1 else "direct",
            detail=f"{factorization.l} factor(s) of degree {factorization.d}",
            payload=factorization.to_dict(),
        )
        problems = factorization.verify()
        if factorization.d != d or factorization.l != (r - 1) // d:
            problems.append(f"expected {(r - 1) // d} factors of degree {d}")
        for problem in problems:
            out.fail(problem)
        return out
