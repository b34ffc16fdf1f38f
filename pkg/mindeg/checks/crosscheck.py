"""Row kind ``crosscheck``: minimal normals of H(p,q) two ways, as element sets."""

from __future__ import annotations

import logging

from mindeg.checks import BaseCheck, CheckMeta, CheckOutcome, CheckRegistry
from mindeg.constructors import Hpq, construct
from mindeg.ffield import decompose_module, submodule_to_subgroup
from mindeg.subgroups import normal_lattice

logger = logging.getLogger(__name__)


@CheckRegistry.register("crosscheck")
class CrossCheck(BaseCheck):
    meta = CheckMeta(
        description="normal-lattice minimal normals of H(p,q) equal the images of the b-submodules",
        param_docs={"p": "prime", "q": "odd prime different from p"},
    )

    def run(self) -> CheckOutcome:
        p, q = int(self.param("p")), int(self.param("q"))
        spec = Hpq(p, q)
        built = construct(spec, self.config.max_order)
        group = built.group

        decomp = decompose_module(p, q, seed=self.config.seed)
        from_module = {A.element_set for A in submodule_to_subgroup(decomp, group, built.named.c)}
        from_lattice = {N.element_set for N in normal_lattice(group, budget=self.budget).minimal_normals}
        logger.debug("H(%d,%d): %d submodule images, %d minimal normals", p, q, len(from_module), len(from_lattice))

        out = CheckOutcome(
            family="crosscheck",
            parameters=spec.text,
            order=group.order,
            degree=group.degree,
            method="normal-lattice",
            detail=f"{len(from_lattice)} minimal normal(s) of order {p}^{decomp.d}",
        )
        for problem in decomp.verify():
            out.fail(problem)
        if from_module != from_lattice:
            out.fail(
                f"{len(from_module - from_lattice)} submodule image(s) missing from the lattice, "
                f"{len(from_lattice - from_module)} lattice minimal(s) missing from the submodules"
            )
        return out
