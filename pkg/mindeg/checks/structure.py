"""Row kind ``structure``: named structural facts about the constructed families."""

from __future__ import annotations

from typing import Callable

from mindeg.checks import BaseCheck, CheckMeta, CheckOutcome, CheckRegistry
from mindeg.constructors import (
    Construction,
    Hpq,
    b_action_holds,
    construct,
    expected_order,
    special_L,
    wreath_decomposition,
)
from mindeg.exceptions import NoRootOfUnity
from mindeg.ffield import mult_order, root_of_unity
from mindeg.formulas import lemma_power_exceeds
from mindeg.parser import parse_spec
from mindeg.solver import intransitive_optimum, replacement_pair
from mindeg.subgroups import (
    center,
    centralizer_in_subgroup,
    generated_subgroup,
    intersection,
    is_normal,
    normal_lattice,
)


@CheckRegistry.register("structure")
class StructureCheck(BaseCheck):
    meta = CheckMeta(
        description="one structural fact, selected by params.check",
        param_docs={
            "check": (
                "centralizer-b | center-H | b-action | wreath | gmn-normal-in-wreath | special-L | "
                "lemma | codim1 | replacement | order | root-of-unity"
            ),
            "p": "prime",
            "q": "prime",
        },
    )

    def run(self) -> CheckOutcome:
        name = self.param("check")
        handlers: dict[str, Callable[[CheckOutcome], None]] = {
            "centralizer-b": self._centralizer_b,
            "center-H": self._center_H,
            "b-action": self._b_action,
            "wreath": self._wreath,
            "gmn-normal-in-wreath": self._gmn_normal,
            "special-L": self._special_L,
            "lemma": self._lemma,
            "codim1": self._codim1,
            "replacement": self._replacement,
            "order": self._order,
            "root-of-unity": self._root_of_unity,
        }
        if name not in handlers:
            raise ValueError(f"unknown structure check {name!r}; choose from {', '.join(handlers)}")
        out = CheckOutcome(family="structure", parameters=self.row.label, method=name)
        handlers[name](out)
        return out

    @property
    def p(self) -> int:
        return int(self.param("p"))

    @property
    def q(self) -> int:
        return int(self.param("q"))

    def _hpq(self) -> Construction:
        built = construct(Hpq(self.p, self.q), self.config.max_order)
        built.group.materialize()
        return built

    def _centralizer_b(self, out: CheckOutcome) -> None:
        built = self._hpq()
        A = generated_subgroup(built.group, built.named.c, name="A")
        C = centralizer_in_subgroup(built.group, built.named.b, A)
        out.order = built.group.order
        out.detail = f"|C_A(b)| = {C.order}"
        if not C.is_trivial:
            out.fail("b centralizes a nontrivial element of A")

    def _center_H(self, out: CheckOutcome) -> None:
        if self.p != self.q:
            raise ValueError("center-H compares against the p = q generator")
        built = self._hpq()
        Z = center(built.group)
        expected = generated_subgroup(built.group, [built.named.c_power(tuple(range(1, self.p)))])
        out.order = built.group.order
        out.detail = f"|Z| = {Z.order}"
        if Z != expected or Z.order != self.p:
            out.fail(f"center of order {Z.order} is not <c_1 c_2^2 ... c_{self.p - 1}^{self.p - 1}>")

    def _b_action(self, out: CheckOutcome) -> None:
        built = construct(Hpq(self.p, self.q), self.config.max_order)
        out.detail = f"{len(built.named.c)} basis elements"
        if not b_action_holds(built.named):
            out.fail("conjugation by b does not shift the c_i")

    def _wreath(self, out: CheckOutcome) -> None:
        decomposition = wreath_decomposition(self.p, self.q, self.config.max_order)
        out.order = decomposition.wreath_order
        if decomposition.applicable:
            out.detail = (
                f"<gamma> meets G trivially: {decomposition.intersection_trivial}; "
                f"|<gamma> G| = {decomposition.product_order}"
            )
        else:
            out.detail = f"p = q; centralizer of G inside G: {decomposition.centralizer_inside_gmn}"
        if not decomposition.holds:
            out.fail("wreath product does not decompose as expected")

    def _gmn_normal(self, out: CheckOutcome) -> None:
        decomposition = wreath_decomposition(self.p, self.q, self.config.max_order)
        G = decomposition.gmn
        out.order = decomposition.wreath_order
        out.detail = f"index {decomposition.wreath_order // G.order}"
        if not is_normal(G.parent, G):
            out.fail(f"G({self.p},{self.p},{self.q}) is not normal in the wreath product")

    def _special_L(self, out: CheckOutcome) -> None:
        built, L = special_L(self.p, self.config.max_order)
        out.order = built.group.order
        out.mu_computed = L.index
        out.detail = f"|L| = {L.order}, index {L.index}"
        if L.order != 3 * self.p:
            out.fail(f"L has order {L.order}, expected {3 * self.p}")
        if not L.is_core_free:
            out.fail(f"L has a core of order {L.core.order}")

    def _lemma(self, out: CheckOutcome) -> None:
        lo, hi = int(self.param("low", 3)), int(self.param("high", 13))
        failures = [
            (r, n)
            for r in range(lo, hi + 1)
            for n in range(2, hi + 1)
            if not lemma_power_exceeds(r, n)
        ]
        out.detail = f"r^(n-1) > n on {lo} <= r <= {hi}, 2 <= n <= {hi}"
        if failures:
            out.fail(f"fails at {failures[:5]}")

    def _codim1(self, out: CheckOutcome) -> None:
        built = self._hpq()
        group = built.group
        d = mult_order(self.p, self.q)
        l = (self.q - 1) // d
        solved = intransitive_optimum(group, self.config, self.budget)
        lattice = normal_lattice(group, budget=self.budget)
        out.order = group.order
        out.mu_predicted = l * self.p**d
        out.mu_computed = solved.weight
        relation = "<" if solved.weight < self.p * self.q else ">="
        out.detail = f"{len(solved.records)} members; {solved.weight} {relation} pq = {self.p * self.q}"
        codims = [lattice.codim_of(rec) for rec in solved.records]
        if any(c != 1 for c in codims):
            out.fail(f"member codimensions {codims}")
        if solved.weight != l * self.p**d:
            out.fail(f"weight {solved.weight}, expected l*p^d = {l * self.p**d}")

    def _replacement(self, out: CheckOutcome) -> None:
        built = self._hpq()
        group = built.group
        lattice = normal_lattice(group, budget=self.budget)
        L = generated_subgroup(group, [built.named.b], name="<b>")
        L1, L2 = replacement_pair(group, lattice, L)
        out.order = group.order
        out.detail = f"index {L.index} replaced by {L1.index} + {L2.index}"
        if intersection(L1.core, L2.core) != L.core:
            out.fail("cores of the pair do not meet in core(L)")
        if L1.index + L2.index >= L.index:
            out.fail("replacement pair does not lower the degree")

    def _order(self, out: CheckOutcome) -> None:
        spec = parse_spec(self.row.spec)
        group = construct(spec, self.config.max_order).group
        expected = expected_order(spec)
        out.family = spec.family
        out.parameters = spec.text
        out.order = group.order
        out.degree = group.degree
        out.detail = f"expected order {expected}"
        if expected is not None and group.order != expected:
            out.fail(f"materialized order {group.order}")

    def _root_of_unity(self, out: CheckOutcome) -> None:
        p, q = self.p, int(self.param("q", 3))
        try:
            z = root_of_unity(q, p)
        except NoRootOfUnity:
            out.detail = f"no primitive {q}-th root in F_{p}"
            if p % q == 1:
                out.fail("root exists but was not found")
            return
        out.detail = f"zeta = {z}"
        if z == 1 or pow(z, q, p) != 1:
            out.fail(f"{z} is not a primitive {q}-th root of unity mod {p}")
        if q == 3 and (z * z + z + 1) % p:
            out.fail("zeta^2 + zeta + 1 != 0")
