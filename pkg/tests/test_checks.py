import pytest

from mindeg.budget import Budget
from mindeg.checks import CheckRegistry
from mindeg.config import EngineConfig
from mindeg.exceptions import SpecInvalid
from mindeg.formulas import EQUALITY, STRICT
from mindeg.parser import RowDefinition
from mindeg.report import FAIL, PASS


def run(row: RowDefinition, config: EngineConfig | None = None):
    config = config or EngineConfig()
    return CheckRegistry.get(row.kind)(row, config, Budget.unlimited()).run()


def test_registry():
    assert set(CheckRegistry.list_kinds()) >= {"mu", "product", "cyclotomic", "crosscheck", "oracle", "structure"}
    assert CheckRegistry.all_meta()["mu"].needs_spec
    with pytest.raises(ValueError, match="Unknown row kind"):
        CheckRegistry.get("no-such")


def test_mu_check_uses_prediction():
    out = run(RowDefinition(spec="D(6)"))
    assert (out.status, out.mu_predicted, out.mu_computed) == (PASS, 5, 5)
    assert out.order == 12


def test_mu_check_inconclusive_sandwich():
    row = RowDefinition(spec="D(4)", method="sandwich", lower="D(2)", params={"inconclusive": True})
    out = run(row)
    # D(2) is the Klein group, which already needs 4 points
    assert out.status == FAIL
    assert "expected an inconclusive sandwich" in out.detail


@pytest.mark.slow
def test_mu_check_special_L():
    out = run(RowDefinition(spec="G(7,7,3)", expected=14, params={"special_L": 7}))
    assert out.status == PASS, out.detail
    assert "conjugate to L(7)" in out.detail


def test_product_equality():
    out = run(RowDefinition(kind="product", spec="X(D(4),C(3))", expected=7, params={"relation": "equality"}))
    assert out.status == PASS, out.detail
    assert out.relation == EQUALITY
    assert "7 = 4 + 3" in out.detail


def test_product_relation_mismatch():
    out = run(RowDefinition(kind="product", spec="X(C(2),S(3))", params={"relation": STRICT}))
    assert out.status == FAIL
    assert out.relation == EQUALITY


def test_product_needs_product_spec():
    with pytest.raises(SpecInvalid):
        run(RowDefinition(kind="product", spec="S(3)"))


@pytest.mark.slow
def test_product_strict_through_wreath():
    row = RowDefinition(
        kind="product",
        spec="X(C(5),G(5,5,3))",
        method="sandwich",
        lower="G(5,5,3)",
        params={"realization": "Wr(5,3)", "relation": "strict"},
    )
    out = run(row)
    assert out.status == PASS, out.detail
    assert (out.mu_computed, out.relation) == (15, STRICT)


def test_cyclotomic_check():
    out = run(RowDefinition(kind="cyclotomic", params={"r": 31, "p": 2}))
    assert out.status == PASS
    assert out.method == "cantor-zassenhaus"
    assert out.detail == "6 factor(s) of degree 5"
    assert run(RowDefinition(kind="cyclotomic", params={"r": 5, "p": 3})).method == "direct"


@pytest.mark.parametrize("p, q", [(2, 3), (5, 3), (3, 5)])
def test_crosscheck(p, q):
    out = run(RowDefinition(kind="crosscheck", params={"p": p, "q": q}))
    assert out.status == PASS, out.detail


@pytest.mark.parametrize("spec", ["S(3)", "D(4)", "Ab(2,2)", "C(6)", "A(4,2,2)"])
def test_oracle(spec):
    out = run(RowDefinition(kind="oracle", spec=spec))
    assert out.status == PASS, out.detail
    assert out.mu_predicted == out.mu_computed


@pytest.mark.parametrize(
    "params",
    [
        {"check": "centralizer-b", "p": 5, "q": 3},
        {"check": "centralizer-b", "p": 2, "q": 3},
        {"check": "center-H", "p": 3, "q": 3},
        {"check": "b-action", "p": 7, "q": 3},
        {"check": "wreath", "p": 3, "q": 3},
        {"check": "gmn-normal-in-wreath", "p": 3, "q": 3},
        {"check": "special-L", "p": 7},
        {"check": "root-of-unity", "p": 7},
        {"check": "root-of-unity", "p": 5},
        {"check": "lemma", "low": 3, "high": 13},
        {"check": "replacement", "p": 7, "q": 3},
    ],
)
def test_structure(params):
    out = run(RowDefinition(kind="structure", params=params))
    assert out.status == PASS, out.detail


@pytest.mark.parametrize("spec", ["C(12)", "Ab(2,6)", "D(10)", "Wr(3,2)", "G(6,3,2)", "H(3,5)"])
def test_structure_order(spec):
    out = run(RowDefinition(kind="structure", spec=spec, params={"check": "order"}))
    assert out.status == PASS, out.detail


def test_structure_unknown_check():
    with pytest.raises(ValueError, match="unknown structure check"):
        run(RowDefinition(kind="structure", params={"check": "nope"}))


@pytest.mark.slow
def test_structure_codim1():
    out = run(RowDefinition(kind="structure", params={"check": "codim1", "p": 7, "q": 3}))
    assert out.status == PASS, out.detail
    assert out.mu_computed == out.mu_predicted == 14
