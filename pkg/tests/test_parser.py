import pytest

from mindeg.constructors import Abelian, Amn, Cyclic, Gmn, Hpq, Product
from mindeg.exceptions import ParseError, SpecInvalid
from mindeg.parser import (
    RowDefinition,
    abelian_specs,
    builtin_campaigns,
    invariant_factor_lists,
    load_campaign,
    parse_spec,
)
from mindeg.utils.expander import expand_pattern


def test_parse_families():
    assert parse_spec("G(7,7,3)") == Gmn(7, 7, 3)
    assert parse_spec(" H( 3 , 5 ) ") == Hpq(3, 5)
    assert parse_spec("Ab(2,6)") == Abelian((2, 6))
    assert parse_spec("X(C(5),G(5,5,3))") == Product((Cyclic(5), Gmn(5, 5, 3)))
    assert parse_spec("X(C(5),G(5,5,3))").text == "X(C(5),G(5,5,3))"


@pytest.mark.parametrize(
    "text, position",
    [("C(#)", 2), ("C(2", 3), ("C(2)x", 4), ("Q(3)", 0), ("G(3,3)", 0), ("(3)", 0)],
)
def test_parse_errors_carry_position(text, position):
    with pytest.raises(ParseError) as err:
        parse_spec(text)
    assert err.value.position == position
    assert f"position {position}" in str(err.value)


def test_product_takes_specs():
    with pytest.raises(ParseError):
        parse_spec("X(3,4)")
    with pytest.raises(ParseError):
        parse_spec("C(S(3))")


def test_family_invariants():
    with pytest.raises(SpecInvalid):
        parse_spec("A(4,3,2)")
    with pytest.raises(SpecInvalid):
        parse_spec("H(4,3)")
    with pytest.raises(SpecInvalid):
        parse_spec("X(C(2))")
    assert parse_spec("A(4,3,2)", validate=False) == Amn(4, 3, 2)


def test_expand_pattern():
    assert expand_pattern("D({1..3})") == ["D(1)", "D(2)", "D(3)"]
    assert expand_pattern("H({3,5},3)") == ["H(3,3)", "H(5,3)"]
    assert expand_pattern("S(4)") == ["S(4)"]
    assert len(expand_pattern("G({3..5},3,{2,3})")) == 6
    assert expand_pattern("G({3..4},3,{2,3})")[:2] == ["G(3,3,2)", "G(3,3,3)"]


def test_invariant_factor_lists():
    assert sorted(invariant_factor_lists(8)) == [[2, 2, 2], [2, 4], [8]]
    assert list(invariant_factor_lists(1)) == [[]]
    assert sorted(invariant_factor_lists(12)) == [[2, 6], [12]]


def test_abelian_specs():
    specs = abelian_specs(8)
    assert len(specs) == 11
    assert specs[0] == "C(1)"
    assert "Ab(2,2,2)" in specs
    assert len(abelian_specs(100)) == sum(1 for n in range(1, 101) for _ in invariant_factor_lists(n))


def test_builtin_campaigns_load():
    names = builtin_campaigns()
    for name in ("acceptance", "abelian", "dihedral", "gppq", "hpq", "cyclotomic", "products", "oracle", "structure"):
        assert name in names
    for name in names:
        assert load_campaign(name).rows


def test_campaign_expansion():
    assert len(load_campaign("dihedral").rows) == 100
    cyclotomic = load_campaign("cyclotomic").rows
    assert len(cyclotomic) == 15 * 14
    assert all(row.kind == "cyclotomic" and row.params["r"] != row.params["p"] for row in cyclotomic)
    everything = load_campaign("all")
    assert len(everything.rows) > len(load_campaign("acceptance").rows) + 100


def test_union_campaign_alias():
    assert {"all", "paper-all"} <= set(builtin_campaigns())
    union = load_campaign("paper-all")
    assert union.name == "paper-all"
    assert [row.label for row in union.rows] == [row.label for row in load_campaign("all").rows]


def test_acceptance_rows():
    rows = load_campaign("acceptance").rows
    by_spec = {row.spec: row for row in rows if row.kind == "mu"}
    assert by_spec["G(7,7,3)"].expected == 14
    assert by_spec["G(3,3,5)"].method == "sandwich"
    assert by_spec["G(3,3,5)"].lower == "H(3,5)"


def test_include_cycle(tmp_path):
    a, b = tmp_path / "a.yaml", tmp_path / "b.yaml"
    a.write_text(f"name: a\ninclude: ['{b}']\n")
    b.write_text(f"name: b\ninclude: ['{a}']\n")
    with pytest.raises(ParseError, match="cycle"):
        load_campaign(str(a))


def test_include_and_expand(tmp_path):
    inner = tmp_path / "inner.yaml"
    inner.write_text("name: inner\nrows:\n  - spec: 'S({3..4})'\n")
    outer = tmp_path / "outer.yaml"
    outer.write_text(f"name: outer\ninclude: ['{inner}']\nrows:\n  - spec: 'C(6)'\n    expected: 5\n")
    campaign = load_campaign(str(outer))
    assert [row.spec for row in campaign.rows] == ["S(3)", "S(4)", "C(6)"]
    assert campaign.rows[2].expected == 5


@pytest.mark.parametrize(
    "content, message",
    [
        ("rows: []\n", "name"),
        ("- just\n- a list\n", "mapping"),
        ("name: x\nrows: [\n", "Invalid YAML"),
        ("name: x\nrows:\n  - generate: primes\n", "unknown generator"),
        ("name: x\nrows: 3\n", "x.yaml"),
    ],
)
def test_bad_campaign_files(tmp_path, content, message):
    path = tmp_path / "x.yaml"
    path.write_text(content)
    with pytest.raises(ParseError, match=message):
        load_campaign(str(path))


def test_unknown_campaign():
    with pytest.raises(ParseError, match="built-in"):
        load_campaign("no-such-campaign")


def test_row_definition():
    row = RowDefinition(spec="G(13,13,3)", lattice_cap=1100)
    assert row.kind == "mu"
    assert row.label == "G(13,13,3)"
    assert row.overrides() == {"lattice_cap": 1100, "max_order": None, "budget_seconds": None}
    assert RowDefinition(kind="cyclotomic", params={"r": 5, "p": 3}).label == "p=3,r=5"
