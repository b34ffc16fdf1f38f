import pytest

from mindeg.constructors import (
    Abelian,
    Amn,
    Cyclic,
    Dihedral,
    Gmn,
    Hpq,
    NamedElements,
    Product,
    Symmetric,
    Wreath,
    b_action_holds,
    construct,
    eigenline,
    expected_order,
    special_L,
    subgroup_H,
    wreath_decomposition,
)
from mindeg.exceptions import NoRootOfUnity, SpecInvalid
from mindeg.perm import Perm
from mindeg.subgroups import normal_lattice


@pytest.mark.parametrize(
    "spec, degree, order",
    [
        (Cyclic(1), 1, 1),
        (Cyclic(6), 6, 6),
        (Abelian((2, 4)), 6, 8),
        (Dihedral(1), 2, 2),
        (Dihedral(2), 4, 4),
        (Dihedral(5), 5, 10),
        (Symmetric(4), 4, 24),
        (Wreath(2, 3), 6, 48),
        (Wreath(5, 1), 5, 5),
        (Amn(4, 2, 2), 8, 8),
        (Gmn(3, 3, 3), 9, 54),
        (Gmn(2, 2, 3), 6, 24),
        (Gmn(3, 1, 2), 6, 18),
        (Hpq(7, 3), 21, 147),
        (Hpq(3, 5), 15, 405),
        (Product((Dihedral(4), Cyclic(3))), 7, 24),
    ],
)
def test_degree_and_order(spec, degree, order):
    group = construct(spec).group
    assert group.degree == degree
    assert group.order == order
    assert expected_order(spec) == order


def test_spec_text_round_trips():
    spec = Product((Cyclic(5), Gmn(5, 5, 3)))
    assert spec.text == "X(C(5),G(5,5,3))"
    assert str(Hpq(3, 5)) == "H(3,5)"


@pytest.mark.parametrize(
    "spec",
    [Amn(4, 3, 2), Gmn(6, 4, 2), Hpq(4, 3), Hpq(3, 9), Cyclic(0), Abelian(()), Product((Cyclic(2),))],
)
def test_invalid_specs(spec):
    with pytest.raises(SpecInvalid):
        construct(spec)


def test_named_elements_layout():
    named = NamedElements.build(3, 3)
    assert named.degree == 9
    assert named.theta[1] == Perm.from_cycles(9, (3, 4, 5))
    assert named.c[0] == named.theta[0] * named.theta[1].inverse()
    assert named.b(0) == 3 and named.b(7) == 1
    assert named.a(1) == 4 and named.a(6) == 6
    assert named.gamma.order() == 3
    assert named.c_power((1, 2)) == named.c[0] * named.c[1] ** 2


@pytest.mark.parametrize("m, n", [(3, 3), (5, 3), (7, 3), (3, 5), (2, 4)])
def test_b_action(m, n):
    assert b_action_holds(NamedElements.build(m, n))


def test_subgroup_H_is_Hpq():
    built, H = subgroup_H(5, 3)
    assert H.order == 75
    assert H.element_set == construct(Hpq(5, 3)).group.element_set
    assert built.group.order == 150


def test_special_L():
    built, L = special_L(7)
    assert L.order == 21
    assert L.is_core_free
    assert L.index == 14
    assert eigenline(7, built.named) in L
    # the eigenline is a normal line of H(7,3)
    H = construct(Hpq(7, 3)).group
    minimal = {N.element_set for N in normal_lattice(H).minimal_normals}
    line = frozenset((eigenline(7, built.named) ** k) for k in range(7))
    assert line in minimal


def test_special_L_needs_cube_root():
    with pytest.raises(NoRootOfUnity):
        special_L(5)
    with pytest.raises(SpecInvalid):
        special_L(2)


def test_wreath_decomposition():
    result = wreath_decomposition(5, 3)
    assert result.applicable
    assert result.intersection_trivial
    assert result.product_order == result.wreath_order == 750
    assert result.gamma_central
    assert result.holds


def test_wreath_decomposition_p_equals_q():
    result = wreath_decomposition(3, 3)
    assert not result.applicable
    assert not result.intersection_trivial
    assert result.centralizer_inside_gmn
    assert result.holds
