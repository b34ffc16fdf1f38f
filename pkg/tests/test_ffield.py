import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mindeg.constructors import Hpq, construct
from mindeg.exceptions import NoRootOfUnity, SpecInvalid
from mindeg.ffield import (
    FpPoly,
    companion_matrix,
    decompose_module,
    factor_cyclotomic,
    field_matrix,
    left_kernel,
    mult_order,
    poly_at_matrix,
    rank_mod_p,
    root_of_unity,
    submodule_to_subgroup,
)
from mindeg.subgroups import is_normal

from .conftest import SMALL_PRIMES

prime_pairs = st.tuples(st.sampled_from(SMALL_PRIMES), st.sampled_from(SMALL_PRIMES)).filter(lambda t: t[0] != t[1])


def test_poly_basics():
    f = FpPoly(5, (1, 2, 0, 0))
    assert f.coeffs == (1, 2)
    assert f.degree == 1
    assert f(2) == 0
    assert FpPoly(2, (1, 1, 0, 1)).is_monic
    assert str(FpPoly(2, (1, 1, 0, 1))) == "x^3 + x + 1"
    assert FpPoly.from_dense(FpPoly(7, (3, 0, 1)).dense, 7) == FpPoly(7, (3, 0, 1))


@pytest.mark.parametrize("p, q, d", [(7, 3, 1), (5, 3, 2), (2, 7, 3), (3, 5, 4), (3, 2, 1), (2, 3, 2)])
def test_mult_order(p, q, d):
    assert mult_order(p, q) == d


def test_mult_order_needs_unit():
    with pytest.raises(SpecInvalid):
        mult_order(6, 3)


def test_root_of_unity():
    assert root_of_unity(3, 7) == 2
    assert root_of_unity(3, 13) == 3
    with pytest.raises(NoRootOfUnity):
        root_of_unity(3, 5)
    with pytest.raises(SpecInvalid):
        root_of_unity(4, 5)


@pytest.mark.parametrize("q", SMALL_PRIMES)
def test_root_of_unity_exists_iff_p_is_1_mod_q(q):
    for p in SMALL_PRIMES:
        if p % q == 1:
            zeta = root_of_unity(q, p)
            assert 1 < zeta < p
            assert pow(zeta, q, p) == 1
        else:
            with pytest.raises(NoRootOfUnity):
                root_of_unity(q, p)


def test_factor_q5_over_f3_is_irreducible():
    result = factor_cyclotomic(5, 3)
    assert (result.d, result.l) == (4, 1)
    assert result.factors == (FpPoly.cyclotomic(5, 3),)
    assert result.verify() == []


def test_factor_q7_over_f2():
    result = factor_cyclotomic(7, 2)
    assert (result.d, result.l) == (3, 2)
    assert result.factors == (FpPoly(2, (1, 0, 1, 1)), FpPoly(2, (1, 1, 0, 1)))
    assert result.verify() == []


def test_factor_linear_case():
    result = factor_cyclotomic(3, 7)
    assert result.factors == (FpPoly(7, (3, 1)), FpPoly(7, (5, 1)))


def test_factor_rejects_bad_input():
    with pytest.raises(SpecInvalid):
        factor_cyclotomic(3, 3)
    with pytest.raises(SpecInvalid):
        factor_cyclotomic(4, 3)


def test_verify_reports_problems():
    good = factor_cyclotomic(7, 2)
    bad = type(good)(good.p, good.r, good.d, good.l, good.factors[:1], good.seed)
    problems = bad.verify()
    assert any("differs from Q_r" in p for p in problems)
    assert any("expected 2" in p for p in problems)


@settings(max_examples=60, deadline=None)
@given(prime_pairs)
def test_factorization_invariants(pair):
    r, p = pair
    result = factor_cyclotomic(r, p)
    d = mult_order(p, r)
    assert result.verify() == []
    assert len(result.factors) == (r - 1) // d
    assert all(f.degree == d for f in result.factors)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([(31, 2), (43, 5), (41, 3), (17, 13)]), st.integers(0, 10_000))
def test_factorization_independent_of_seed(pair, seed):
    r, p = pair
    assert factor_cyclotomic(r, p, seed=seed).factors == factor_cyclotomic(r, p, seed=0).factors


def test_linear_algebra():
    rows = [(1, 2, 3), (2, 4, 6), (0, 1, 1)]
    assert rank_mod_p(rows, 7) == 2
    assert rank_mod_p([], 7) == 0
    kernel = left_kernel(field_matrix(rows, 7), 7)
    assert len(kernel) == 1
    v = kernel[0]
    assert all(0 <= x < 7 for x in v)
    for col in zip(*rows):
        assert sum(a * b for a, b in zip(v, col)) % 7 == 0


def test_left_kernel_of_invertible_matrix_is_trivial():
    assert left_kernel(field_matrix([(1, 1), (0, 1)], 5), 5) == []


def test_companion_matrix_satisfies_cyclotomic():
    for p, q in [(7, 3), (2, 5), (3, 7)]:
        B = companion_matrix(p, q)
        assert B.shape == (q - 1, q - 1)
        assert poly_at_matrix(FpPoly.cyclotomic(q, p), B).is_zero_matrix


@pytest.mark.parametrize("p, q", [(7, 3), (2, 7)])
def test_submodules_are_kernels_of_factors(p, q):
    decomp = decompose_module(p, q)
    for f, basis in zip(decomp.factors, decomp.submodules):
        image = field_matrix(basis, p) * poly_at_matrix(f, decomp.companion)
        assert image.is_zero_matrix


@pytest.mark.parametrize("p, q", [(7, 3), (5, 3), (3, 5), (2, 7), (13, 3)])
def test_decompose_module(p, q):
    decomp = decompose_module(p, q)
    d = mult_order(p, q)
    assert decomp.d == d
    assert decomp.l == (q - 1) // d
    assert decomp.verify() == []


def test_submodules_map_to_normal_subgroups():
    built = construct(Hpq(7, 3))
    decomp = decompose_module(7, 3)
    records = submodule_to_subgroup(decomp, built.group, built.named.c)
    assert [r.name for r in records] == ["A_1", "A_2"]
    assert all(r.order == 7 and is_normal(built.group, r) for r in records)
    with pytest.raises(SpecInvalid):
        submodule_to_subgroup(decomp, built.group, built.named.c[:1])
    with pytest.raises(SpecInvalid):
        decompose_module(3, 3)
