import pytest

from parhopf.algebra import all_passed, dual_numbers, matrix_algebra, product_algebra, regular_bimodule, regular_left
from parhopf.linalg import F2, QQ, SparseMat
from parhopf.resolutions import (
    ChainComplex, CPrime, Resolution, bar_resolution, bar_term_module, coinduced_injective_resolution,
    cprime_checks, cprime_resolution, dual_bar_bimodule_resolution, dual_bar_term_module, homotopy_checks,
    projectivity_certificate, validate_resolution,
)

from conftest import kpar


@pytest.mark.parametrize("n,f", [(1, QQ), (2, QQ), (2, F2), (3, QQ)])
def test_cprime_simplicial_and_homotopy_identities(n, f):
    hp = kpar(n, f)
    res = cprime_resolution(hp, 3)
    checks = cprime_checks(hp, 3, res)
    assert all_passed(checks), [c for c in checks if not c.passed]
    v = validate_resolution(res)
    assert v["exact"] and v["square_zero"]
    assert all(d == 0 for d in v["homology"])


def test_cprime_dimensions():
    assert CPrime(kpar(2), 3).dims == [3, 5, 9, 17]
    assert CPrime(kpar(3), 3).dims == [8, 18, 44, 114]


@pytest.mark.parametrize("n", [2, 3])
def test_cprime_terms_are_projective(n):
    hp = kpar(n)
    cp = CPrime(hp, 2)
    assert all(projectivity_certificate(hp, cp, q) for q in range(3))


def test_right_cprime_is_a_right_module():
    hp = kpar(3)
    cp = CPrime(hp, 1)
    from parhopf.algebra import ModuleData
    m = cp.right_module(1)
    ModuleData(m.dim, right_alg=hp.algebra, right=m.right)  # validates


@pytest.mark.parametrize("alg", [matrix_algebra(QQ, 2), dual_numbers(QQ), dual_numbers(F2)])
def test_bar_resolution_is_exact_with_contracting_homotopy(alg):
    res = bar_resolution(alg, regular_left(alg), 3)
    assert validate_resolution(res)["exact"]
    assert all_passed(homotopy_checks(res))
    assert bar_term_module(res, 2, with_right=False).dim == res.complex.dims[2]


def test_bar_of_bimodule_keeps_right_action():
    a = dual_numbers(QQ)
    res = bar_resolution(a, regular_bimodule(a), 2)
    m = bar_term_module(res, 1)
    assert m.is_bimodule


def test_coinduced_coresolution_is_exact():
    a = product_algebra(QQ, 2)
    res = coinduced_injective_resolution(a, regular_left(a), 2)
    assert validate_resolution(res)["exact"]


@pytest.mark.parametrize("alg", [matrix_algebra(QQ, 2), dual_numbers(QQ)])
def test_dual_bar_coresolution(alg):
    res = dual_bar_bimodule_resolution(alg, regular_bimodule(alg), 2)
    v = validate_resolution(res)
    assert v["exact"] and v["square_zero"]
    for q in range(3):
        assert dual_bar_term_module(res, q).is_bimodule


def test_corrupted_differential_is_flagged():
    a = dual_numbers(QQ)
    good = bar_resolution(a, regular_left(a), 3)
    diffs = dict(good.complex.diffs)
    diffs[2] = SparseMat.zeros(QQ, diffs[2].rows, diffs[2].cols)
    cx = ChainComplex(QQ, good.complex.dims, diffs)
    bad = Resolution(cx, good.augmentation, good.modules, good.target_dim, "projective")
    v = validate_resolution(bad)
    assert not v["exact"]
    assert any(d > 0 for d in v["homology"])


def test_chain_complex_shape_check():
    with pytest.raises(ValueError):
        ChainComplex(QQ, [1, 2], {1: SparseMat.zeros(QQ, 2, 2)})
