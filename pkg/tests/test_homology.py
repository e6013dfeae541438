import pytest

from parhopf.algebra import (
    dual_numbers, field_algebra, matrix_algebra, product_algebra, regular_bimodule, regular_left,
)
from parhopf.homology import (
    HomologyTable, b_restriction_tor, f2f1_iso_check, g2g1_iso_check, global_comparison, hochschild_cohomology,
    hochschild_complex, hochschild_homology, partial_ext, partial_tor,
)
from parhopf.linalg import F2, F3, QQ, SparseMat
from parhopf.partial import hpar_module

from conftest import fixture, kpar

FIXTURES = ["trivial", "z2-zero", "z2-swap-global", "z4-restricted", "z2-f2-trivial", "z3-B-action"]


def test_dual_numbers_hand_oracle():
    # HH_n(K[t]/t^2) over Q: the centre K[t]/t^2 in degree 0, then one class per degree
    a = dual_numbers(QQ)
    assert hochschild_homology(a, regular_bimodule(a), 3).dims == [2, 1, 1, 1]
    assert hochschild_cohomology(a, regular_bimodule(a), 3).dims == [2, 1, 1, 1]


@pytest.mark.parametrize("alg", [field_algebra(QQ), matrix_algebra(QQ, 2), product_algebra(QQ, 2),
                                 matrix_algebra(F2, 2)])
def test_separable_algebras_vanish_above_degree_zero(alg):
    hh = hochschild_homology(alg, regular_bimodule(alg), 3).dims
    hc = hochschild_cohomology(alg, regular_bimodule(alg), 3).dims
    assert hh[1:] == [0, 0, 0] and hc[1:] == [0, 0, 0]


@pytest.mark.parametrize("name", FIXTURES)
def test_hochschild_routes_agree_on_fixtures(name):
    fx = fixture(name)
    n = 3 if fx.smash.dim <= 4 else 2
    # both functions raise if the direct and the bar-over-enveloping routes disagree
    hochschild_homology(fx.smash.algebra, fx.module, n)
    hochschild_cohomology(fx.smash.algebra, fx.module, n)


@pytest.mark.parametrize("alg", [dual_numbers(QQ), dual_numbers(F2), matrix_algebra(QQ, 2),
                                 fixture("z2-f2-trivial").smash.algebra])
def test_blockwise_bar_route_matches_whole_term_quotient(alg):
    m = regular_bimodule(alg)
    for fn in (hochschild_homology, hochschild_cohomology):
        blocks = fn(alg, m, 2, bar="blocks").extra["bar"]
        generic = fn(alg, m, 2, bar="generic").extra["bar"]
        assert blocks == generic


def test_hochschild_direct_complex_squares_to_zero():
    a = dual_numbers(F3)
    assert hochschild_complex(a, regular_bimodule(a), 3).square_zero()


@pytest.mark.parametrize("f,expected", [(F2, [1, 1, 1, 1]), (QQ, [1, 0, 0, 0]), (F3, [1, 0, 0, 0])])
def test_global_comparison_trivial_module_z2(f, expected):
    hp = kpar(2, f)
    out, equal = global_comparison(hp, [SparseMat.identity(f, 1)] * 2, 3)
    assert equal
    assert out["tor"][0].dims == expected and out["ext"][0].dims == expected


def test_global_comparison_z3_over_f3():
    hp = kpar(3, F3)
    out, equal = global_comparison(hp, [SparseMat.identity(F3, 1)] * 3, 3)
    assert equal and out["tor"][0].dims == [1, 1, 1, 1]


def test_partial_tor_of_free_module():
    hp = kpar(2)
    free = regular_left(hp.algebra)
    # Tor(B, H_par) = B, Ext(B, H_par) = Hom(B, H_par)
    assert partial_tor(hp, free, 3).dims == [2, 0, 0, 0]
    assert partial_ext(hp, free, 3).dims == [2, 0, 0, 0]


def test_partial_tor_of_zero_action():
    fx = fixture("z2-zero")
    base = hpar_module("base", fx.hp, pa=fx.action).module
    assert partial_tor(fx.hp, base, 3).dims[0] == 1


@pytest.mark.parametrize("name", ["z2-swap-global", "z2-zero", "z4-restricted", "z2-f2-trivial", "trivial"])
def test_functor_isomorphisms(name):
    fx = fixture(name)
    ok, checks, data = f2f1_iso_check(fx.smash, fx.hp, fx.module)
    assert ok, [c for c in checks if not c.passed]
    ok, checks, data = g2g1_iso_check(fx.smash, fx.hp, fx.module)
    assert ok, [c for c in checks if not c.passed]


def test_restriction_to_base_is_acyclic():
    fx = fixture("z4-restricted")
    dims = b_restriction_tor(fx.hp, fx.smash, 2)
    assert dims[1:] == [0, 0]


def test_homology_table_rejects_negative():
    with pytest.raises(ValueError):
        HomologyTable("x", QQ, [-1])
