from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import fixture, kpar
from parhopf.algebra import regular_bimodule
from parhopf.linalg import F2, QQ, SparseMat, kernel
from parhopf.spectral import (
    DoubleComplex,
    build_cohomological_grothendieck,
    build_homological_grothendieck,
    global_collapse_check,
    grothendieck_report,
    kpar_collapse_check,
    report_json,
    separable_collapse_check,
    ss_pages,
    tensor_double_complex,
    total_homology_dims,
)


def dense_rank(rows):
    """Plain Gaussian elimination over Fractions, independent of the library."""
    m = [[Fraction(x) for x in r] for r in rows]
    rk, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][c] != 0:
                t = m[i][c] / m[rk][c]
                m[i] = [a - t * b for a, b in zip(m[i], m[rk])]
        rk += 1
    return rk


def to_dense(mat: SparseMat):
    out = [[0] * mat.cols for _ in range(mat.rows)]
    for j, col in enumerate(mat.columns):
        for i, x in col.items():
            out[i][j] = x
    return out


def chain_homology(dims, d):
    """Betti numbers of a chain complex from dense ranks."""
    rk = {n: dense_rank(to_dense(m)) if m.rows and m.cols else 0 for n, m in d.items()}
    return {n: dims[n] - rk.get(n, 0) - rk.get(n + 1, 0) for n in dims}


@st.composite
def chain_complexes(draw, length=3, max_dim=3):
    dims = {n: draw(st.integers(0, max_dim)) for n in range(length)}
    d = {}
    for n in range(1, length):
        if n == 1:
            cols = [{i: draw(st.integers(-2, 2)) for i in range(dims[0])} for _ in range(dims[1])]
        else:
            ker = kernel(d[n - 1]).vectors()
            cols = []
            for _ in range(dims[n]):
                v: dict = {}
                for b in ker:
                    c = draw(st.integers(-2, 2))
                    for k, x in b.items():
                        v[k] = v.get(k, 0) + c * x
                cols.append(v)
        cols = [{k: QQ(x) for k, x in c.items() if x} for c in cols]
        d[n] = SparseMat(QQ, dims[n - 1], dims[n], cols)
    return dims, d


def kunneth(h1, h2):
    out = {}
    for p, a in h1.items():
        for q, b in h2.items():
            out[p + q] = out.get(p + q, 0) + a * b
    return out


@settings(max_examples=40, deadline=None)
@given(chain_complexes(), chain_complexes())
def test_tensor_double_complex_matches_kunneth(c1, c2):
    (dims1, d1), (dims2, d2) = c1, c2
    dc = tensor_double_complex(QQ, dims1, d1, dims2, d2)
    h1, h2 = chain_homology(dims1, d1), chain_homology(dims2, d2)
    expect = kunneth(h1, h2)
    for filt in ("column", "row"):
        res = ss_pages(dc, filt)
        assert all(c.passed for c in res.checks), [c.name for c in res.checks if not c.passed]
        for n, v in expect.items():
            assert res.total_dims.get(n, 0) == v
            assert sum(x for (p, q), x in res.einf.items() if p + q == n) == v
        # E2 of a tensor product is H_p ⊗ H_q in either filtration
        e2 = res.page(2).entries if len(res.pages) > 1 else res.page(1).entries
        for (p, q), x in e2.items():
            assert x == h1[p] * h2[q]


@settings(max_examples=25, deadline=None)
@given(chain_complexes(), chain_complexes())
def test_cohomological_variant_on_dual_complexes(c1, c2):
    (dims1, d1), (dims2, d2) = c1, c2
    dims = {(p, q): dims1[p] * dims2[q] for p in dims1 for q in dims2}
    from parhopf.linalg import kron
    h = {(p, q): kron(d1[p + 1].transpose(), SparseMat.identity(QQ, dims2[q]))
         for p in dims1 for q in dims2 if p + 1 in d1}
    v = {(p, q): kron(SparseMat.identity(QQ, dims1[p]), d2[q + 1].transpose())
         for p in dims1 for q in dims2 if q + 1 in d2}
    dc = DoubleComplex(QQ, dims, h, v, variant="cohomological")
    expect = kunneth(chain_homology(dims1, d1), chain_homology(dims2, d2))
    for filt in ("column", "row"):
        res = ss_pages(dc, filt)
        assert all(c.passed for c in res.checks)
        for n, x in expect.items():
            assert res.total_dims.get(n, 0) == x


def one(x=1):
    return SparseMat(QQ, 1, 1, [{0: QQ(x)}] if x else [{}])


def test_zigzag_has_a_nonzero_d2():
    # x(2,0) -h-> w(1,0) <-v- z(1,1) -h-> y(0,1)
    dims = {(2, 0): 1, (1, 0): 1, (1, 1): 1, (0, 1): 1}
    dc = DoubleComplex(QQ, dims, {(2, 0): one(), (1, 1): one()}, {(1, 1): one()}, signed=True)
    col = ss_pages(dc, "column")
    assert col.page(1).entries == {(2, 0): 1, (1, 0): 0, (1, 1): 0, (0, 1): 1}
    assert col.page(2).entries[(2, 0)] == 1
    assert not col.page(2).differentials[(2, 0)].is_zero()
    assert all(v == 0 for v in col.page(3).entries.values())
    assert all(v == 0 for v in col.einf.values())
    row = ss_pages(dc, "row")
    assert all(v == 0 for v in row.page(1).entries.values())
    assert total_homology_dims(dc) == {1: 0, 2: 0}
    assert all(c.passed for c in col.checks + row.checks)


def test_single_entry_and_non_anticommuting_squares():
    dc = DoubleComplex(QQ, {(0, 0): 2}, {}, {})
    res = ss_pages(dc)
    assert res.einf == {(0, 0): 2} and res.total_dims == {0: 2}
    # a commuting square used with signed=True does not anticommute
    dims = {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}
    h = {(1, 0): one(), (1, 1): one()}
    v = {(0, 1): one(), (1, 1): one()}
    bad = DoubleComplex(QQ, dims, h, v, signed=True)
    assert not next(c for c in bad.checks() if c.name == "differentials anticommute").passed
    good = DoubleComplex(QQ, dims, h, v)
    assert all(c.passed for c in good.checks())
    assert total_homology_dims(good) == {0: 0, 1: 0, 2: 0}


def test_shape_mismatch_is_rejected():
    with pytest.raises(ValueError):
        DoubleComplex(QQ, {(0, 0): 1, (1, 0): 2}, {(1, 0): one()}, {})


def test_filtration_name_is_validated():
    with pytest.raises(ValueError):
        ss_pages(DoubleComplex(QQ, {(0, 0): 1}, {}, {}), "diagonal")


# ---------------------------------------------------------------- Grothendieck bicomplex

def _report(name, variant, bounds=(2, 2), route="reduced"):
    fx = fixture(name)
    build = build_homological_grothendieck if variant == "homological" else build_cohomological_grothendieck
    gc = build(fx.smash, fx.hp, fx.module, bounds, route=route)
    return gc, grothendieck_report(gc)


@pytest.mark.parametrize("variant", ["homological", "cohomological"])
@pytest.mark.parametrize("name", ["trivial", "z2-zero", "z2-swap-global", "z2-f2-trivial"])
def test_grothendieck_small_fixtures(name, variant):
    gc, rep = _report(name, variant)
    assert rep.passed, [(c.name, c.witness) for c in rep.checks if not c.passed]


@pytest.mark.parametrize("variant", ["homological", "cohomological"])
@pytest.mark.parametrize("name", ["z2-zero", "z2-swap-global", "z2-f2-trivial"])
def test_reduced_and_direct_routes_agree(name, variant):
    gc_r, rep_r = _report(name, variant, (1, 1))
    gc_d, rep_d = _report(name, variant, (1, 1), route="direct")
    keep = set(gc_r.valid_entries)
    for a, b in ((rep_r.column, rep_d.column), (rep_r.row, rep_d.row)):
        for pa, pb in zip(a.pages, b.pages):
            assert {k: v for k, v in pa.entries.items() if k in keep} == \
                   {k: v for k, v in pb.entries.items() if k in keep}
    assert rep_r.abutment == rep_d.abutment


def test_f2_trivial_e2_row_and_abutment():
    gc, rep = _report("z2-f2-trivial", "homological")
    e2 = rep.column.page(2).entries
    assert [e2[(p, 0)] for p in range(3)] == [2, 2, 2]
    assert rep.abutment == [2, 2, 2]


def test_separable_fixture_has_no_rows_above_zero():
    gc, rep = _report("z2-swap-global", "homological")
    e2 = rep.column.page(2).entries
    assert all(e2[(p, q)] == 0 for (p, q) in gc.valid_entries if q >= 1)


def test_report_json_layout():
    gc, rep = _report("z2-zero", "homological", (1, 1))
    js = report_json(rep, gc, "z2-zero")
    assert js["fixture"] == "z2-zero"
    assert [f["filtration"] for f in js["filtrations"]] == ["column", "row"]
    for f in js["filtrations"]:
        assert set(f) == {"fixture", "filtration", "pages", "einf", "total_dims", "checks"}
        assert all({"p", "q", "dim"} == set(e) for pg in f["pages"] for e in pg["entries"])
        # z2-zero collapses A#H to a point: everything has dimension at most one
        assert all(e["dim"] <= 1 for pg in f["pages"] for e in pg["entries"])


def test_collapse_checks():
    fx = fixture("z2-swap-global")
    sep = separable_collapse_check(fx.smash, fx.hp, fx.module, 2)
    assert sep.precondition and sep.passed, (sep.lhs, sep.rhs)
    glob = global_collapse_check(fx.smash, fx.hp, fx.module, (2, 2))
    assert glob.precondition and glob.passed
    not_global = fixture("z4-restricted")
    assert not global_collapse_check(not_global.smash, not_global.hp, not_global.module).precondition
    for field, expect in ((QQ, [3, 0, 0]), (F2, [3, 2, 2])):
        hp = kpar(2, field)
        rep = kpar_collapse_check(hp, regular_bimodule(hp.algebra), 2)
        assert rep.passed and rep.rhs == expect


def test_f2_global_collapse_has_nonzero_higher_columns():
    fx = fixture("z2-f2-trivial")
    rep = global_collapse_check(fx.smash, fx.hp, fx.module, (2, 2))
    assert rep.passed
    assert [e["dim"] for e in rep.lhs if e["q"] == 0] == [2, 2, 2]


@pytest.mark.slow
@pytest.mark.parametrize("variant", ["homological", "cohomological"])
def test_grothendieck_z3_b_action(variant):
    gc, rep = _report("z3-B-action", variant, (1, 1))
    assert rep.passed, [(c.name, c.witness) for c in rep.checks if not c.passed]
