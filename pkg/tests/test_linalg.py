import itertools
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from parhopf.linalg import (
    F2, F3, QQ, Coordinates, Echelon, SparseMat, Subspace, kernel, kron, quotient_by_vectors, rank,
    rank_kernel_image, solve,
)


def dense_mats(p, max_rows=4, max_cols=4):
    lo, hi = (-3, 3) if p == 0 else (0, p - 1)
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)))


def brute_kernel_dim(rows, p):
    """Count solutions of A x = 0 over F_p by enumeration."""
    c = len(rows[0])
    count = 0
    for x in itertools.product(range(p), repeat=c):
        if all(sum(a * b for a, b in zip(r, x)) % p == 0 for r in rows):
            count += 1
    return _log(count, p)


def _log(n, p):
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


@settings(max_examples=60, deadline=None)
@given(dense_mats(3))
def test_rank_nullity_against_enumeration_f3(rows):
    m = SparseMat.from_dense(F3, rows)
    assert m.cols - rank(m) == brute_kernel_dim(rows, 3)


@settings(max_examples=60, deadline=None)
@given(dense_mats(2, 5, 5))
def test_rank_nullity_against_enumeration_f2(rows):
    m = SparseMat.from_dense(F2, rows)
    assert m.cols - rank(m) == brute_kernel_dim(rows, 2)


def _fraction_rank(rows):
    """Plain Gaussian elimination with Fractions, as an independent oracle."""
    a = [[Fraction(x) for x in r] for r in rows]
    r = 0
    for c in range(len(a[0])):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                t = a[i][c] / a[r][c]
                a[i] = [x - t * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


@settings(max_examples=80, deadline=None)
@given(dense_mats(0, 5, 5))
def test_rank_over_q_matches_fraction_elimination(rows):
    m = SparseMat.from_dense(QQ, rows)
    assert rank(m) == _fraction_rank(rows)


@settings(max_examples=50, deadline=None)
@given(dense_mats(0, 4, 5))
def test_kernel_vectors_are_annihilated(rows):
    m = SparseMat.from_dense(QQ, rows)
    rk, ker, im = rank_kernel_image(m)
    assert ker.dim == m.cols - rk
    assert im.dim == rk
    for v in ker.vectors():
        assert m.apply(v) == {}


@settings(max_examples=50, deadline=None)
@given(dense_mats(0, 4, 4), st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_solve_finds_preimages(rows, x):
    m = SparseMat.from_dense(QQ, rows)
    xv = {i: c for i, c in enumerate(x[: m.cols]) if c}
    b = m.apply(xv)
    sol = solve(m, b)
    assert sol is not None and m.apply(sol) == b


def test_solve_reports_inconsistency():
    m = SparseMat.from_dense(QQ, [[1, 0], [1, 0]])
    assert solve(m, {0: 1, 1: 2}) is None


def test_coordinates_roundtrip():
    vecs = [{0: 1, 1: 1}, {1: 1, 2: 2}]
    co = Coordinates(QQ, 3, vecs)
    v = {0: 3, 1: 3 + Fraction(1, 2), 2: 1}
    assert co(v, check=True) == {0: 3, 1: Fraction(1, 2)}


def test_quotient_projection_kills_subspace():
    q = quotient_by_vectors(QQ, 3, [{0: 1, 1: 1}])
    assert q.dim == 2
    assert q.projection.apply({0: 1, 1: 1}) == {}
    assert (q.projection @ q.section) == SparseMat.identity(QQ, 2)


def test_kron_shapes_and_values():
    a = SparseMat.from_dense(QQ, [[1, 2], [0, 1]])
    b = SparseMat.from_dense(QQ, [[0, 1], [1, 0]])
    k = kron(a, b)
    assert (k.rows, k.cols) == (4, 4)
    assert k.to_dense()[0] == [0, 1, 0, 2]


def test_echelon_and_subspace_sum():
    s1 = Subspace.span(QQ, 3, [{0: 1}])
    s2 = Subspace.span(QQ, 3, [{0: 2}, {1: 1}])
    assert (s1 + s2).dim == 2
    e = Echelon(F2)
    assert e.add({0: 1, 1: 1}) and not e.add({0: 1, 1: 1})


def test_kernel_of_zero_matrix_is_everything():
    assert kernel(SparseMat.zeros(F3, 2, 3)).dim == 3
