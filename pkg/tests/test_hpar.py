import copy

import pytest

from parhopf.algebra import AxiomError, all_passed
from parhopf.hopf import GroupTable
from parhopf.hpar import (
    closure_oracle_dim, from_presentation, kpar_dimension_formula, theorem48_isomorphism_check, validate_hpar,
)
from parhopf.linalg import F2, QQ

from conftest import kpar


@pytest.mark.parametrize("n,dim", [(1, 1), (2, 3), (3, 8), (4, 20)])
def test_dimensions_against_word_closure(n, dim):
    hp = kpar(n)
    assert hp.dim == dim == kpar_dimension_formula(n)
    assert closure_oracle_dim(GroupTable.cyclic(n), QQ) == dim
    assert hp.base.algebra.dim == 2 ** (n - 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("f", [QQ, F2])
def test_relations_and_base_properties(n, f):
    checks = validate_hpar(kpar(n, f))
    assert all_passed(checks), [c for c in checks if not c.passed]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_isomorphism_with_smash_over_base(n):
    ok, hom, checks = theorem48_isomorphism_check(kpar(n))
    assert ok, [c for c in checks if not c.passed]


def test_klein_four_group():
    from parhopf.hpar import build_kpar_group
    hp = build_kpar_group(GroupTable.klein(), QQ)
    assert hp.base.algebra.dim == 8
    assert all_passed(validate_hpar(hp))


def test_presentation_accepts_the_true_model():
    hp = kpar(2)
    A = hp.algebra
    model = from_presentation(A.dim, A.table, A.unit, hp.bracket, hp.hopf)
    assert model.dim == 3


def test_corrupted_constant_names_relation_five():
    hp = kpar(2)
    A = hp.algebra
    t = copy.deepcopy(A.table)
    t[0][2] = {0: 1, 2: 1}
    with pytest.raises(AxiomError) as err:
        from_presentation(A.dim, t, A.unit, hp.bracket, hp.hopf)
    assert "relation (5)" in str(err.value)
    assert "relation (5)" in [name for name, _ in err.value.failed]


def test_involution_is_an_anti_automorphism():
    hp = kpar(3)
    inv = hp.involution
    A = hp.algebra
    for i in range(A.dim):
        for j in range(A.dim):
            assert inv.apply(A.table[i][j]) == A.mul(inv.columns[j], inv.columns[i])
