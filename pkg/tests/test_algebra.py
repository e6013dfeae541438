import pytest

from parhopf.algebra import (
    ModuleData, bimodule_to_left_env, commutator_quotient, dual_numbers, enveloping, field_algebra, hom_space,
    matrix_algebra, primitive_idempotents, product_algebra, regular_bimodule, regular_left, regular_right,
    separability_idempotent, tensor_over_subalgebra,
)
from parhopf.linalg import F2, F3, QQ

from conftest import kpar


@pytest.mark.parametrize("f", [QQ, F2, F3])
def test_standard_algebras_are_associative(f):
    for a in (field_algebra(f), product_algebra(f, 3), matrix_algebra(f, 2), dual_numbers(f)):
        a.validate()
        env = enveloping(a)
        assert env.dim == a.dim ** 2


def test_regular_bimodule_validates():
    m = regular_bimodule(matrix_algebra(QQ, 2))
    assert m.is_bimodule and m.dim == 4


def test_b_tensor_over_b_is_identity():
    hp = kpar(3)
    B = hp.base.algebra
    t = tensor_over_subalgebra(regular_right(B), regular_left(B), B.gens())
    assert t.dim == B.dim


def test_commutator_quotient_dims():
    # M/[A,M] for the regular bimodule is A/[A,A]
    assert commutator_quotient(matrix_algebra(QQ, 2), regular_bimodule(matrix_algebra(QQ, 2))).dim == 1
    assert commutator_quotient(dual_numbers(QQ), regular_bimodule(dual_numbers(QQ))).dim == 2


def test_hom_space_of_regular_modules_is_the_algebra():
    a = dual_numbers(QQ)
    assert hom_space(regular_left(a), regular_left(a)).dim == a.dim


def test_bimodule_endomorphisms_are_the_center():
    a = matrix_algebra(QQ, 2)
    env = enveloping(a)
    reg = bimodule_to_left_env(regular_bimodule(a), env)
    assert hom_space(reg, reg).dim == 1


@pytest.mark.parametrize("f", [QQ, F2])
def test_separability(f):
    assert separability_idempotent(matrix_algebra(f, 2)) is not None
    assert separability_idempotent(product_algebra(f, 2)) is not None
    assert separability_idempotent(dual_numbers(f)) is None


def test_primitive_idempotents_of_base_algebras():
    for n in (2, 3, 4):
        B = kpar(n).base.algebra
        eps = primitive_idempotents(B)
        assert len(eps) == B.dim
        for i, e in enumerate(eps):
            for j, g in enumerate(eps):
                assert B.mul(e, g) == (e if i == j else {})


def test_primitive_idempotents_reject_non_split():
    with pytest.raises(ValueError):
        primitive_idempotents(dual_numbers(QQ))


def test_bad_module_is_rejected():
    from parhopf.linalg import SparseMat
    a = dual_numbers(QQ)
    with pytest.raises(Exception):
        ModuleData(1, left_alg=a, left=[SparseMat.identity(QQ, 1), SparseMat.identity(QQ, 1)])
