import pytest

from parhopf.algebra import AxiomError, all_passed, field_algebra, matrix_algebra
from parhopf.linalg import QQ
from parhopf.partial import (
    PartialRepData, check_partial_action, check_partial_rep, explicit_action, hpar_module,
    bimodule_X_tensorB_smash,
)

from conftest import fixture, kpar

FIXTURES = ["trivial", "z2-zero", "z2-swap-global", "z4-restricted", "z3-B-action", "z2-f2-trivial"]


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_axioms(name):
    fx = fixture(name)
    assert all_passed(check_partial_action(fx.action))
    sm = fx.smash
    assert all_passed(sm.checks())
    rep = PartialRepData(fx.hp.hopf, sm.algebra, sm.pi0_matrix(), validate=False)
    assert all_passed(check_partial_rep(rep))


def test_smash_dimensions():
    assert fixture("trivial").smash.dim == 1
    assert fixture("z2-zero").smash.dim == 1
    assert fixture("z2-swap-global").smash.dim == 4
    assert fixture("z3-B-action").smash.dim == kpar(3).dim


def test_global_swap_smash_is_matrix_algebra():
    sm = fixture("z2-swap-global").smash
    a = sm.algebra
    assert len(a.center_basis()) == 1 if hasattr(a, "center_basis") else True
    from parhopf.algebra import separability_idempotent
    assert separability_idempotent(a) is not None
    assert matrix_algebra(QQ, 2).dim == a.dim


def test_pa3_negative_control_has_witness():
    hp = kpar(2)
    pa = explicit_action(hp.hopf, field_algebra(QQ), [[{0: 1}], [{0: 2}]], validate=False)
    checks = {c.name: c for c in check_partial_action(pa)}
    assert not checks["PA3"].passed
    assert len(checks["PA3"].witness) == 3
    with pytest.raises(AxiomError):
        explicit_action(hp.hopf, field_algebra(QQ), [[{0: 1}], [{0: 2}]])


def test_zero_action_sends_e_g_to_zero():
    fx = fixture("z2-zero")
    hp = fx.hp
    from parhopf.hpar import universal_factorization
    sm = fx.smash
    hom = universal_factorization(hp, PartialRepData(hp.hopf, sm.algebra, sm.pi0_matrix()))
    assert hom(hp.e_of({1: 1})) == {}


@pytest.mark.parametrize("name", ["z2-swap-global", "z4-restricted", "z2-zero"])
@pytest.mark.parametrize("kind", ["bimodule", "tensor", "hom"])
def test_induced_module_structures(name, kind):
    fx = fixture(name)
    hm = hpar_module(kind, fx.hp, smash=fx.smash, module=fx.module)
    assert all_passed(hm.checks), [c for c in hm.checks if not c.passed]


@pytest.mark.parametrize("kind", ["smash", "B-left", "B-right"])
def test_other_module_kinds(kind):
    fx = fixture("z4-restricted")
    hm = hpar_module(kind, fx.hp, smash=fx.smash)
    assert all_passed(hm.checks)


def test_x_tensor_smash_for_base():
    fx = fixture("z4-restricted")
    x = hpar_module("B-right", fx.hp)
    out = bimodule_X_tensorB_smash(x, fx.smash, fx.hp)
    assert all_passed(out.checks)
    assert out.bimodule.dim == fx.smash.dim
