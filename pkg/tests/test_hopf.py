import pytest

from parhopf.algebra import all_passed
from parhopf.hopf import GroupTable, HopfData, check_cocommutative, check_hopf, group_algebra
from parhopf.linalg import F2, QQ, SparseMat


@pytest.mark.parametrize("g", [GroupTable.cyclic(n) for n in (1, 2, 3, 4)] + [GroupTable.klein()])
@pytest.mark.parametrize("f", [QQ, F2])
def test_group_algebras_pass_every_hopf_check(g, f):
    h = group_algebra(g, f)
    checks = check_hopf(h)
    assert all_passed(checks), [c for c in checks if not c.passed]
    assert check_cocommutative(h)
    assert h.antipode @ h.antipode == SparseMat.identity(f, h.dim)


def test_corrupted_comultiplication_is_not_cocommutative():
    h = group_algebra(GroupTable.cyclic(3), QQ)
    cols = [dict(c) for c in h.comult.columns]
    cols[1] = {1 * 3 + 2: 1}  # Δ(g) = g ⊗ g²
    bad = HopfData(h.algebra, SparseMat(QQ, 9, 3, cols), h.counit, h.antipode, validate=False)
    assert not check_cocommutative(bad)
    failing = {c.name for c in check_hopf(bad) if not c.passed}
    assert {"cocommutativity", "counit"} <= failing


def test_group_table_validation():
    with pytest.raises(ValueError):
        GroupTable(2, ((0, 1), (1, 1)), (0, 1))


def test_group_table_json_roundtrip():
    g = GroupTable.cyclic(4)
    assert GroupTable.from_json(g.to_json()).mult == g.mult
