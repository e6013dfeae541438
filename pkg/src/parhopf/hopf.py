"""Hopf structures on finite-dimensional algebras and group algebras."""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

from .algebra import AxiomError, Check, FiniteAlgebra, all_passed, tensor_vec
from .linalg import FieldSpec, SparseMat, kron, vadd


@dataclass(frozen=True)
class GroupTable:
    order: int
    mult: tuple
    inverse: tuple
    identity: int = 0
    name: str = ""

    def __post_init__(self):
        n = self.order
        if len(self.mult) != n or any(len(r) != n for r in self.mult):
            raise ValueError("multiplication table must be order x order")
        if len(self.inverse) != n:
            raise ValueError("inverse list has the wrong length")
        e = self.identity
        if not 0 <= e < n:
            raise ValueError("identity out of range")
        for g in range(n):
            if sorted(self.mult[g]) != list(range(n)):
                raise ValueError(f"row {g} of the table is not a permutation")
            if self.mult[e][g] != g or self.mult[g][e] != g:
                raise ValueError(f"identity law fails at {g}")
            if self.mult[g][self.inverse[g]] != e or self.mult[self.inverse[g]][g] != e:
                raise ValueError(f"inverse law fails at {g}")
        for a, b, c in product(range(n), repeat=3):
            if self.mult[self.mult[a][b]][c] != self.mult[a][self.mult[b][c]]:
                raise ValueError(f"associativity fails at {(a, b, c)}")

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    @classmethod
    def cyclic(cls, n: int) -> "GroupTable":
        return cls(n, tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
                   tuple((-a) % n for a in range(n)), 0, name=f"Z{n}")

    @classmethod
    def klein(cls) -> "GroupTable":
        return cls(4, tuple(tuple(a ^ b for b in range(4)) for a in range(4)), (0, 1, 2, 3), 0, name="V4")

    @classmethod
    def from_json(cls, data) -> "GroupTable":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["order"]), tuple(tuple(int(x) for x in r) for r in data["mult"]),
                   tuple(int(x) for x in data["inverse"]), int(data.get("identity", 0)),
                   name=str(data.get("name", "")))

    def to_json(self):
        return {"order": self.order, "identity": self.identity,
                "mult": [list(r) for r in self.mult], "inverse": list(self.inverse)}


class HopfData:
    """(Δ, ε, S) on an algebra.  ``comult`` is dim² x dim, ``counit`` maps index -> scalar."""

    def __init__(self, algebra: FiniteAlgebra, comult: SparseMat, counit: dict, antipode: SparseMat,
                 name: str = "", validate: bool = True):
        n = algebra.dim
        if (comult.rows, comult.cols) != (n * n, n) or (antipode.rows, antipode.cols) != (n, n):
            raise ValueError("Hopf structure maps have the wrong shape")
        self.algebra = algebra
        self.field = algebra.field
        self.dim = n
        self.comult = comult
        self.counit = {k: algebra.field(v) for k, v in counit.items() if algebra.field(v)}
        self.antipode = antipode
        self.name = name or algebra.name
        self.group: GroupTable | None = None
        if validate:
            failed = [c for c in check_hopf(self) if not c.passed]
            if failed:
                raise AxiomError(failed[0].name, failed[0].witness)

    # Sweedler notation helpers
    def delta(self, u: dict) -> dict:
        return self.comult.apply(u)

    def eps(self, u: dict):
        f = self.field
        s = 0
        for i, x in u.items():
            c = self.counit.get(i)
            if c:
                s = f.add(s, f.mul(x, c))
        return s

    def S(self, u: dict) -> dict:
        return self.antipode.apply(u)

    def sweedler(self, i: int) -> list[tuple]:
        """Δ(basis i) as a sorted list of (first, second, coefficient)."""
        n = self.dim
        return sorted((k // n, k % n, c) for k, c in self.comult.columns[i].items())

    def unit_vec(self) -> dict:
        return self.algebra.one

    def is_grouplike_basis(self) -> bool:
        n = self.dim
        return all(self.comult.columns[i] == {i * n + i: 1} for i in range(n))

    def __repr__(self):
        return f"HopfData({self.name}, dim={self.dim}, {self.field.name})"


def flip_matrix(field: FieldSpec, n: int, m: int | None = None) -> SparseMat:
    """τ: x⊗y -> y⊗x on K^n ⊗ K^m."""
    m = n if m is None else m
    cols = [None] * (n * m)
    for i in range(n):
        for j in range(m):
            cols[i * m + j] = {j * n + i: 1}
    return SparseMat(field, n * m, n * m, cols)


def check_cocommutative(h: HopfData) -> bool:
    return flip_matrix(h.field, h.dim) @ h.comult == h.comult


def iterated_comult(h: HopfData, n: int, left: bool = True) -> SparseMat:
    """Δ^{(n)}: H -> H^{⊗n}; ``left`` chooses which tensor factor is split at each step."""
    if n < 1:
        raise ValueError("n must be at least 1")
    f = h.field
    d = h.dim
    out = SparseMat.identity(f, d)
    for k in range(1, n):
        # out: H -> H^{⊗k}; split the first or the last factor
        if left:
            step = kron(h.comult, SparseMat.identity(f, d ** (k - 1)))
        else:
            step = kron(SparseMat.identity(f, d ** (k - 1)), h.comult)
        out = step @ out
    return out


def check_hopf(h: HopfData) -> list[Check]:
    """Every Hopf axiom on basis elements, plus cocommutativity and S² = id."""
    a = h.algebra
    f = h.field
    n = h.dim
    I = SparseMat.identity(f, n)
    checks = []

    def first_bad(pred):
        for i in range(n):
            if not pred(i):
                return i
        return None

    # coassociativity
    lhs = kron(h.comult, I) @ h.comult
    rhs = kron(I, h.comult) @ h.comult
    bad = next((i for i in range(n) if lhs.columns[i] != rhs.columns[i]), None)
    checks.append(Check("coassociativity", bad is None, None if bad is None else [bad]))

    # counit: (ε⊗id)Δ = id = (id⊗ε)Δ
    def counit_ok(i):
        left: dict = {}
        right: dict = {}
        for x, y, c in h.sweedler(i):
            ex, ey = h.counit.get(x, 0), h.counit.get(y, 0)
            if ex:
                vadd(f, left, {y: f.mul(c, ex)})
            if ey:
                vadd(f, right, {x: f.mul(c, ey)})
        return left == {i: 1} and right == {i: 1}
    bad = first_bad(counit_ok)
    checks.append(Check("counit", bad is None, None if bad is None else [bad]))

    # antipode: m(S⊗id)Δ = ε1 = m(id⊗S)Δ
    def antipode_ok(i):
        l: dict = {}
        r: dict = {}
        for x, y, c in h.sweedler(i):
            vadd(f, l, a.mul(h.S({x: 1}), {y: 1}), c)
            vadd(f, r, a.mul({x: 1}, h.S({y: 1})), c)
        e = h.counit.get(i, 0)
        target = {k: f.mul(v, e) for k, v in a.unit.items()} if e else {}
        return l == target and r == target
    bad = first_bad(antipode_ok)
    checks.append(Check("antipode", bad is None, None if bad is None else [bad]))

    # Δ and ε are algebra maps
    bad = None
    if h.delta(a.unit) != tensor_vec(a.unit, a.unit, n, f):
        bad = ["unit"]
    else:
        for i, j in product(range(n), repeat=2):
            lhs_v = h.delta(a.table[i][j])
            di, dj = h.comult.columns[i], h.comult.columns[j]
            rhs_v: dict = {}
            for p, x in di.items():
                p1, p2 = divmod(p, n)
                for q, y in dj.items():
                    q1, q2 = divmod(q, n)
                    vadd(f, rhs_v, tensor_vec(a.table[p1][q1], a.table[p2][q2], n, f), f.mul(x, y))
            if lhs_v != rhs_v:
                bad = [i, j]
                break
    checks.append(Check("comultiplication is multiplicative", bad is None, bad))

    bad = None
    if h.eps(a.unit) != 1:
        bad = ["unit"]
    else:
        for i, j in product(range(n), repeat=2):
            if h.eps(a.table[i][j]) != f.mul(h.counit.get(i, 0), h.counit.get(j, 0)):
                bad = [i, j]
                break
    checks.append(Check("counit is multiplicative", bad is None, bad))

    flipped = flip_matrix(f, n) @ h.comult
    bad = first_bad(lambda i: flipped.columns[i] == h.comult.columns[i])
    checks.append(Check("cocommutativity", bad is None, None if bad is None else [bad]))
    ss = h.antipode @ h.antipode
    bad = first_bad(lambda i: ss.columns[i] == I.columns[i])
    checks.append(Check("antipode is an involution", bad is None, None if bad is None else [bad]))
    bad = first_bad(lambda i: h.eps(h.S({i: 1})) == h.counit.get(i, 0))
    checks.append(Check("counit of antipode", bad is None, None if bad is None else [bad]))
    checks.append(Check("antipode of unit", h.S(a.unit) == a.unit))
    return checks


def group_algebra(g: GroupTable, f: FieldSpec) -> HopfData:
    """KG with Δg = g⊗g, ε(g) = 1, S(g) = g⁻¹."""
    n = g.order
    table = [[{g.mul(x, y): 1} for y in range(n)] for x in range(n)]
    alg = FiniteAlgebra(f, n, table, {g.identity: 1}, name=f"K{g.name or 'G'}")
    comult = SparseMat(f, n * n, n, [{x * n + x: 1} for x in range(n)])
    antipode = SparseMat(f, n, n, [{g.inv(x): 1} for x in range(n)])
    h = HopfData(alg, comult, {x: 1 for x in range(n)}, antipode, name=alg.name, validate=False)
    h.group = g
    failed = [c for c in check_hopf(h) if not c.passed]
    if failed:
        raise AxiomError(failed[0].name, failed[0].witness)
    return h


def hopf_ok(h: HopfData) -> bool:
    return all_passed(check_hopf(h))
