"""Finite-dimensional associative algebras given by structure constants.

Everything is basis-explicit.  Tensor products index the pair ``(i, j)`` as
``i * dim_right + j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Sequence

from .linalg import (
    Coordinates,
    Echelon,
    FieldSpec,
    Quotient,
    SparseMat,
    Subspace,
    kernel,
    quotient_from_echelon,
    solve,
    vadd,
    vlincomb,
)


class AxiomError(ValueError):
    """An axiom failed; ``axiom`` names it and ``witness`` is the first bad tuple."""

    def __init__(self, axiom: str, witness=None, detail: str = ""):
        self.axiom = axiom
        self.witness = witness
        msg = f"{axiom} fails"
        if witness is not None:
            msg += f" at {witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class FiniteAlgebra:
    """An associative unital algebra; ``table[i][j]`` is the product of basis i and j."""

    def __init__(self, field: FieldSpec, dim: int, table, unit: dict, name: str = "",
                 generators: Sequence[dict] | None = None, validate: bool = True):
        self.field = field
        self.dim = dim
        self.table = [[{k: field(x) for k, x in table[i][j].items() if field(x)} for j in range(dim)]
                      for i in range(dim)]
        self.unit = {k: field(x) for k, x in unit.items() if field(x)}
        self.name = name
        self.generators = [dict(g) for g in generators] if generators is not None else None
        self._lm = None
        self._rm = None
        if validate:
            self.validate()

    # construction helpers
    @classmethod
    def from_dense(cls, field, dim, mult, unit, **kw):
        """``mult[i][j]`` is a coefficient list of length dim."""
        table = [[{k: x for k, x in enumerate(mult[i][j]) if x} for j in range(dim)] for i in range(dim)]
        return cls(field, dim, table, {k: x for k, x in enumerate(unit) if x}, **kw)

    def validate(self):
        n = self.dim
        for i in range(n):
            if self.mul(self.unit, {i: 1}) != {i: 1}:
                raise AxiomError("left unit", (i,))
            if self.mul({i: 1}, self.unit) != {i: 1}:
                raise AxiomError("right unit", (i,))
        t = self.table
        for i, j in product(range(n), repeat=2):
            ij = t[i][j]
            for k in range(n):
                lhs = self.mul(ij, {k: 1})
                rhs = self.mul({i: 1}, t[j][k])
                if lhs != rhs:
                    raise AxiomError("associativity", (i, j, k))

    # arithmetic
    def basis(self, i: int) -> dict:
        return {i: 1}

    @property
    def one(self) -> dict:
        return dict(self.unit)

    def mul(self, u: dict, v: dict) -> dict:
        f = self.field
        acc: dict = {}
        t = self.table
        for i, x in u.items():
            row = t[i]
            for j, y in v.items():
                e = row[j]
                if e:
                    vadd(f, acc, e, f.mul(x, y))
        return acc

    def mul_all(self, *elems: dict) -> dict:
        out = self.one
        for e in elems:
            out = self.mul(out, e)
        return out

    def add(self, u, v, c=1):
        return vadd(self.field, dict(u), v, c)

    def left_mult(self, u: dict) -> SparseMat:
        return SparseMat(self.field, self.dim, self.dim, [self.mul(u, {j: 1}) for j in range(self.dim)])

    def right_mult(self, u: dict) -> SparseMat:
        return SparseMat(self.field, self.dim, self.dim, [self.mul({j: 1}, u) for j in range(self.dim)])

    def left_mult_basis(self) -> list[SparseMat]:
        if self._lm is None:
            self._lm = [self.left_mult({i: 1}) for i in range(self.dim)]
        return self._lm

    def right_mult_basis(self) -> list[SparseMat]:
        if self._rm is None:
            self._rm = [self.right_mult({i: 1}) for i in range(self.dim)]
        return self._rm

    def gens(self) -> list[dict]:
        """Algebra generators (the basis unless a smaller set was supplied)."""
        if self.generators is not None:
            return self.generators
        return [{i: 1} for i in range(self.dim)]

    def opposite(self) -> "FiniteAlgebra":
        n = self.dim
        table = [[self.table[j][i] for j in range(n)] for i in range(n)]
        return FiniteAlgebra(self.field, n, table, self.unit, name=f"{self.name}^op",
                             generators=self.generators, validate=False)

    def is_commutative(self) -> bool:
        n = self.dim
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i + 1, n))

    def is_central(self, u: dict) -> bool:
        return all(self.mul(u, {i: 1}) == self.mul({i: 1}, u) for i in range(self.dim))

    def is_idempotent(self, u: dict) -> bool:
        return self.mul(u, u) == u

    def structure_tensor(self):
        return [[sorted(self.table[i][j].items()) for j in range(self.dim)] for i in range(self.dim)]

    def __repr__(self):
        return f"FiniteAlgebra({self.name or '?'}, dim={self.dim}, {self.field.name})"


def tensor_vec(u: dict, v: dict, dim_v: int, field: FieldSpec) -> dict:
    out = {}
    for i, x in u.items():
        base = i * dim_v
        for j, y in v.items():
            out[base + j] = field.mul(x, y)
    return out


def tensor_algebra(a: FiniteAlgebra, b: FiniteAlgebra, name: str = "", validate: bool = True) -> FiniteAlgebra:
    """a ⊗ b with the componentwise product."""
    f = a.field
    n, m = a.dim, b.dim
    table = [[None] * (n * m) for _ in range(n * m)]
    for i, j in product(range(n), range(m)):
        for k, l in product(range(n), range(m)):
            table[i * m + j][k * m + l] = tensor_vec(a.table[i][k], b.table[j][l], m, f)
    gens = None
    if a.generators is not None or b.generators is not None:
        gens = [tensor_vec(g, b.unit, m, f) for g in a.gens()] + [tensor_vec(a.unit, g, m, f) for g in b.gens()]
    return FiniteAlgebra(f, n * m, table, tensor_vec(a.unit, b.unit, m, f), name=name,
                         generators=gens, validate=validate)


def enveloping(a: FiniteAlgebra, validate: bool = True) -> FiniteAlgebra:
    """A ⊗ A^op, so (a⊗b)(c⊗d) = ac ⊗ db."""
    env = tensor_algebra(a, a.opposite(), name=f"{a.name}^e", validate=validate)
    if env.generators is None:
        n = a.dim
        env.generators = ([tensor_vec({i: 1}, a.unit, n, a.field) for i in range(n)]
                          + [tensor_vec(a.unit, {i: 1}, n, a.field) for i in range(n)])
    return env


# ---------------------------------------------------------------- modules

class ModuleData:
    """A left, right or bimodule given by one action matrix per basis element.

    ``left[i]`` is x -> a_i x and ``right[i]`` is x -> x a_i.
    """

    def __init__(self, dim: int, left_alg: FiniteAlgebra | None = None, left=None,
                 right_alg: FiniteAlgebra | None = None, right=None, name: str = "",
                 validate: bool = True):
        self.dim = dim
        self.left_alg = left_alg
        self.left = list(left) if left is not None else None
        self.right_alg = right_alg
        self.right = list(right) if right is not None else None
        self.name = name
        alg = left_alg or right_alg
        if alg is None:
            raise ValueError("a module needs at least one acting algebra")
        self.field = alg.field
        if validate:
            self.validate()

    @property
    def is_left(self):
        return self.left is not None

    @property
    def is_right(self):
        return self.right is not None

    @property
    def is_bimodule(self):
        return self.left is not None and self.right is not None

    def validate(self):
        if self.left is not None:
            _check_action(self.left_alg, self.left, self.dim, "left")
        if self.right is not None:
            _check_action(self.right_alg, self.right, self.dim, "right")
        if self.is_bimodule:
            for i, L in enumerate(self.left):
                for j, R in enumerate(self.right):
                    if L @ R != R @ L:
                        raise AxiomError("bimodule compatibility", (i, j))

    def left_matrix(self, u: dict) -> SparseMat:
        return _combine(self.field, self.dim, self.left, u)

    def right_matrix(self, u: dict) -> SparseMat:
        return _combine(self.field, self.dim, self.right, u)

    def act_left(self, u: dict, x: dict) -> dict:
        return vlincomb(self.field, ((c, self.left[i].apply(x)) for i, c in u.items()))

    def act_right(self, x: dict, u: dict) -> dict:
        return vlincomb(self.field, ((c, self.right[i].apply(x)) for i, c in u.items()))

    def left_gen_matrices(self) -> list[SparseMat]:
        return [self.left_matrix(g) for g in self.left_alg.gens()]

    def right_gen_matrices(self) -> list[SparseMat]:
        return [self.right_matrix(g) for g in self.right_alg.gens()]

    def __repr__(self):
        sides = "bi" if self.is_bimodule else ("left" if self.is_left else "right")
        return f"ModuleData({self.name or '?'}, {sides}, dim={self.dim})"


def _combine(field, dim, mats, u):
    cols = [{} for _ in range(dim)]
    for i, c in u.items():
        for j, col in enumerate(mats[i].columns):
            if col:
                vadd(field, cols[j], col, c)
    return SparseMat(field, dim, dim, cols)


def _check_action(alg: FiniteAlgebra, mats, dim, side):
    if len(mats) != alg.dim:
        raise ValueError(f"{side} action needs {alg.dim} matrices, got {len(mats)}")
    for m in mats:
        if (m.rows, m.cols) != (dim, dim):
            raise ValueError(f"{side} action matrix has shape {m.rows}x{m.cols}, expected {dim}x{dim}")
    ident = SparseMat.identity(alg.field, dim)
    if _combine(alg.field, dim, mats, alg.unit) != ident:
        raise AxiomError(f"{side} unit")
    for i, j in product(range(alg.dim), repeat=2):
        prod = _combine(alg.field, dim, mats, alg.table[i][j])
        comp = mats[i] @ mats[j] if side == "left" else mats[j] @ mats[i]
        if prod != comp:
            raise AxiomError(f"{side} module associativity", (i, j))


def regular_left(a: FiniteAlgebra) -> ModuleData:
    return ModuleData(a.dim, left_alg=a, left=a.left_mult_basis(), name=f"{a.name} (left regular)", validate=False)


def regular_right(a: FiniteAlgebra) -> ModuleData:
    return ModuleData(a.dim, right_alg=a, right=a.right_mult_basis(), name=f"{a.name} (right regular)", validate=False)


def regular_bimodule(a: FiniteAlgebra) -> ModuleData:
    return ModuleData(a.dim, left_alg=a, left=a.left_mult_basis(), right_alg=a, right=a.right_mult_basis(),
                      name=f"{a.name} (regular)", validate=False)


def one_sided(m: ModuleData, side: str) -> ModuleData:
    if side == "left":
        return ModuleData(m.dim, left_alg=m.left_alg, left=m.left, name=m.name, validate=False)
    return ModuleData(m.dim, right_alg=m.right_alg, right=m.right, name=m.name, validate=False)


def restrict_module(m: ModuleData, hom: "AlgebraHom", side: str = "left") -> ModuleData:
    """Pull a module back along an algebra map ``hom: R -> S``."""
    mats = []
    for i in range(hom.source.dim):
        img = hom.matrix.columns[i]
        mats.append(m.left_matrix(img) if side == "left" else m.right_matrix(img))
    if side == "left":
        return ModuleData(m.dim, left_alg=hom.source, left=mats, name=m.name, validate=False)
    return ModuleData(m.dim, right_alg=hom.source, right=mats, name=m.name, validate=False)


def bimodule_to_left_env(m: ModuleData, env: FiniteAlgebra | None = None) -> ModuleData:
    """(a⊗b)·x = a·x·b as a left module over A^e."""
    if not m.is_bimodule or m.left_alg.dim != m.right_alg.dim:
        raise ValueError("need a bimodule over a single algebra")
    a = m.left_alg
    env = env or enveloping(a)
    n = a.dim
    mats = [m.left[i] @ m.right[j] for i in range(n) for j in range(n)]
    return ModuleData(m.dim, left_alg=env, left=mats, name=f"{m.name} over env", validate=False)


def bimodule_to_right_env(m: ModuleData, env: FiniteAlgebra | None = None) -> ModuleData:
    """x·(a⊗b) = b·x·a as a right module over A^e."""
    if not m.is_bimodule:
        raise ValueError("need a bimodule")
    a = m.left_alg
    env = env or enveloping(a)
    n = a.dim
    mats = [m.left[j] @ m.right[i] for i in range(n) for j in range(n)]
    return ModuleData(m.dim, right_alg=env, right=mats, name=f"{m.name} over env", validate=False)


# ---------------------------------------------------------------- homs

class AlgebraHom:
    def __init__(self, source: FiniteAlgebra, target: FiniteAlgebra, matrix: SparseMat, validate: bool = True):
        if (matrix.rows, matrix.cols) != (target.dim, source.dim):
            raise ValueError("hom matrix has the wrong shape")
        self.source = source
        self.target = target
        self.matrix = matrix
        if validate:
            self.validate()

    def __call__(self, u: dict) -> dict:
        return self.matrix.apply(u)

    def validate(self):
        if self(self.source.unit) != self.target.unit:
            raise AxiomError("unit preservation")
        s, t = self.source, self.target
        imgs = self.matrix.columns
        for i, j in product(range(s.dim), repeat=2):
            if self(s.table[i][j]) != t.mul(imgs[i], imgs[j]):
                raise AxiomError("multiplicativity", (i, j))

    def is_bijective(self) -> bool:
        from .linalg import rank
        return self.source.dim == self.target.dim and rank(self.matrix) == self.source.dim


# ---------------------------------------------------------------- tensor and hom

@dataclass
class TensorProduct:
    """x ⊗_R y as a quotient of the plain tensor product."""

    left_dim: int
    right_dim: int
    quotient: Quotient

    @property
    def dim(self):
        return self.quotient.dim

    @property
    def projection(self):
        return self.quotient.projection

    @property
    def section(self):
        return self.quotient.section

    def index(self, i: int, j: int) -> int:
        return i * self.right_dim + j

    def pure(self, u: dict, v: dict, field: FieldSpec) -> dict:
        """Class of u ⊗ v."""
        return self.projection.apply(tensor_vec(u, v, self.right_dim, field))

    def lift(self, z: dict) -> dict:
        return self.section.apply(z)


def tensor_relations(x: ModuleData, y: ModuleData, gens: Sequence[dict] | None = None):
    """Vectors x·r⊗y − x⊗r·y spanning the coequalizer kernel."""
    if x.right_alg is None or y.left_alg is None:
        raise ValueError("need a right module and a left module")
    if x.right_alg is not y.left_alg and x.right_alg.dim != y.left_alg.dim:
        raise ValueError("algebra mismatch")
    f = x.field
    alg = x.right_alg
    gens = alg.gens() if gens is None else gens
    dy = y.dim
    for g in gens:
        R = x.right_matrix(g)
        L = y.left_matrix(g)
        Lrows = L.columns
        for i in range(x.dim):
            xi_r = R.columns[i]
            for j in range(dy):
                v: dict = {}
                for k, c in xi_r.items():
                    vadd(f, v, {k * dy + j: c})
                for l, c in Lrows[j].items():
                    vadd(f, v, {i * dy + l: c}, -1)
                if v:
                    yield v


def tensor_over_subalgebra(x: ModuleData, y: ModuleData, gens: Sequence[dict] | None = None) -> TensorProduct:
    f = x.field
    ech = Echelon(f)
    for v in tensor_relations(x, y, gens):
        ech.add(v)
    return TensorProduct(x.dim, y.dim, quotient_from_echelon(f, x.dim * y.dim, ech))


def tensor_of_maps(src: TensorProduct, tgt: TensorProduct, fmap: SparseMat, gmap: SparseMat) -> SparseMat:
    """The map induced by f ⊗ g between two tensor quotients."""
    from .linalg import kron
    return tgt.projection @ kron(fmap, gmap) @ src.section


@dataclass
class HomSpace:
    dim: int
    basis: list  # of SparseMat, each dim_y x dim_x


def intertwiner_kernel(field, dx: int, dy: int, pairs) -> Subspace:
    """Matrices F (dy x dx, vectorized row major) with F X = Y F for each (X, Y)."""
    rows = []
    for X, Y in pairs:
        # (F X)[i, j] = sum_k F[i, k] X[k, j];  (Y F)[i, j] = sum_k Y[i, k] F[k, j]
        Xcols = X.columns
        Yrows = Y.row_dicts()
        for i in range(dy):
            for j in range(dx):
                r: dict = {}
                for k, c in Xcols[j].items():
                    vadd(field, r, {i * dx + k: c})
                for k, c in Yrows[i].items():
                    vadd(field, r, {k * dx + j: c}, -1)
                if r:
                    rows.append(r)
    cons = SparseMat.from_columns(field, dx * dy, rows).transpose() if rows else SparseMat(field, 0, dx * dy)
    return kernel(cons)


def vec_to_matrix(field, v: dict, dx: int, dy: int) -> SparseMat:
    cols = [{} for _ in range(dx)]
    for idx, c in v.items():
        i, k = divmod(idx, dx)
        cols[k][i] = c
    return SparseMat(field, dy, dx, cols)


def hom_space(x: ModuleData, y: ModuleData, side: str = "left") -> HomSpace:
    """Module maps x -> y commuting with the action on ``side``."""
    if side == "left":
        if x.left_alg is None or y.left_alg is None or x.left_alg.dim != y.left_alg.dim:
            raise ValueError("algebra mismatch")
        pairs = list(zip(x.left_gen_matrices(), y.left_gen_matrices()))
    else:
        if x.right_alg is None or y.right_alg is None or x.right_alg.dim != y.right_alg.dim:
            raise ValueError("algebra mismatch")
        pairs = list(zip(x.right_gen_matrices(), y.right_gen_matrices()))
    f = x.field
    ker = intertwiner_kernel(f, x.dim, y.dim, pairs)
    return HomSpace(ker.dim, [vec_to_matrix(f, v, x.dim, y.dim) for v in ker.vectors()])


def commutator_quotient(a: FiniteAlgebra, m: ModuleData) -> Quotient:
    """M / [A, M]."""
    if not m.is_bimodule:
        raise ValueError("commutator quotient needs a bimodule")
    f = a.field
    ech = Echelon(f)
    for g in a.gens():
        L = m.left_matrix(g)
        R = m.right_matrix(g)
        D = L - R
        for col in D.columns:
            if col:
                ech.add(col)
    return quotient_from_echelon(f, m.dim, ech)


def primitive_idempotents(a: FiniteAlgebra) -> list[dict]:
    """Complete orthogonal primitive idempotents of a split commutative algebra
    generated by idempotents (such as B).  Raises ValueError otherwise."""
    f = a.field
    gens = a.gens()
    if not a.is_commutative() or not all(a.is_idempotent(g) for g in gens):
        raise ValueError("need a commutative algebra generated by idempotents")
    parts = [dict(a.unit)]
    for g in gens:
        comp = vadd(f, dict(a.unit), g, -1)
        nxt = []
        for u in parts:
            for v in (a.mul(u, g), a.mul(u, comp)):
                if v:
                    nxt.append(v)
        parts = nxt
    if len(parts) != a.dim:
        raise ValueError("algebra is not split semisimple over its idempotent generators")
    return parts


def separability_idempotent(a: FiniteAlgebra) -> dict | None:
    """e in A⊗A with m(e) = 1 and (x⊗1)e = e(1⊗x), or None."""
    f = a.field
    n = a.dim
    N = n * n
    # unknown coefficients e_{kl} at index k*n + l
    rows: list[dict] = []
    rhs: list = []
    # multiplication condition
    for t in range(n):
        r = {}
        for k in range(n):
            for l in range(n):
                c = a.table[k][l].get(t)
                if c:
                    r[k * n + l] = c
        rows.append(r)
        rhs.append(a.unit.get(t, 0))
    for x in range(n):
        # coefficient of basis (s, t) in (x a_k) ⊗ a_l - a_k ⊗ (a_l x)
        cons: dict[int, dict] = {}
        for k in range(n):
            for l in range(n):
                var = k * n + l
                for s, c in a.table[x][k].items():
                    vadd(f, cons.setdefault(s * n + l, {}), {var: c})
                for t, c in a.table[l][x].items():
                    vadd(f, cons.setdefault(k * n + t, {}), {var: c}, -1)
        for key in sorted(cons):
            if cons[key]:
                rows.append(cons[key])
                rhs.append(0)
    mat = SparseMat.from_columns(f, N, rows).transpose()
    return solve(mat, rhs)


@dataclass
class Subalgebra:
    space: Subspace
    algebra: FiniteAlgebra
    inclusion: AlgebraHom
    coords: Coordinates = dc_field(repr=False)


def subalgebra_generated(a: FiniteAlgebra, gens: Sequence[dict], name: str = "", max_iter: int = 64) -> Subalgebra:
    """Smallest unital subalgebra containing ``gens``."""
    f = a.field
    ech = Echelon(f)
    basis: list[dict] = []
    for v in [a.unit] + [dict(g) for g in gens]:
        if v and ech.add(v):
            basis.append(dict(v))
    frontier = list(basis)
    for _ in range(max_iter):
        new = []
        for v in frontier:
            for g in gens:
                w = a.mul(v, g)
                if w and ech.add(w):
                    new.append(w)
        if not new:
            break
        basis.extend(new)
        frontier = new
    else:
        raise RuntimeError(f"subalgebra closure did not stabilize in {max_iter} rounds")
    coords = Coordinates(f, a.dim, basis)
    k = len(basis)
    table = [[coords(a.mul(basis[i], basis[j]), check=True) for j in range(k)] for i in range(k)]
    sub = FiniteAlgebra(f, k, table, coords(a.unit), name=name,
                        generators=[coords(g) for g in gens])
    inc = AlgebraHom(sub, a, SparseMat.from_columns(f, a.dim, basis))
    return Subalgebra(Subspace(a.dim, SparseMat.from_columns(f, a.dim, basis)), sub, inc, coords)


# ---------------------------------------------------------------- small algebras

def field_algebra(f: FieldSpec) -> FiniteAlgebra:
    return FiniteAlgebra(f, 1, [[{0: 1}]], {0: 1}, name="K")


def product_algebra(f: FieldSpec, n: int) -> FiniteAlgebra:
    """K^n with orthogonal idempotents e_1..e_n."""
    table = [[({i: 1} if i == j else {}) for j in range(n)] for i in range(n)]
    return FiniteAlgebra(f, n, table, {i: 1 for i in range(n)}, name=f"K^{n}")


def matrix_algebra(f: FieldSpec, n: int) -> FiniteAlgebra:
    """M_n(K) on matrix units, E_ij at index i*n + j."""
    N = n * n
    table = [[{} for _ in range(N)] for _ in range(N)]
    for i, j, k, l in product(range(n), repeat=4):
        if j == k:
            table[i * n + j][k * n + l] = {i * n + l: 1}
    gens = [{i * n + i + 1: 1} for i in range(n - 1)] + [{(i + 1) * n + i: 1} for i in range(n - 1)]
    return FiniteAlgebra(f, N, table, {i * n + i: 1 for i in range(n)}, name=f"M{n}",
                         generators=gens if n > 1 else None)


def dual_numbers(f: FieldSpec) -> FiniteAlgebra:
    """K[t]/(t^2) on the basis 1, t."""
    table = [[{0: 1}, {1: 1}], [{1: 1}, {}]]
    return FiniteAlgebra(f, 2, table, {0: 1}, name="K[t]/t^2")


@dataclass
class Check:
    """One named pass/fail line of a validator report."""

    name: str
    passed: bool
    witness: object = None

    def as_json(self):
        out = {"name": self.name, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def all_passed(checks) -> bool:
    return all(c.passed for c in checks)
