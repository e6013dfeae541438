"""Chain complexes and resolutions: bar constructions, the simplicial
resolution C'_n = H_par ⊗_B ... ⊗_B H_par of B, and injective resolutions.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Sequence

from .algebra import (
    Check,
    FiniteAlgebra,
    ModuleData,
    TensorProduct,
    tensor_over_subalgebra,
)
from .linalg import (
    FieldSpec,
    SparseMat,
    kron,
    quotient_by_vectors,
    rank,
    vadd,
    vlincomb,
)


# ---------------------------------------------------------------- complexes

class ChainComplex:
    """Spaces ``dims[n]`` for n = 0..top with differentials.

    Homological: ``diffs[n]`` maps degree n to n-1 (n >= 1).
    Cohomological: ``diffs[n]`` maps degree n to n+1 (n >= 0, n < top).
    """

    def __init__(self, field: FieldSpec, dims: Sequence[int], diffs: dict, direction: str = "homological",
                 name: str = ""):
        self.field = field
        self.dims = list(dims)
        self.diffs = dict(diffs)
        self.direction = direction
        self.name = name
        for n, d in self.diffs.items():
            src, tgt = (n, n - 1) if direction == "homological" else (n, n + 1)
            if (d.cols, d.rows) != (self.dims[src], self.dims[tgt]):
                raise ValueError(f"differential {n} has shape {d.rows}x{d.cols}, "
                                 f"expected {self.dims[tgt]}x{self.dims[src]}")

    @property
    def top(self):
        return len(self.dims) - 1

    def d_out(self, n):
        key = n if self.direction == "homological" else n
        return self.diffs.get(key)

    def d_in(self, n):
        key = n + 1 if self.direction == "homological" else n - 1
        return self.diffs.get(key)

    def square_zero(self) -> bool:
        for n, d in self.diffs.items():
            nxt = self.diffs.get(n - 1 if self.direction == "homological" else n + 1)
            if nxt is not None and not (nxt @ d).is_zero():
                return False
        return True

    def homology(self, n: int) -> int:
        dim = self.dims[n]
        out = self.d_out(n)
        inn = self.d_in(n)
        k = dim - (rank(out) if out is not None else 0)
        return k - (rank(inn) if inn is not None else 0)

    def homology_dims(self, up_to: int | None = None) -> list[int]:
        top = self.top if up_to is None else up_to
        return [self.homology(n) for n in range(top + 1)]


@dataclass
class Resolution:
    """A projective (homological) or injective (cohomological) resolution."""

    complex: ChainComplex
    augmentation: SparseMat  # P_0 -> M, or M -> I^0
    modules: list
    target_dim: int
    kind: str = "projective"
    homotopy: list | None = None
    extra: dict = dc_field(default_factory=dict)

    @property
    def dims(self):
        return self.complex.dims

    @property
    def top(self):
        return self.complex.top


def validate_resolution(res: Resolution) -> dict:
    """Homology of the augmented complex in every degree that can be checked."""
    c = res.complex
    eps = res.augmentation
    dims = []
    if res.kind == "projective":
        dims.append(res.target_dim - rank(eps))  # cokernel of the augmentation
        for n in range(c.top):
            out = eps if n == 0 else c.diffs[n]
            k = c.dims[n] - rank(out)
            dims.append(k - rank(c.diffs[n + 1]))
        squares = all((eps @ c.diffs[1]).is_zero() for _ in [0]) if c.top >= 1 else True
    else:
        dims.append(res.target_dim - rank(eps))  # kernel of M -> I^0
        for n in range(c.top):
            inn = eps if n == 0 else c.diffs[n - 1]
            k = c.dims[n] - rank(c.diffs[n])
            dims.append(k - rank(inn))
        squares = (c.diffs[0] @ eps).is_zero() if c.top >= 1 else True
    return {"homology": dims, "exact": all(x == 0 for x in dims), "square_zero": squares and c.square_zero()}


def homotopy_checks(res: Resolution) -> list[Check]:
    """s∂ + ∂s = id in every degree where both sides are available."""
    if res.homotopy is None:
        return []
    c = res.complex
    s = res.homotopy  # s[0]: M -> P_0, s[q+1]: P_q -> P_{q+1}
    f = c.field
    out = []
    eps = res.augmentation
    out.append(Check("homotopy at M", eps @ s[0] == SparseMat.identity(f, res.target_dim)))
    for q in range(c.top):
        lhs = c.diffs[q + 1] @ s[q + 1]
        lhs = lhs + (s[0] @ eps if q == 0 else s[q] @ c.diffs[q])
        out.append(Check(f"homotopy in degree {q}", lhs == SparseMat.identity(f, c.dims[q])))
    return out


# ---------------------------------------------------------------- bar resolution

def _radix_index(digits, bases):
    idx = 0
    for dgt, b in zip(digits, bases):
        idx = idx * b + dgt
    return idx


class BarResolution(Resolution):
    pass


def bar_resolution(r: FiniteAlgebra, m: ModuleData, n: int, normalized: bool = True) -> Resolution:
    """R ⊗ R̄^{⊗q} ⊗ M with the standard differential, degrees 0..n.

    If ``m`` also carries a right action, the terms are bimodules (the right
    action sits on the M factor), which makes the two-sided bar resolution
    available as a special case.
    """
    f = r.field
    dr, dm = r.dim, m.dim
    if normalized:
        qt = quotient_by_vectors(f, dr, [r.unit])
        db = qt.dim
        lift = [qt.section.columns[i] for i in range(db)]
        proj = qt.projection
    else:
        db = dr
        lift = [{i: 1} for i in range(dr)]
        proj = SparseMat.identity(f, dr)
    lm = [m.left_matrix({i: 1}) for i in range(dr)]
    dims = [dr * db ** q * dm for q in range(n + 1)]

    def index(r0, bars, x):
        return _radix_index((r0,) + tuple(bars) + (x,), (dr,) + (db,) * len(bars) + (dm,))

    diffs = {}
    for q in range(1, n + 1):
        cols = []
        for tup in product(range(dr), *([range(db)] * q), range(dm)):
            r0, bars, x = tup[0], tup[1:-1], tup[-1]
            v: dict = {}
            # r0 * b1
            for k, c in r.mul({r0: 1}, lift[bars[0]]).items():
                vadd(f, v, {index(k, bars[1:], x): c})
            for i in range(1, q):
                prodv = proj.apply(r.mul(lift[bars[i - 1]], lift[bars[i]]))
                sign = -1 if i % 2 else 1
                for k, c in prodv.items():
                    nb = bars[:i - 1] + (k,) + bars[i + 1:]
                    vadd(f, v, {index(r0, nb, x): c}, sign)
            sign = -1 if q % 2 else 1
            act = vlincomb(f, ((c, lm[j].columns[x]) for j, c in lift[bars[-1]].items()))
            for k, c in act.items():
                vadd(f, v, {index(r0, bars[:-1], k): c}, sign)
            cols.append(v)
        diffs[q] = SparseMat(f, dims[q - 1], dims[q], cols)
    eps_cols = []
    for r0 in range(dr):
        for x in range(dm):
            eps_cols.append(lm[r0].columns[x])
    eps = SparseMat(f, dm, dims[0], eps_cols)
    # contracting homotopy
    hom = [SparseMat(f, dims[0], dm, [{index(k, (), x): c for k, c in r.unit.items()} for x in range(dm)])]
    for q in range(n):
        cols = []
        for tup in product(range(dr), *([range(db)] * q), range(dm)):
            r0, bars, x = tup[0], tup[1:-1], tup[-1]
            v: dict = {}
            for k, c in proj.columns[r0].items():
                for u, cu in r.unit.items():
                    vadd(f, v, {index(u, (k,) + tuple(bars), x): f.mul(c, cu)})
            cols.append(v)
        hom.append(SparseMat(f, dims[q + 1], dims[q], cols))
    cx = ChainComplex(f, dims, diffs, name=f"bar({r.name}, {m.name})")
    res = Resolution(cx, eps, [], dm, "projective", homotopy=hom)
    res.extra = {"ring": r, "module": m, "bar_dim": db, "normalized": normalized}
    return res


def bar_term_module(res: Resolution, q: int, with_right: bool = True) -> ModuleData:
    """Left R-module (and right module if M has one) structure on degree q."""
    r: FiniteAlgebra = res.extra["ring"]
    m: ModuleData = res.extra["module"]
    f = r.field
    db = res.extra["bar_dim"]
    mid = SparseMat.identity(f, db ** q * m.dim)
    left = [kron(lmat, mid) for lmat in r.left_mult_basis()]
    right = None
    if with_right and m.is_right:
        ident = SparseMat.identity(f, r.dim * db ** q)
        right = [kron(ident, rm) for rm in m.right]
    return ModuleData(res.dims[q], left_alg=r, left=left,
                      right_alg=m.right_alg if right is not None else None, right=right,
                      name=f"bar term {q}", validate=False)


# ---------------------------------------------------------------- injective resolutions

def _coinduce(r: FiniteAlgebra, dim_v: int, action_of=None):
    """Hom_K(R, V) on basis f_{s, v} (f(s) = v), index s * dim_v + v.

    (r·f)(s) = f(s r): r_i sends f_{s,v} to sum over t of [t r_i contains s] f_{t,v}.
    """
    f = r.field
    n = r.dim
    mats = []
    for i in range(n):
        cols = []
        for s in range(n):
            for v in range(dim_v):
                # (r_i · f_{s,v})(t) = f_{s,v}(t r_i) = coefficient of s in t r_i times v
                col = {}
                for t in range(n):
                    c = r.table[t][i].get(s)
                    if c:
                        col[t * dim_v + v] = c
                cols.append(col)
        mats.append(SparseMat(f, n * dim_v, n * dim_v, cols))
    return mats


def coinduced_injective_resolution(r: FiniteAlgebra, m: ModuleData, n: int) -> Resolution:
    """M -> Hom_K(R, M) -> Hom_K(R, coker) -> ..., degrees 0..n."""
    f = r.field
    dims = []
    diffs = {}
    modules = []
    cur = m
    proj_prev = None
    eps = None
    for q in range(n + 1):
        dv = cur.dim
        mats = _coinduce(r, dv)
        I = ModuleData(r.dim * dv, left_alg=r, left=mats, name=f"I^{q}", validate=False)
        # embedding x -> (s -> s·x)
        cols = []
        for x in range(dv):
            col = {}
            for s in range(r.dim):
                for v, c in cur.left_matrix({s: 1}).columns[x].items():
                    col[s * dv + v] = c
            cols.append(col)
        emb = SparseMat(f, I.dim, dv, cols)
        if q == 0:
            eps = emb
        else:
            diffs[q - 1] = emb @ proj_prev
        dims.append(I.dim)
        modules.append(I)
        qt = quotient_by_vectors(f, I.dim, emb.columns)
        # induced action on the cokernel
        cmats = [qt.projection @ a @ qt.section for a in mats]
        cur = ModuleData(qt.dim, left_alg=r, left=cmats, name=f"coker {q}", validate=False)
        proj_prev = qt.projection
    cx = ChainComplex(f, dims, diffs, direction="cohomological", name=f"coinduced({r.name}, {m.name})")
    res = Resolution(cx, eps, modules, m.dim, "injective")
    res.extra = {"ring": r, "module": m, "last_cokernel_dim": cur.dim}
    return res


def dual_bar_bimodule_resolution(lam: FiniteAlgebra, m: ModuleData, n: int) -> Resolution:
    """Injective bimodule coresolution I^q = Hom_K(Λ̄^{⊗q} ⊗ Λ, M).

    This is Hom over Λ (left) from the two-sided bar resolution into M, so

      (λ·f)(x ⊗ y) = f(x ⊗ yλ),   (f·μ)(x ⊗ y) = f(x ⊗ y)μ,
      (δf)(x_1..x_{q+1} ⊗ y) = x_1 f(x_2.. ⊗ y) + Σ (-1)^i f(..x_i x_{i+1}.. ⊗ y)
                                + (-1)^{q+1} f(x_1..x_q ⊗ x_{q+1} y).

    Each term is coinduced from a right Λ-module, hence injective whenever M
    is injective as a right Λ-module (e.g. Λ semisimple or M = Λ with Λ
    self-injective).
    """
    f = lam.field
    dl, dm = lam.dim, m.dim
    qt = quotient_by_vectors(f, dl, [lam.unit])
    db = qt.dim
    lift = [qt.section.columns[i] for i in range(db)]
    proj = qt.projection
    lm = [m.left_matrix({i: 1}) for i in range(dl)]
    # basis element (x_1..x_q, y, v): the map sending basis x⊗y to v, zero elsewhere
    dims = [db ** q * dl * dm for q in range(n + 1)]

    def idx(bars, y, v):
        return _radix_index(tuple(bars) + (y, v), (db,) * len(bars) + (dl, dm))

    # δ as a matrix: (δf)(x⊗y) for every basis input (x, y) of degree q+1
    diffs = {}
    for q in range(n):
        cols = [dict() for _ in range(dims[q])]
        # build δ^T row by row: evaluate δ(f_{b,y,v}) on inputs (x_1..x_{q+1}, y')
        for tup in product(*([range(db)] * (q + 1)), range(dl)):
            xs, y = tup[:-1], tup[-1]
            # contributions: list of (source basis (bars, yy), linear map on M applied to v, sign)
            # term 0: x_1 · f(x_2.. ⊗ y)
            terms = []
            terms.append((xs[1:], {y: 1}, ("left", lift[xs[0]]), 1))
            for i in range(1, q + 1):
                prodv = proj.apply(lam.mul(lift[xs[i - 1]], lift[xs[i]]))
                sign = -1 if i % 2 else 1
                for k, c in prodv.items():
                    terms.append((xs[:i - 1] + (k,) + xs[i + 1:], {y: 1}, None, f.mul(sign, c)))
            sign = -1 if (q + 1) % 2 else 1
            terms.append((xs[:-1], lam.mul(lift[xs[-1]], {y: 1}), None, sign))
            for bars, yvec, op, c in terms:
                for yy, cy in yvec.items():
                    for v in range(dm):
                        src = idx(bars, yy, v)
                        if op is None:
                            out = {v: 1}
                        else:
                            out = vlincomb(f, ((cc, lm[j].columns[v]) for j, cc in op[1].items()))
                        for w, cw in out.items():
                            tgt = idx(xs, y, w)
                            vadd(f, cols[src], {tgt: f.mul(f.mul(c, cy), cw)})
        diffs[q] = SparseMat(f, dims[q + 1], dims[q], cols)
    # augmentation m -> (y -> y·m)
    eps_cols = []
    for v in range(dm):
        col = {}
        for y in range(dl):
            for w, c in lm[y].columns[v].items():
                col[idx((), y, w)] = c
        eps_cols.append(col)
    eps = SparseMat(f, dims[0], dm, eps_cols)
    cx = ChainComplex(f, dims, diffs, direction="cohomological", name=f"dual bar({lam.name}, {m.name})")
    res = Resolution(cx, eps, [], dm, "injective")
    res.extra = {"ring": lam, "module": m, "bar_dim": db}
    return res


def dual_bar_term_module(res: Resolution, q: int) -> ModuleData:
    lam: FiniteAlgebra = res.extra["ring"]
    m: ModuleData = res.extra["module"]
    f = lam.field
    db = res.extra["bar_dim"]
    dl, dm = lam.dim, m.dim
    nb = db ** q
    left = []
    right = []
    for i in range(dl):
        # (λ_i f)(x⊗y) = f(x⊗ y λ_i): f_{x,y,v} goes to sum over y' with y' λ_i ∋ y
        cols = []
        rcols = []
        rmat = m.right_matrix({i: 1})
        for b in range(nb):
            for y in range(dl):
                for v in range(dm):
                    col = {}
                    for yy in range(dl):
                        c = lam.table[yy][i].get(y)
                        if c:
                            col[(b * dl + yy) * dm + v] = c
                    cols.append(col)
                    rcols.append({(b * dl + y) * dm + w: c for w, c in rmat.columns[v].items()})
        left.append(SparseMat(f, res.dims[q], res.dims[q], cols))
        right.append(SparseMat(f, res.dims[q], res.dims[q], rcols))
    return ModuleData(res.dims[q], left_alg=lam, left=left, right_alg=lam, right=right,
                      name=f"dual bar term {q}", validate=False)


# ---------------------------------------------------------------- C'_n for H_par

class CPrime:
    """C'_n = H_par ⊗_B ... ⊗_B H_par (n+1 factors) with face maps.

    Degree k is built as C'_{k-1} ⊗_B H_par.  A basis element of degree k
    lifts to a single pure tensor of H_par basis indices (sections of the
    quotients pick basis vectors), so all operations are done on tuples and
    projected back.
    """

    def __init__(self, hp, n: int):
        from .partial import b_left_matrix
        self.hp = hp
        self.field = f = hp.field
        self.D = hp.dim
        self.n = n
        A = hp.algebra
        B = hp.base
        self.B = B
        b_gens = B.algebra.gens()
        # H_par as a left B-module
        incl = B.inclusion.matrix.columns
        left_b = [A.left_mult(incl[j]) for j in range(B.algebra.dim)]
        hp_left_b = ModuleData(self.D, left_alg=B.algebra, left=left_b, validate=False)
        self.levels: list[TensorProduct | None] = [None]
        self.dims = [self.D]
        self._lift: list[list[tuple]] = [[(i,) for i in range(self.D)]]
        self._pure_cache: dict = {}
        for k in range(1, n + 1):
            prev_dim = self.dims[-1]
            # right B-action on C'_{k-1}: multiply the last factor
            right = []
            for j in range(B.algebra.dim):
                cols = []
                for t in range(prev_dim):
                    tup = self._lift[k - 1][t]
                    v = A.mul({tup[-1]: 1}, incl[j])
                    cols.append(self._project_comb(k - 1, tup[:-1], v))
                right.append(SparseMat(f, prev_dim, prev_dim, cols))
            xmod = ModuleData(prev_dim, right_alg=B.algebra, right=right, validate=False)
            T = tensor_over_subalgebra(xmod, hp_left_b, b_gens)
            self.levels.append(T)
            self.dims.append(T.dim)
            lifts = []
            for c in range(T.dim):
                sec = T.section.columns[c]
                (a, _), = sec.items()
                j, t = divmod(a, self.D)
                lifts.append(self._lift[k - 1][j] + (t,))
            self._lift.append(lifts)
        # ψ(x) = x ▷ 1_B, as an element of H_par
        bl = [b_left_matrix(hp, {h: 1}) for h in range(hp.hopf.dim)]
        from .hpar import extend_matrix_rep
        full = extend_matrix_rep(hp, bl)
        self.b_action = full
        one_b = B.algebra.unit
        self.psi_b = SparseMat(f, B.algebra.dim, self.D, [full[i].apply(one_b) for i in range(self.D)])
        self.psi_vec = [B.inclusion.matrix.apply(c) for c in self.psi_b.columns]

    def lift(self, k: int, i: int) -> tuple:
        return self._lift[k][i]

    def pure(self, tup: tuple) -> dict:
        """Class of the pure tensor of basis indices ``tup`` in C'_{len-1}."""
        key = tup
        c = self._pure_cache.get(key)
        if c is not None:
            return c
        k = len(tup) - 1
        if k == 0:
            res = {tup[0]: 1}
        else:
            prev = self.pure(tup[:-1])
            T = self.levels[k]
            cols = T.projection.columns
            res = {}
            D = self.D
            for j, x in prev.items():
                vadd(self.field, res, cols[j * D + tup[-1]], x)
        self._pure_cache[key] = res
        return res

    def _project_comb(self, k: int, prefix: tuple, last: dict) -> dict:
        out: dict = {}
        for t, c in last.items():
            vadd(self.field, out, self.pure(prefix + (t,)), c)
        return out

    def project_terms(self, terms) -> dict:
        """Sum of c * class(tup) over (c, tup)."""
        out: dict = {}
        for c, tup in terms:
            vadd(self.field, out, self.pure(tup), c)
        return out

    def _mul_terms(self, tup, i, c=1):
        """Terms of x_0 ⊗ .. ⊗ x_i x_{i+1} ⊗ .."""
        prodv = self.hp.algebra.table[tup[i]][tup[i + 1]]
        return [(self.field.mul(c, x), tup[:i] + (k,) + tup[i + 2:]) for k, x in prodv.items()]

    def face(self, n: int, i: int) -> SparseMat:
        """d_i: C'_n -> C'_{n-1}, n >= 1."""
        f = self.field
        A = self.hp.algebra
        cols = []
        for b in range(self.dims[n]):
            tup = self.lift(n, b)
            if i < n:
                terms = self._mul_terms(tup, i)
            else:
                v = A.mul({tup[n - 1]: 1}, self.psi_vec[tup[n]])
                terms = [(x, tup[:n - 1] + (k,)) for k, x in v.items()]
            cols.append(self.project_terms(terms))
        return SparseMat(f, self.dims[n - 1], self.dims[n], cols)

    def degeneracy(self, n: int, j: int) -> SparseMat:
        """s_j: C'_n -> C'_{n+1}, insert 1 after position j."""
        one = self.hp.algebra.unit
        cols = []
        for b in range(self.dims[n]):
            tup = self.lift(n, b)
            terms = [(c, tup[:j + 1] + (u,) + tup[j + 1:]) for u, c in one.items()]
            cols.append(self.project_terms(terms))
        return SparseMat(self.field, self.dims[n + 1], self.dims[n], cols)

    def homotopy(self, n: int) -> SparseMat:
        """s(x) = 1 ⊗ x: C'_n -> C'_{n+1}; n = -1 gives the inclusion B -> H_par."""
        if n == -1:
            return self.B.inclusion.matrix
        one = self.hp.algebra.unit
        cols = []
        for b in range(self.dims[n]):
            tup = self.lift(n, b)
            cols.append(self.project_terms([(c, (u,) + tup) for u, c in one.items()]))
        return SparseMat(self.field, self.dims[n + 1], self.dims[n], cols)

    def boundary(self, n: int) -> SparseMat:
        out = SparseMat(self.field, self.dims[n - 1], self.dims[n])
        for i in range(n + 1):
            d = self.face(n, i)
            out = out + (d if i % 2 == 0 else -d)
        return out

    def left_action(self, n: int, x: dict) -> SparseMat:
        """x ▷ (x_0 ⊗ ...) = x x_0 ⊗ ..."""
        A = self.hp.algebra
        cols = []
        for b in range(self.dims[n]):
            tup = self.lift(n, b)
            v = A.mul(x, {tup[0]: 1})
            cols.append(self.project_terms([(c, (k,) + tup[1:]) for k, c in v.items()]))
        return SparseMat(self.field, self.dims[n], self.dims[n], cols)

    def left_module(self, n: int) -> ModuleData:
        mats = [self.left_action(n, {i: 1}) for i in range(self.D)]
        return ModuleData(self.dims[n], left_alg=self.hp.algebra, left=mats, name=f"C'_{n}", validate=False)

    def right_module(self, n: int) -> ModuleData:
        """The twisted right structure x ◁ y = 𝒮(y) ▷ x."""
        inv = self.hp.involution
        mats = [self.left_action(n, inv.columns[i]) for i in range(self.D)]
        return ModuleData(self.dims[n], right_alg=self.hp.algebra, right=mats, name=f"C'_{n} (right)",
                          validate=False)


def cprime_resolution(hp, n: int, side: str = "left") -> Resolution:
    """The resolution C'_0 <- C'_1 <- ... <- C'_n of B."""
    cp = CPrime(hp, n)
    f = hp.field
    diffs = {k: cp.boundary(k) for k in range(1, n + 1)}
    cx = ChainComplex(f, cp.dims, diffs, name=f"C'({hp.name})")
    mods = [cp.left_module(k) if side == "left" else cp.right_module(k) for k in range(n + 1)]
    homs = [cp.homotopy(-1)] + [cp.homotopy(k) for k in range(n)]
    res = Resolution(cx, cp.psi_b, mods, hp.base.algebra.dim, "projective", homotopy=homs)
    res.extra = {"cprime": cp, "side": side}
    return res


def cprime_checks(hp, n: int, res: Resolution | None = None) -> list[Check]:
    """Simplicial identities, ∂² = 0, the homotopy identities and ker ψ = im ∂_1."""
    res = res or cprime_resolution(hp, n)
    cp: CPrime = res.extra["cprime"]
    f = hp.field
    out = []
    faces = {m: [cp.face(m, i) for i in range(m + 1)] for m in range(1, n + 1)}
    ok = True
    for m in range(2, n + 1):
        for i in range(m):
            for j in range(i + 1, m + 1):
                if faces[m - 1][i] @ faces[m][j] != faces[m - 1][j - 1] @ faces[m][i]:
                    ok = False
    out.append(Check("face identities d_i d_j = d_{j-1} d_i", ok))
    ok = True
    for m in range(0, n):
        for j in range(m + 1):
            s = cp.degeneracy(m, j)
            fc = faces[m + 1]
            ident = SparseMat.identity(f, cp.dims[m])
            if fc[j] @ s != ident or fc[j + 1] @ s != ident:
                ok = False
    out.append(Check("degeneracies are split by neighbouring faces", ok))
    out.append(Check("boundary squares to zero", res.complex.square_zero()
                     and (res.augmentation @ res.complex.diffs[1]).is_zero() if n >= 1 else True))
    ok = True
    for m in range(0, n):
        s = cp.homotopy(m)
        fc = faces[m + 1]
        if fc[0] @ s != SparseMat.identity(f, cp.dims[m]):
            ok = False
        for i in range(1, m + 2):
            lower = cp.homotopy(m - 1)
            rhs = lower @ (res.augmentation if m == 0 else faces[m][i - 1])
            if fc[i] @ s != rhs:
                ok = False
    out.append(Check("d_0 s = id and d_i s = s d_{i-1}", ok))
    out.extend(homotopy_checks(res))
    if n >= 1:
        from .linalg import kernel
        ker = kernel(res.augmentation)
        im = res.complex.diffs[1]
        ok = ker.dim == rank(im) and all(ker.contains(c) for c in im.columns)
        out.append(Check("ker psi = im d_1", ok))
    # ψ is H_par-linear: ψ(x y) = x ▷ ψ(y)
    A = hp.algebra
    ok = True
    for i, j in product(range(hp.dim), repeat=2):
        lhs = cp.psi_b.apply(A.table[i][j])
        rhs = cp.b_action[i].apply(cp.psi_b.columns[j])
        if lhs != rhs:
            ok = False
            break
    out.append(Check("psi is H_par-linear", ok))
    v = validate_resolution(res)
    out.append(Check("augmented complex is exact", v["exact"], v["homology"]))
    return out


def projectivity_certificate(hp, cp: CPrime, q: int) -> bool:
    """C'_q is a direct summand of the free module H_par ⊗ C'_{q-1}.

    The cover is x ⊗ c -> x ▷ (1 ⊗ c); a left H_par-linear section is found by
    solving the intertwining system together with μσ = id.
    """
    from .algebra import intertwiner_kernel, vec_to_matrix
    from .linalg import solve
    f = hp.field
    D = hp.dim
    cq = cp.dims[q]
    if q == 0:
        return True  # C'_0 = H_par is free
    cprev = cp.dims[q - 1]
    s = cp.homotopy(q - 1)
    mod = cp.left_module(q)
    # μ: H_par ⊗ C'_{q-1} -> C'_q
    mu_cols = []
    for x in range(D):
        Lx = mod.left[x]
        for c in range(cprev):
            mu_cols.append(Lx.apply(s.columns[c]))
    mu = SparseMat(f, cq, D * cprev, mu_cols)
    gens = hp.algebra.gens()
    ident_prev = SparseMat.identity(f, cprev)
    pairs = []
    for g in gens:
        pairs.append((mod.left_matrix(g), kron(hp.algebra.left_mult(g), ident_prev)))
    ker = intertwiner_kernel(f, cq, D * cprev, pairs)
    sols = [vec_to_matrix(f, v, cq, D * cprev) for v in ker.vectors()]
    if not sols:
        return cq == 0
    # μ σ = id, σ = Σ t_i σ_i
    cols = []
    for sgm in sols:
        prodm = mu @ sgm
        v = {}
        for j, col in enumerate(prodm.columns):
            for i, x in col.items():
                v[i * cq + j] = x
        cols.append(v)
    system = SparseMat(f, cq * cq, len(sols), cols)
    rhs = {i * cq + i: 1 for i in range(cq)}
    return solve(system, rhs) is not None
