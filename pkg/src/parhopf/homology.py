"""Hochschild (co)homology, partial Hopf (co)homology Tor/Ext over H_par,
the F₂F₁ ≅ F and G₂G₁ ≅ G instance checks and the global comparison."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Sequence

from .algebra import (
    Check,
    FiniteAlgebra,
    HomSpace,
    ModuleData,
    TensorProduct,
    all_passed,
    bimodule_to_left_env,
    bimodule_to_right_env,
    commutator_quotient,
    enveloping,
    hom_space,
    regular_bimodule,
    tensor_of_maps,
    tensor_over_subalgebra,
)
from .linalg import Coordinates, FieldSpec, SparseMat, kron, vadd
from .resolutions import (
    CPrime,
    ChainComplex,
    bar_resolution,
    bar_term_module,
)


class MethodDisagreement(RuntimeError):
    pass


@dataclass
class HomologyTable:
    label: str
    field: FieldSpec
    dims: list
    extra: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not self.dims or any(d < 0 for d in self.dims):
            raise ValueError("dims must be nonnegative and include degree 0")

    @property
    def degrees(self):
        return range(len(self.dims))

    def as_json(self) -> dict:
        return {"label": self.label, "field": self.field.name, "dims": list(self.dims)}


# ---------------------------------------------------------------- generic complexes

def mat_to_vec(F: SparseMat) -> dict:
    """Row-major vectorization, matching the Hom space solver."""
    out = {}
    dx = F.cols
    for k, col in enumerate(F.columns):
        for i, x in col.items():
            out[i * dx + k] = x
    return out


def tensor_complex(field: FieldSpec, xs: Sequence[ModuleData], diffs: dict, y: ModuleData,
                   gens=None, name: str = ""):
    """X_• ⊗_R Y with the induced boundary."""
    tens = [tensor_over_subalgebra(x, y, gens) for x in xs]
    ident = SparseMat.identity(field, y.dim)
    d = {q: tensor_of_maps(tens[q], tens[q - 1], diffs[q], ident) for q in range(1, len(xs))}
    cx = ChainComplex(field, [t.dim for t in tens], d, name=name)
    return cx, tens


def hom_complex(field: FieldSpec, xs: Sequence[ModuleData], diffs: dict, y: ModuleData, side: str = "left",
                name: str = ""):
    """Hom_R(X_•, Y) with δF = F ∘ d."""
    homs = [hom_space(x, y, side) for x in xs]
    coords = [Coordinates(field, x.dim * y.dim, [mat_to_vec(F) for F in h.basis]) for x, h in zip(xs, homs)]
    d = {}
    for q in range(len(xs) - 1):
        cols = [coords[q + 1](mat_to_vec(F @ diffs[q + 1]), check=True) for F in homs[q].basis]
        d[q] = SparseMat(field, homs[q + 1].dim, homs[q].dim, cols)
    cx = ChainComplex(field, [h.dim for h in homs], d, direction="cohomological", name=name)
    return cx, homs


# ---------------------------------------------------------------- Hochschild

def hochschild_complex(a: FiniteAlgebra, m: ModuleData, n: int) -> ChainComplex:
    """C_q = M ⊗ A^{⊗q} with the unnormalized Hochschild boundary."""
    f = a.field
    da, dm = a.dim, m.dim
    L = [m.left_matrix({i: 1}) for i in range(da)]
    R = [m.right_matrix({i: 1}) for i in range(da)]
    dims = [dm * da ** q for q in range(n + 1)]

    def idx(x, word):
        out = x
        for w in word:
            out = out * da + w
        return out

    diffs = {}
    for q in range(1, n + 1):
        cols = []
        for tup in product(range(dm), *([range(da)] * q)):
            x, word = tup[0], tup[1:]
            v: dict = {}
            for k, c in R[word[0]].columns[x].items():
                vadd(f, v, {idx(k, word[1:]): c})
            for i in range(1, q):
                sign = -1 if i % 2 else 1
                for k, c in a.table[word[i - 1]][word[i]].items():
                    vadd(f, v, {idx(x, word[:i - 1] + (k,) + word[i + 1:]): c}, sign)
            sign = -1 if q % 2 else 1
            for k, c in L[word[-1]].columns[x].items():
                vadd(f, v, {idx(k, word[:-1]): c}, sign)
            cols.append(v)
        diffs[q] = SparseMat(f, dims[q - 1], dims[q], cols)
    return ChainComplex(f, dims, diffs, name=f"C({a.name}, {m.name})")


def hochschild_cochain_complex(a: FiniteAlgebra, m: ModuleData, n: int) -> ChainComplex:
    """C^q = Hom_K(A^{⊗q}, M), basis (word, v) sends word to v."""
    f = a.field
    da, dm = a.dim, m.dim
    L = [m.left_matrix({i: 1}) for i in range(da)]
    R = [m.right_matrix({i: 1}) for i in range(da)]
    dims = [da ** q * dm for q in range(n + 1)]

    def idx(word, v):
        out = 0
        for w in word:
            out = out * da + w
        return out * dm + v

    diffs = {}
    for q in range(n):
        cols = [dict() for _ in range(dims[q])]
        for word in product(*([range(da)] * (q + 1))):
            # (δf)(a_1..a_{q+1}) = a_1 f(a_2..) + Σ(-1)^i f(..a_i a_{i+1}..) + (-1)^{q+1} f(a_1..a_q) a_{q+1}
            for v in range(dm):
                src = idx(word[1:], v)
                for w, c in L[word[0]].columns[v].items():
                    vadd(f, cols[src], {idx(word, w): c})
                for i in range(1, q + 1):
                    sign = -1 if i % 2 else 1
                    for k, c in a.table[word[i - 1]][word[i]].items():
                        src = idx(word[:i - 1] + (k,) + word[i + 1:], v)
                        vadd(f, cols[src], {idx(word, v): c}, sign)
                sign = -1 if (q + 1) % 2 else 1
                for w, c in R[word[-1]].columns[v].items():
                    vadd(f, cols[idx(word[:-1], v)], {idx(word, w): c}, sign)
        diffs[q] = SparseMat(f, dims[q + 1], dims[q], cols)
    return ChainComplex(f, dims, diffs, direction="cohomological", name=f"C*({a.name}, {m.name})")


def _env_bar(a: FiniteAlgebra, n: int):
    """Two-sided normalized bar resolution of A as left A^e-modules."""
    env = enveloping(a)
    res = bar_resolution(a, regular_bimodule(a), n)
    mods = [bimodule_to_left_env(bar_term_module(res, q), env) for q in range(n + 1)]
    return env, res, mods


class _BarBlocks:
    """P_q = A ⊗ Ā^{⊗q} ⊗ A split into the A^e-submodules A ⊗ w ⊗ A, one per bar word w.

    Every block is a copy of P_0 = A ⊗ A, so Hom and ⊗ over A^e are solved once on
    P_0 and the bar differential is read off block by block.
    """

    def __init__(self, a: FiniteAlgebra, n: int):
        self.a = a
        self.env = enveloping(a)
        self.res = bar_resolution(a, regular_bimodule(a), n)
        self.p0 = bimodule_to_left_env(bar_term_module(self.res, 0), self.env)
        self.db = self.res.extra["bar_dim"]

    def words(self, q: int) -> int:
        return self.db ** q

    def split(self, q: int, k: int) -> tuple[int, int]:
        """P_q index -> (word, P_0 index)."""
        da, nv = self.a.dim, self.words(q)
        r0, rest = divmod(k, nv * da)
        w, x = divmod(rest, da)
        return w, r0 * da + x

    def join(self, q: int, w: int, j: int) -> int:
        da, nv = self.a.dim, self.words(q)
        r0, x = divmod(j, da)
        return (r0 * nv + w) * da + x


def _bar_homology_blocks(a: FiniteAlgebra, m: ModuleData, n: int) -> ChainComplex:
    """M ⊗_{A^e} P_• with M ⊗_{A^e} P_q = (M ⊗_{A^e} P_0)^{words}."""
    bb = _BarBlocks(a, n)
    f = a.field
    t0 = tensor_over_subalgebra(bimodule_to_right_env(m, bb.env), bb.p0)
    d0 = bb.p0.dim
    sec = [t0.section.columns[t] for t in range(t0.dim)]
    proj = t0.projection.columns
    dims = [t0.dim * bb.words(q) for q in range(n + 1)]
    diffs = {}
    for q in range(1, n + 1):
        dq = bb.res.complex.diffs[q].columns
        nv, nv1 = bb.words(q), bb.words(q - 1)
        cols = []
        for t in range(t0.dim):
            for w in range(nv):
                v: dict = {}
                for e, c in sec[t].items():
                    i, j = divmod(e, d0)
                    for k, ck in dq[bb.join(q, w, j)].items():
                        w1, j1 = bb.split(q - 1, k)
                        for t1, ct in proj[i * d0 + j1].items():
                            vadd(f, v, {t1 * nv1 + w1: ct}, f.mul(c, ck))
                cols.append(v)
        # basis order is (t, w); columns were produced in that order
        diffs[q] = SparseMat(f, dims[q - 1], dims[q], cols)
    return ChainComplex(f, dims, diffs, name=f"M (x)_Ae bar({a.name})")


def _bar_cohomology_blocks(a: FiniteAlgebra, m: ModuleData, n: int) -> ChainComplex:
    """Hom_{A^e}(P_•, M) with Hom_{A^e}(P_q, M) = Hom_{A^e}(P_0, M)^{words}."""
    bb = _BarBlocks(a, n)
    f = a.field
    h0 = hom_space(bb.p0, bimodule_to_left_env(m, bb.env))
    d0, dm = bb.p0.dim, m.dim
    coords = Coordinates(f, d0 * dm, [mat_to_vec(F) for F in h0.basis])
    rows = [F.row_dicts() for F in h0.basis]
    dims = [h0.dim * bb.words(q) for q in range(n + 1)]
    diffs = {}
    for q in range(n):
        # (δF)|block u = F|block w ∘ (block w <- block u part of d_{q+1})
        dq = bb.res.complex.diffs[q + 1].columns
        nv, nu = bb.words(q), bb.words(q + 1)
        cols = [dict() for _ in range(dims[q])]
        for u in range(nu):
            parts: dict = {}
            for j in range(d0):
                for k, c in dq[bb.join(q + 1, u, j)].items():
                    w, j1 = bb.split(q, k)
                    parts.setdefault(w, [dict() for _ in range(d0)])[j][j1] = c
            for w, dcols in parts.items():
                for s in range(h0.dim):
                    vec: dict = {}
                    for i, row in enumerate(rows[s]):
                        if not row:
                            continue
                        for j, col in enumerate(dcols):
                            x = 0
                            for j1, c in col.items():
                                y = row.get(j1)
                                if y:
                                    x = f.add(x, f.mul(y, c))
                            if x:
                                vec[i * d0 + j] = x
                    for s1, c in coords(vec, check=True).items():
                        vadd(f, cols[s * nv + w], {s1 * nu + u: c})
        diffs[q] = SparseMat(f, dims[q + 1], dims[q], cols)
    return ChainComplex(f, dims, diffs, direction="cohomological", name=f"Hom_Ae(bar({a.name}), M)")


def hochschild_homology(a: FiniteAlgebra, m: ModuleData, n: int, label: str = "",
                        bar: str = "blocks") -> HomologyTable:
    """HH_q(A, M) for q ≤ n; the direct complex is checked against a bar resolution over A^e.

    ``bar="blocks"`` solves the tensor over A^e once on A ⊗ A and reuses it per bar
    word; ``bar="generic"`` quotients each whole bar term, which limits it to small A.
    """
    if not m.is_bimodule:
        raise ValueError("Hochschild homology needs a bimodule")
    direct = hochschild_complex(a, m, n + 1).homology_dims(n)
    if bar == "blocks":
        cx = _bar_homology_blocks(a, m, n + 1)
    else:
        env, res, mods = _env_bar(a, n + 1)
        cx, _ = _m_tensor_env_complex(a.field, bimodule_to_right_env(m, env), mods, res.complex.diffs)
    via_bar = cx.homology_dims(n)
    if direct != via_bar:
        raise MethodDisagreement(f"direct complex {direct} vs bar over A^e {via_bar}")
    h0 = commutator_quotient(a, m).dim
    if h0 != direct[0]:
        raise MethodDisagreement(f"degree 0 is {direct[0]} but M/[A,M] has dim {h0}")
    return HomologyTable(label or f"HH_*({a.name}, {m.name})", a.field, direct,
                         {"direct": direct, "bar": via_bar})


def _m_tensor_env_complex(field, mr: ModuleData, mods, diffs):
    tens = [tensor_over_subalgebra(mr, p) for p in mods]
    ident = SparseMat.identity(field, mr.dim)
    d = {q: tensor_of_maps(tens[q], tens[q - 1], ident, diffs[q]) for q in range(1, len(mods))}
    return ChainComplex(field, [t.dim for t in tens], d), tens


def hochschild_cohomology(a: FiniteAlgebra, m: ModuleData, n: int, label: str = "",
                          bar: str = "blocks") -> HomologyTable:
    if not m.is_bimodule:
        raise ValueError("Hochschild cohomology needs a bimodule")
    if bar == "blocks":
        cx = _bar_cohomology_blocks(a, m, n + 1)
        env = enveloping(a)
    else:
        env, res, mods = _env_bar(a, n + 1)
        cx, _ = hom_complex(a.field, mods, res.complex.diffs, bimodule_to_left_env(m, env))
    via_bar = cx.homology_dims(n)
    direct = hochschild_cochain_complex(a, m, n + 1).homology_dims(n)
    if direct != via_bar:
        raise MethodDisagreement(f"direct cochains {direct} vs Hom over A^e {via_bar}")
    h0 = hom_space(bimodule_to_left_env(regular_bimodule(a), env), bimodule_to_left_env(m, env)).dim
    if h0 != via_bar[0]:
        raise MethodDisagreement(f"degree 0 is {via_bar[0]} but Hom_Ae(A, M) has dim {h0}")
    return HomologyTable(label or f"HH^*({a.name}, {m.name})", a.field, via_bar,
                         {"direct": direct, "bar": via_bar})


# ---------------------------------------------------------------- partial Tor / Ext

def partial_tor_complex(hp, m: ModuleData, n: int, cp: CPrime | None = None):
    cp = cp if cp is not None and cp.n >= n else CPrime(hp, n)
    xs = [cp.right_module(q) for q in range(n + 1)]
    diffs = {q: cp.boundary(q) for q in range(1, n + 1)}
    return tensor_complex(hp.field, xs, diffs, m, gens=hp.algebra.gens(), name="C' (x) M")


def partial_tor(hp, m: ModuleData, n: int, cp: CPrime | None = None, label: str = "") -> HomologyTable:
    """Tor^{H_par}_q(B, M) for q ≤ n from the right C'_• resolution."""
    cx, tens = partial_tor_complex(hp, m, n + 1, cp)
    return HomologyTable(label or f"Tor^{hp.name}(B, {m.name})", hp.field, cx.homology_dims(n))


def partial_ext(hp, m: ModuleData, n: int, cp: CPrime | None = None, label: str = "") -> HomologyTable:
    """Ext_{H_par}^q(B, M) for q ≤ n."""
    cp = cp if cp is not None and cp.n >= n + 1 else CPrime(hp, n + 1)
    xs = [cp.left_module(q) for q in range(n + 2)]
    diffs = {q: cp.boundary(q) for q in range(1, n + 2)}
    cx, _ = hom_complex(hp.field, xs, diffs, m)
    return HomologyTable(label or f"Ext_{hp.name}(B, {m.name})", hp.field, cx.homology_dims(n))


def b_restriction_tor(hp, sm, n: int, cp: CPrime | None = None) -> list[int]:
    """Homology of (right C'_• restricted to B) ⊗_B A#H; should be concentrated in degree 0."""
    from .algebra import restrict_module
    from .partial import hpar_module
    cp = cp if cp is not None and cp.n >= n + 1 else CPrime(hp, n + 1)
    B = hp.base
    xs = [restrict_module(cp.right_module(q), B.inclusion, "right") for q in range(n + 2)]
    y = restrict_module(hpar_module("smash", hp, smash=sm).module, B.inclusion, "left")
    diffs = {q: cp.boundary(q) for q in range(1, n + 2)}
    cx, _ = tensor_complex(hp.field, xs, diffs, y, gens=B.algebra.gens())
    return cx.homology_dims(n)


# ---------------------------------------------------------------- functor isomorphisms

def _smash_bimodule_env(sm, m: ModuleData):
    return enveloping(sm.algebra, validate=False)


def f2f1_iso_check(sm, hp, m: ModuleData, x=None) -> tuple[bool, list[Check], dict]:
    """γ: X ⊗_{H_par} (A ⊗_{A^e} M) → (X ⊗_B A#H) ⊗_{Λ^e} M and its inverse ψ.

    X defaults to B with its right H_par-structure.  Both maps are built on
    pure tensors of the ambient spaces; well-definedness means the ambient
    map factors through the quotient projection.
    """
    from .partial import bimodule_X_tensorB_smash, hpar_module
    f = hp.field
    X = x if x is not None else hpar_module("B-right", hp)
    A = sm.base.algebra
    Lam = sm.algebra
    F1 = hpar_module("tensor", hp, smash=sm, module=m)
    T1: TensorProduct = F1.extra  # A ⊗_{A^e} M, ambient index a * dm + v
    lhs = tensor_over_subalgebra(X.module, F1.module, hp.algebra.gens())
    xs = bimodule_X_tensorB_smash(X, sm, hp)
    env = _smash_bimodule_env(sm, m)
    rhs = tensor_over_subalgebra(bimodule_to_right_env(xs.bimodule, env), bimodule_to_left_env(m, env))
    dx, da, dm, ds = X.dim, A.dim, m.dim, Lam.dim
    phi = sm.phi0().matrix
    one_s = Lam.unit
    checks = list(xs.checks)

    # γ̃ on the ambient X ⊗ A ⊗ M
    def gamma_pure(i, a, v):
        xb = xs.tensor.pure({i: 1}, one_s, f)  # x ⊗ 1#1 in X ⊗_B Λ
        am = m.act_left(phi.columns[a], {v: 1})
        return rhs.projection.apply(_tensor_vec_many(xb, am, dm, f))

    amb1 = [gamma_pure(i, a, v) for i in range(dx) for a in range(da) for v in range(dm)]
    g_amb = SparseMat(f, rhs.dim, dx * da * dm, amb1)
    # composite projection X ⊗ A ⊗ M -> lhs
    p_inner = kron(SparseMat.identity(f, dx), T1.projection)
    p_lhs = lhs.projection @ p_inner
    s_lhs = kron(SparseMat.identity(f, dx), T1.section) @ lhs.section
    gamma = g_amb @ s_lhs
    checks.append(Check("gamma is well defined", g_amb == gamma @ p_lhs))

    # ψ̃ on the ambient X ⊗ Λ ⊗ M
    def psi_pure(i, s, v):
        sm_v = m.act_left({s: 1}, {v: 1})
        inner = T1.projection.apply(_tensor_vec_many(A.unit, sm_v, dm, f))
        return lhs.projection.apply(_tensor_vec_many({i: 1}, inner, F1.dim, f))

    amb2 = [psi_pure(i, s, v) for i in range(dx) for s in range(ds) for v in range(dm)]
    p_amb = SparseMat(f, lhs.dim, dx * ds * dm, amb2)
    p_rhs = rhs.projection @ kron(xs.tensor.projection, SparseMat.identity(f, dm))
    s_rhs = kron(xs.tensor.section, SparseMat.identity(f, dm)) @ rhs.section
    psi = p_amb @ s_rhs
    checks.append(Check("psi is well defined", p_amb == psi @ p_rhs))
    checks.append(Check("psi gamma = id", psi @ gamma == SparseMat.identity(f, lhs.dim)))
    checks.append(Check("gamma psi = id", gamma @ psi == SparseMat.identity(f, rhs.dim)))
    return all_passed(checks), checks, {"lhs_dim": lhs.dim, "rhs_dim": rhs.dim, "gamma": gamma, "psi": psi}


def _tensor_vec_many(u: dict, v: dict, dim_v: int, f) -> dict:
    out = {}
    for i, x in u.items():
        for j, y in v.items():
            vadd(f, out, {i * dim_v + j: f.mul(x, y)})
    return out


def g2g1_iso_check(sm, hp, m: ModuleData, x=None) -> tuple[bool, list[Check], dict]:
    """γ: Hom_{H_par}(X, Hom_{A^e}(A, M)) → Hom_{Λ^e}(X ⊗_B Λ, M) and Λ back.

    X is a left H_par-module (default B); X ⊗_B Λ uses the twisted right
    structure, which carries the left action b#t·(x ⊗ c) = [t1]x ⊗ (b#t2)c.
    """
    from .hpar import twist_left_to_right
    from .partial import HparModule, bimodule_X_tensorB_smash, hpar_module
    f = hp.field
    X = x if x is not None else hpar_module("B-left", hp).module
    Xr = HparModule(twist_left_to_right(hp, X), [], [], side="right")
    A = sm.base.algebra
    Lam = sm.algebra
    N = hpar_module("hom", hp, smash=sm, module=m)
    hs: HomSpace = N.extra  # basis of dm x da matrices
    lhs = hom_space(X, N.module)
    xs = bimodule_X_tensorB_smash(Xr, sm, hp)
    env = _smash_bimodule_env(sm, m)
    rhs = hom_space(bimodule_to_left_env(xs.bimodule, env), bimodule_to_left_env(m, env))
    dx, da, dm = X.dim, A.dim, m.dim
    phi = sm.phi0().matrix
    one_a = A.unit
    checks = list(xs.checks)
    T = xs.tensor
    co_rhs = Coordinates(f, T.dim * dm, [mat_to_vec(F) for F in rhs.basis])
    co_lhs = Coordinates(f, dx * N.dim, [mat_to_vec(F) for F in lhs.basis])
    co_n = Coordinates(f, da * dm, [mat_to_vec(F) for F in hs.basis])

    def f_x(F: SparseMat, i: int) -> SparseMat:
        # element F(x_i) of Hom_Ae(A, M) as a dm x da matrix
        acc = SparseMat(f, dm, da)
        for k, c in F.columns[i].items():
            acc = acc + hs.basis[k].scale(c)
        return acc

    g_cols = []
    ok_desc = True
    for F in lhs.basis:
        # ambient map X ⊗ Λ -> M, (x_i, s) -> f_{x_i}(1_A)·s
        amb_cols = []
        for i in range(dx):
            val = f_x(F, i).apply(one_a)
            for s in range(Lam.dim):
                amb_cols.append(m.act_right(val, {s: 1}))
        G_amb = SparseMat(f, dm, dx * Lam.dim, amb_cols)
        G = G_amb @ T.section
        if G @ T.projection != G_amb:
            ok_desc = False
        try:
            g_cols.append(co_rhs(mat_to_vec(G), check=True))
        except ValueError:
            ok_desc = False
            g_cols.append({})
    gamma = SparseMat(f, rhs.dim, lhs.dim, g_cols)
    checks.append(Check("gamma(f) is a well defined bimodule map", ok_desc))
    l_cols = []
    ok_lam = True
    for G in rhs.basis:
        # Λ(G)_x(a) = G(x ⊗ a#1)
        Fcols = []
        for i in range(dx):
            fx_cols = [G.apply(T.pure({i: 1}, phi.columns[a], f)) for a in range(da)]
            fx = SparseMat(f, dm, da, fx_cols)
            try:
                Fcols.append(co_n(mat_to_vec(fx), check=True))
            except ValueError:
                ok_lam = False
                Fcols.append({})
        Fm = SparseMat(f, N.dim, dx, Fcols)
        try:
            l_cols.append(co_lhs(mat_to_vec(Fm), check=True))
        except ValueError:
            ok_lam = False
            l_cols.append({})
    lam_map = SparseMat(f, lhs.dim, rhs.dim, l_cols)
    checks.append(Check("Lambda(f) is an H_par-linear map into Hom_Ae(A, M)", ok_lam))
    checks.append(Check("Lambda gamma = id", lam_map @ gamma == SparseMat.identity(f, lhs.dim)))
    checks.append(Check("gamma Lambda = id", gamma @ lam_map == SparseMat.identity(f, rhs.dim)))
    return all_passed(checks), checks, {"lhs_dim": lhs.dim, "rhs_dim": rhs.dim}


# ---------------------------------------------------------------- global comparison

def trivial_right(alg: FiniteAlgebra, eps: dict) -> ModuleData:
    """K as a right module through the character ``eps`` (basis index -> scalar)."""
    f = alg.field
    mats = [SparseMat(f, 1, 1, [{0: eps.get(i, 0)} if eps.get(i, 0) else {}]) for i in range(alg.dim)]
    return ModuleData(1, right_alg=alg, right=mats, name="K")


def trivial_left(alg: FiniteAlgebra, eps: dict) -> ModuleData:
    f = alg.field
    mats = [SparseMat(f, 1, 1, [{0: eps.get(i, 0)} if eps.get(i, 0) else {}]) for i in range(alg.dim)]
    return ModuleData(1, left_alg=alg, left=mats, name="K")


def classical_tor(hopf, x: ModuleData, n: int) -> HomologyTable:
    """Tor^{H}_q(K, X) via K ⊗_H (bar resolution of X)."""
    H = hopf.algebra
    res = bar_resolution(H, x, n + 1)
    mods = [bar_term_module(res, q, with_right=False) for q in range(n + 2)]
    k = trivial_right(H, hopf.counit)
    tens = [tensor_over_subalgebra(k, p) for p in mods]
    one = SparseMat.identity(H.field, 1)
    d = {q: tensor_of_maps(tens[q], tens[q - 1], one, res.complex.diffs[q]) for q in range(1, n + 2)}
    cx = ChainComplex(H.field, [t.dim for t in tens], d)
    return HomologyTable(f"Tor^{hopf.name}(K, {x.name})", H.field, cx.homology_dims(n))


def classical_ext(hopf, x: ModuleData, n: int) -> HomologyTable:
    """Ext_H^q(K, X) via Hom_H(bar resolution of K, X)."""
    H = hopf.algebra
    k = trivial_left(H, hopf.counit)
    res = bar_resolution(H, k, n + 1)
    mods = [bar_term_module(res, q, with_right=False) for q in range(n + 2)]
    cx, _ = hom_complex(H.field, mods, res.complex.diffs, x)
    return HomologyTable(f"Ext_{hopf.name}(K, {x.name})", H.field, cx.homology_dims(n))


def global_module_checks(hopf, mats: Sequence[SparseMat]) -> list[Check]:
    """A genuine H-module: unital and multiplicative on basis elements."""
    f = hopf.field
    H = hopf.algebra
    dim = mats[0].rows

    def rho(u):
        acc = SparseMat(f, dim, dim)
        for i, c in u.items():
            acc = acc + mats[i].scale(c)
        return acc

    out = [Check("unit acts as identity", rho(H.unit) == SparseMat.identity(f, dim))]
    bad = None
    for i, j in product(range(H.dim), repeat=2):
        if rho(H.table[i][j]) != mats[i] @ mats[j]:
            bad = [i, j]
            break
    out.append(Check("action is multiplicative", bad is None, bad))
    return out


def global_comparison(hp, mats: Sequence[SparseMat], n: int, name: str = "X"):
    """Partial Tor/Ext of a global H-module against classical Tor/Ext over H."""
    from .partial import module_from_rep
    hopf = hp.hopf
    checks = global_module_checks(hopf, mats)
    if not all_passed(checks):
        bad = next(c for c in checks if not c.passed)
        raise ValueError(f"not a global module: {bad.name} {bad.witness}")
    x_par = module_from_rep(hp, mats, name=name).module
    x_glob = ModuleData(mats[0].rows, left_alg=hopf.algebra, left=list(mats), name=name)
    cp = CPrime(hp, n + 1)
    out = {
        "tor": (partial_tor(hp, x_par, n, cp), classical_tor(hopf, x_glob, n)),
        "ext": (partial_ext(hp, x_par, n, cp), classical_ext(hopf, x_glob, n)),
    }
    equal = all(a.dims == b.dims for a, b in out.values())
    return out, equal
