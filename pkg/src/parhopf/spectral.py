"""Double complexes, the spectral sequences of their two filtrations, and the
Grothendieck bicomplexes for the homology and cohomology of A#H."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import (
    Check,
    ModuleData,
    all_passed,
    bimodule_to_left_env,
    bimodule_to_right_env,
    enveloping,
    hom_space,
    primitive_idempotents,
    regular_bimodule,
    separability_idempotent,
    tensor_over_subalgebra,
)
from .linalg import (
    Coordinates,
    Echelon,
    FieldSpec,
    SparseMat,
    Subspace,
    kron,
    rank,
    rank_kernel_image,
    vadd,
)
from .resolutions import CPrime, bar_resolution, bar_term_module, dual_bar_bimodule_resolution, dual_bar_term_module

INF = 10 ** 6


# ---------------------------------------------------------------- double complexes

class DoubleComplex:
    """Finitely many spaces C_{p,q} with horizontal and vertical differentials.

    Homological variant: horiz[(p,q)]: C_{p,q} -> C_{p-1,q}, vert[(p,q)]: C_{p,q} -> C_{p,q-1}.
    Cohomological variant: horiz goes to (p+1,q) and vert to (p,q+1).
    With ``signed=False`` the squares are taken to commute and the vertical
    differential on column p is multiplied by (-1)^p.
    """

    def __init__(self, field: FieldSpec, dims: dict, horiz: dict, vert: dict,
                 variant: str = "homological", signed: bool = False, name: str = ""):
        self.field = field
        self.dims = {k: v for k, v in dims.items()}
        self.variant = variant
        self.name = name
        step = -1 if variant == "homological" else 1
        self.step = step
        self.h: dict = {}
        self.v: dict = {}
        for (p, q), d in horiz.items():
            tgt = (p + step, q)
            if tgt in self.dims and (p, q) in self.dims:
                self._shape(d, tgt, (p, q))
                self.h[(p, q)] = d
        for (p, q), d in vert.items():
            tgt = (p, q + step)
            if tgt in self.dims and (p, q) in self.dims:
                self._shape(d, tgt, (p, q))
                self.v[(p, q)] = d if signed or p % 2 == 0 else -d

    def _shape(self, d, tgt, src):
        if (d.rows, d.cols) != (self.dims[tgt], self.dims[src]):
            raise ValueError(f"map {src}->{tgt} has shape {d.rows}x{d.cols}")

    @property
    def bounds(self):
        ps = [p for p, _ in self.dims]
        qs = [q for _, q in self.dims]
        return (max(ps), max(qs))

    def checks(self) -> list[Check]:
        st = self.step
        ok_h = all((self.h[(p + st, q)] @ d).is_zero() for (p, q), d in self.h.items() if (p + st, q) in self.h)
        ok_v = all((self.v[(p, q + st)] @ d).is_zero() for (p, q), d in self.v.items() if (p, q + st) in self.v)
        ok_a = True
        for (p, q) in self.dims:
            a = b = None
            if (p, q) in self.h and (p + st, q) in self.v:
                a = self.v[(p + st, q)] @ self.h[(p, q)]
            if (p, q) in self.v and (p, q + st) in self.h:
                b = self.h[(p, q + st)] @ self.v[(p, q)]
            if a is not None and b is not None:
                if not (a + b).is_zero():
                    ok_a = False
            elif a is not None and (p + st, q + st) in self.dims and not a.is_zero():
                ok_a = False
            elif b is not None and (p + st, q + st) in self.dims and not b.is_zero():
                ok_a = False
        return [Check("horizontal squares to zero", ok_h), Check("vertical squares to zero", ok_v),
                Check("differentials anticommute", ok_a)]

    def homological_view(self):
        """(dims, h, v) indexed homologically; the cohomological case is negated."""
        if self.variant == "homological":
            return self.dims, self.h, self.v
        neg = lambda k: (-k[0], -k[1])  # noqa: E731
        return ({neg(k): d for k, d in self.dims.items()}, {neg(k): d for k, d in self.h.items()},
                {neg(k): d for k, d in self.v.items()})


# ---------------------------------------------------------------- spectral sequence engine

class _Filtered:
    """Total complex with the filtration by column (key p) or row (key q)."""

    def __init__(self, field, dims, h, v, key: str):
        self.field = field
        self.dims, self.h, self.v = dims, h, v
        self.key = (lambda pq: pq[0]) if key == "column" else (lambda pq: pq[1])
        self.tot: dict[int, list] = {}
        for (p, q), d in sorted(dims.items()):
            self.tot.setdefault(p + q, []).append((p, q))
        self.offsets: dict = {}
        self.tdim: dict[int, int] = {}
        for n, blocks in self.tot.items():
            off = 0
            for b in blocks:
                self.offsets[b] = off
                off += dims[b]
            self.tdim[n] = off
        self.keyof: dict[int, list] = {}
        for n, blocks in self.tot.items():
            ks = []
            for b in blocks:
                ks.extend([self.key(b)] * dims[b])
            self.keyof[n] = ks
        self._D: dict = {}
        self._cache: dict = {}

    def degrees(self):
        return sorted(self.tot)

    def D(self, n: int) -> SparseMat:
        """Total differential Tot_n -> Tot_{n-1}."""
        if n in self._D:
            return self._D[n]
        f = self.field
        rows = self.tdim.get(n - 1, 0)
        cols = [dict() for _ in range(self.tdim.get(n, 0))]
        for b in self.tot.get(n, []):
            off = self.offsets[b]
            for mp, tgt in ((self.h, (b[0] - 1, b[1])), (self.v, (b[0], b[1] - 1))):
                d = mp.get(b)
                if d is None:
                    continue
                toff = self.offsets[tgt]
                for j, col in enumerate(d.columns):
                    for i, x in col.items():
                        vadd(f, cols[off + j], {toff + i: x})
        m = SparseMat(f, rows, len(cols), cols)
        self._D[n] = m
        return m

    def total_homology(self, n: int) -> int:
        dim = self.tdim.get(n, 0)
        return dim - rank(self.D(n)) - rank(self.D(n + 1))

    def _restricted_kernel(self, n: int, col_max: int, row_min: int) -> list[dict]:
        """Vectors x in F_{col_max} Tot_n with the components of Dx of key > row_min zero."""
        f = self.field
        cols_idx = [i for i, k in enumerate(self.keyof.get(n, [])) if k <= col_max]
        if not cols_idx:
            return []
        D = self.D(n)
        keys_t = self.keyof.get(n - 1, [])
        sub_cols = []
        for i in cols_idx:
            sub_cols.append({r: x for r, x in D.columns[i].items() if keys_t[r] > row_min})
        sub = SparseMat(f, D.rows, len(sub_cols), sub_cols)
        _, ker, _ = rank_kernel_image(sub)
        return [{cols_idx[j]: x for j, x in v.items()} for v in ker.vectors()]

    def Z(self, r: int, s: int, n: int) -> Subspace:
        key = ("Z", r, s, n)
        if key not in self._cache:
            vecs = self._restricted_kernel(n, s, s - r)
            self._cache[key] = Subspace.span(self.field, self.tdim.get(n, 0), vecs)
        return self._cache[key]

    def Bd(self, r: int, s: int, n: int) -> Subspace:
        """F_s Tot_n ∩ D(F_{s+r} Tot_{n+1})."""
        key = ("B", r, s, n)
        if key not in self._cache:
            ker = self._restricted_kernel(n + 1, s + r, s)
            D = self.D(n + 1)
            self._cache[key] = Subspace.span(self.field, self.tdim.get(n, 0), (D.apply(v) for v in ker))
        return self._cache[key]

    def page_basis(self, r: int, s: int, n: int):
        """(W, reps): E^r = Z^r / W with representatives of a complement basis."""
        key = ("E", r, s, n)
        if key in self._cache:
            return self._cache[key]
        z = self.Z(r, s, n)
        w = self.Z(r - 1, s - 1, n) + self.Bd(r - 1, s, n)
        ech = Echelon(self.field)
        for v in w.vectors():
            ech.add(v)
        reps = [v for v in z.vectors() if ech.add(v)]
        self._cache[key] = (w, reps)
        return w, reps

    def page_dim(self, r: int, s: int, n: int) -> int:
        if self.tdim.get(n, 0) == 0:
            return 0
        return len(self.page_basis(r, s, n)[1])

    def differential(self, r: int, s: int, n: int) -> SparseMat:
        """d_r: E^r_{s,n} -> E^r_{s-r,n-1} on the chosen representatives."""
        _, src = self.page_basis(r, s, n)
        if self.tdim.get(n - 1, 0) == 0:
            return SparseMat(self.field, 0, len(src))
        w, tgt = self.page_basis(r, s - r, n - 1)
        k = w.dim
        co = Coordinates(self.field, self.tdim[n - 1], list(w.vectors()) + tgt)
        D = self.D(n)
        cols = []
        for x in src:
            c = co(D.apply(x), check=True)
            cols.append({i - k: y for i, y in c.items() if i >= k})
        return SparseMat(self.field, len(tgt), len(src), cols)


@dataclass
class SSPage:
    r: int
    entries: dict  # (p, q) -> dim
    differentials: dict = dc_field(default_factory=dict, repr=False)

    def as_json(self):
        return {"r": self.r, "entries": [{"p": p, "q": q, "dim": d} for (p, q), d in sorted(self.entries.items())]}


@dataclass
class SSResult:
    filtration: str
    pages: list
    einf: dict
    total_dims: dict
    checks: list
    stabilized_at: int | None

    def page(self, r: int) -> SSPage:
        for pg in self.pages:
            if pg.r == r:
                return pg
        raise KeyError(r)

    def as_json(self, fixture: str = "", entries=None, degrees=None) -> dict:
        def keep(pq):
            return entries is None or pq in entries

        pages = [{"r": pg.r, "entries": [{"p": p, "q": q, "dim": d} for (p, q), d in sorted(pg.entries.items())
                                         if keep((p, q))]} for pg in self.pages]
        return {
            "fixture": fixture,
            "filtration": self.filtration,
            "pages": pages,
            "einf": [{"p": p, "q": q, "dim": d} for (p, q), d in sorted(self.einf.items()) if keep((p, q))],
            "total_dims": [self.total_dims[n] for n in sorted(self.total_dims) if degrees is None or n in degrees],
            "checks": [{"name": c.name, "pass": c.passed} for c in self.checks],
        }


def ss_pages(dc: DoubleComplex, filtration: str = "column", r_max: int | None = None,
             degrees: Sequence[int] | None = None) -> SSResult:
    """All pages E^1.. of the chosen filtration, E∞, and convergence checks.

    Entries are indexed by (p, q) of the double complex in either
    filtration; for the cohomological variant pages are E_r^{p,q}.
    """
    if filtration not in ("column", "row"):
        raise ValueError("filtration must be 'column' or 'row'")
    dims, h, v = dc.homological_view()
    sign = 1 if dc.variant == "homological" else -1
    fc = _Filtered(dc.field, dims, h, v, filtration)
    keys = sorted({fc.key(k) for k in dims})
    span = (keys[-1] - keys[0]) if keys else 0
    r_last = span + 1
    r_max = r_last if r_max is None else r_max
    checks = list(dc.checks())

    def s_of(pq):
        return fc.key(pq)

    pages = []
    stabilized = None
    prev = None
    for r in range(1, r_max + 1):
        entries = {}
        for pq in sorted(dims):
            entries[(sign * pq[0], sign * pq[1])] = fc.page_dim(r, s_of(pq), pq[0] + pq[1])
        pg = SSPage(r, entries)
        # differentials d_r with (p, q) -> (p - r, q + r - 1) column-wise, (p + r - 1, q - r) row-wise
        nonzero = False
        ok_sq = True
        for pq in sorted(dims):
            n = pq[0] + pq[1]
            s = s_of(pq)
            if fc.tdim.get(n - 1, 0) == 0 or entries[(sign * pq[0], sign * pq[1])] == 0:
                continue
            d = fc.differential(r, s, n)
            pg.differentials[pq] = d
            if not d.is_zero():
                nonzero = True
        for pq, d in pg.differentials.items():
            n = pq[0] + pq[1]
            tgt = _target(pq, r, filtration)
            d2 = pg.differentials.get(tgt)
            if d2 is not None and not (d2 @ d).is_zero():
                ok_sq = False
        checks.append(Check(f"d_{r} squares to zero", ok_sq))
        if prev is not None:
            ok = True
            for pq in sorted(dims):
                key = (sign * pq[0], sign * pq[1])
                expect = prev.entries[key]
                dout = prev.differentials.get(pq)
                src = _source(pq, r - 1, filtration)
                din = prev.differentials.get(src)
                expect -= rank(dout) if dout is not None else 0
                expect -= rank(din) if din is not None else 0
                if expect != entries[key]:
                    ok = False
            checks.append(Check(f"E^{r} is the homology of E^{r - 1}", ok))
        pages.append(pg)
        if not nonzero and stabilized is None and r >= 2:
            stabilized = r
        if nonzero:
            stabilized = None
        prev = pg
    einf = {}
    for pq in sorted(dims):
        einf[(sign * pq[0], sign * pq[1])] = fc.page_dim(INF, s_of(pq), pq[0] + pq[1])
    last = pages[-1].entries if pages else {}
    if r_max >= r_last:
        checks.append(Check("E-infinity equals the last page", einf == last))
    else:
        checks.append(Check("stabilized within r_max", stabilized is not None))
    totals = {}
    for n in fc.degrees():
        totals[sign * n] = fc.total_homology(n)
    wanted = list(totals) if degrees is None else list(degrees)
    conv = all(sum(d for (p, q), d in einf.items() if p + q == n) == totals[n] for n in wanted if n in totals)
    checks.append(Check("sum of E-infinity equals total homology", conv))
    return SSResult(filtration, pages, einf, totals, checks, stabilized)


def _target(pq, r, filtration):
    p, q = pq
    return (p - r, q + r - 1) if filtration == "column" else (p + r - 1, q - r)


def _source(pq, r, filtration):
    p, q = pq
    return (p + r, q - r + 1) if filtration == "column" else (p - r + 1, q + r)


def total_homology_dims(dc: DoubleComplex) -> dict:
    dims, h, v = dc.homological_view()
    fc = _Filtered(dc.field, dims, h, v, "column")
    sign = 1 if dc.variant == "homological" else -1
    return {sign * n: fc.total_homology(n) for n in fc.degrees()}


def tensor_double_complex(field, c1: dict, d1: dict, c2: dict, d2: dict) -> DoubleComplex:
    """C ⊗ D of two chain complexes (dims by degree, d[n]: n -> n-1)."""
    dims = {(p, q): c1[p] * c2[q] for p in c1 for q in c2}
    h = {(p, q): kron(d1[p], SparseMat.identity(field, c2[q])) for p in c1 for q in c2 if p in d1}
    v = {(p, q): kron(SparseMat.identity(field, c1[p]), d2[q]) for p in c1 for q in c2 if q in d2}
    return DoubleComplex(field, dims, h, v)


# ---------------------------------------------------------------- B-block decomposition

class BSplit:
    """A B-module split along the primitive idempotents of B.

    ``proj[i]`` is the action of ε_i; ``basis[i]`` a basis of ε_i V with
    coordinates ``coords[i]``.
    """

    def __init__(self, field, dim: int, proj: Sequence[SparseMat]):
        self.field = field
        self.dim = dim
        self.proj = list(proj)
        self.basis = []
        self.coords = []
        for P in self.proj:
            sp = Subspace.span(field, dim, [c for c in P.columns if c])
            self.basis.append(list(sp.vectors()))
            self.coords.append(Coordinates(field, dim, sp.vectors()))

    def block_dims(self):
        return [len(b) for b in self.basis]

    def split(self, vec: dict) -> list[dict]:
        return [self.coords[i](self.proj[i].apply(vec)) for i in range(len(self.proj))]


def _b_idempotents(hp):
    B = hp.base
    return [B.inclusion.matrix.apply(e) for e in primitive_idempotents(B.algebra)]


class _BlockSpace:
    """⊕_i (ε_i X) ⊗ (ε_i N) or ⊕_i Hom(ε_i X, ε_i N) with flat indexing."""

    def __init__(self, xs: BSplit, ns: BSplit):
        self.xs, self.ns = xs, ns
        self.offsets = []
        off = 0
        for a, b in zip(xs.block_dims(), ns.block_dims()):
            self.offsets.append(off)
            off += a * b
        self.dim = off

    def index(self, i, a, b):
        return self.offsets[i] + a * self.ns.block_dims()[i] + b

    def items(self):
        for i, (da, db) in enumerate(zip(self.xs.block_dims(), self.ns.block_dims())):
            for a in range(da):
                for b in range(db):
                    yield i, a, b

    def project_pure(self, xvec: dict, nvec: dict, acc: dict, c=1):
        """Add c · class(x ⊗ n) to acc."""
        f = self.xs.field
        xsplit = self.xs.split(xvec)
        for i, xc in enumerate(xsplit):
            if not xc:
                continue
            nc = self.ns.coords[i](self.ns.proj[i].apply(nvec))
            if not nc:
                continue
            for a, x in xc.items():
                for b, y in nc.items():
                    vadd(f, acc, {self.index(i, a, b): f.mul(c, f.mul(x, y))})


# ---------------------------------------------------------------- Grothendieck complexes

@dataclass
class GrothendieckComplex:
    dc: DoubleComplex
    bounds: tuple
    variant: str
    hp: object
    smash: object
    module: ModuleData
    column_modules: list  # N_q (H_par-modules) for q = 0..Q+1
    column_maps: dict     # q -> N_q -> N_{q-1} (or N_q -> N_{q+1})
    region: list
    extra: dict = dc_field(default_factory=dict)

    @property
    def valid_entries(self):
        P, Q = self.bounds
        return [(p, q) for p in range(P + 1) for q in range(Q + 1)]

    @property
    def valid_degrees(self):
        return list(range(min(self.bounds) + 1))


def _region(P: int, Q: int):
    """Grid up to (P+1, Q+1) without its top corner; enough for E² on p ≤ P, q ≤ Q
    and for every page in total degrees ≤ min(P, Q)."""
    return [(p, q) for p in range(P + 2) for q in range(Q + 2) if (p, q) != (P + 1, Q + 1)]


def build_homological_grothendieck(sm, hp, m: ModuleData, bounds=(2, 2), route: str = "reduced"
                                   ) -> GrothendieckComplex:
    """C_{p,q} = Q_p ⊗_{H_par} (A ⊗_{A^e} P_q) with Q_• the right C'_• and
    P_• the bar resolution Λ ⊗ Λ̄^{⊗q} ⊗ M of M (Λ = A#H).

    route="reduced" uses Q_p ⊗_{H_par} N ≅ C'_{p-1} ⊗_B N, (x_0 ⊗ r) ⊗ n ↦ r ⊗ 𝒮(x_0)n,
    evaluated blockwise over the primitive idempotents of B; route="direct"
    forms the tensor products over H_par literally.
    """
    from .partial import hpar_module
    P, Q = bounds
    f = hp.field
    Lam = sm.algebra
    region = _region(P, Q)
    res = bar_resolution(Lam, m, Q + 1)
    Ns = []
    for q in range(Q + 2):
        Pq = bar_term_module(res, q)
        Ns.append(hpar_module("tensor", hp, smash=sm, module=Pq))
    A_dim = sm.base.algebra.dim
    vN = {}
    for q in range(1, Q + 2):
        Tq, Tp = Ns[q].extra, Ns[q - 1].extra
        vN[q] = Tp.projection @ kron(SparseMat.identity(f, A_dim), res.complex.diffs[q]) @ Tq.section
    if route == "direct":
        cp = CPrime(hp, P + 1)
        dims, horiz, vert = {}, {}, {}
        tens = {}
        for (p, q) in region:
            tens[(p, q)] = tensor_over_subalgebra(cp.right_module(p), Ns[q].module, hp.algebra.gens())
            dims[(p, q)] = tens[(p, q)].dim
        bnd = {p: cp.boundary(p) for p in range(1, P + 2)}
        for (p, q) in region:
            T = tens[(p, q)]
            if (p - 1, q) in tens:
                horiz[(p, q)] = tens[(p - 1, q)].projection @ kron(bnd[p], SparseMat.identity(f, Ns[q].dim)) @ T.section
            if (p, q - 1) in tens:
                vert[(p, q)] = tens[(p, q - 1)].projection @ kron(SparseMat.identity(f, cp.dims[p]), vN[q]) @ T.section
        dc = DoubleComplex(f, dims, horiz, vert, name="grothendieck (direct)")
        return GrothendieckComplex(dc, bounds, "homological", hp, sm, m, Ns, vN, region)

    cp = CPrime(hp, P)
    eps = _b_idempotents(hp)
    inv = hp.involution
    # B acts on N through 𝒮 in b r ⊗ n = r ⊗ 𝒮(b) n
    eps_n = [inv.apply(e) for e in eps]
    xsplit = {p: BSplit(f, cp.dims[p - 1], [cp.left_action(p - 1, e) for e in eps]) for p in range(1, P + 2)}
    nsplit = {q: BSplit(f, Ns[q].dim, [Ns[q].module.left_matrix(e) for e in eps_n]) for q in range(Q + 2)}
    spaces, dims = {}, {}
    for (p, q) in region:
        if p == 0:
            dims[(p, q)] = Ns[q].dim
        else:
            spaces[(p, q)] = _BlockSpace(xsplit[p], nsplit[q])
            dims[(p, q)] = spaces[(p, q)].dim
    horiz, vert = {}, {}
    for (p, q) in region:
        if (p, q - 1) in dims:
            if p == 0:
                vert[(p, q)] = vN[q]
            else:
                src, tgt = spaces[(p, q)], spaces[(p, q - 1)]
                cols = []
                for i, a, b in src.items():
                    acc: dict = {}
                    tgt.project_pure(src.xs.basis[i][a], vN[q].apply(src.ns.basis[i][b]), acc)
                    cols.append(acc)
                vert[(p, q)] = SparseMat(f, tgt.dim, src.dim, cols)
        if p >= 1 and (p - 1, q) in dims:
            horiz[(p, q)] = _reduced_boundary(cp, Ns[q].module, spaces[(p, q)], spaces.get((p - 1, q)),
                                              p, dims[(p - 1, q)])
    dc = DoubleComplex(f, dims, horiz, vert, name="grothendieck")
    return GrothendieckComplex(dc, bounds, "homological", hp, sm, m, Ns, vN, region)


def _reduced_boundary(cp: CPrime, N: ModuleData, src: _BlockSpace, tgt, p: int, tgt_dim: int) -> SparseMat:
    """The boundary of Q_• ⊗_{H_par} N transported to C'_{p-1} ⊗_B N."""
    hp = cp.hp
    f = hp.field
    A = hp.algebra
    inv = hp.involution
    s_mats: dict = {}

    def s_act(t, nvec):
        if t not in s_mats:
            s_mats[t] = N.left_matrix(inv.columns[t])
        return s_mats[t].apply(nvec)

    spsi = [inv.apply(v) for v in cp.psi_vec]
    cols = []
    for i, a, b in src.items():
        xvec = src.xs.basis[i][a]
        nvec = src.ns.basis[i][b]
        acc: dict = {}
        for k, cx in xvec.items():
            t = cp.lift(p - 1, k)
            if p == 1:
                vadd(f, acc, s_act(t[0], nvec), cx)
                vadd(f, acc, N.act_left(spsi[t[0]], nvec), f.neg(cx))
                continue
            tgt.project_pure(cp.pure(t[1:]), s_act(t[0], nvec), acc, cx)
            for j in range(1, p):
                sign = -1 if j % 2 else 1
                prod = A.table[t[j - 1]][t[j]]
                xv = cp.project_terms([(c, t[:j - 1] + (u,) + t[j + 1:]) for u, c in prod.items()])
                tgt.project_pure(xv, nvec, acc, f.mul(sign, cx))
            sign = -1 if p % 2 else 1
            last = A.mul({t[p - 2]: 1}, cp.psi_vec[t[p - 1]])
            xv = cp.project_terms([(c, t[:p - 2] + (u,)) for u, c in last.items()])
            tgt.project_pure(xv, nvec, acc, f.mul(sign, cx))
        cols.append(acc)
    return SparseMat(f, tgt_dim, src.dim, cols)


def _hom_vertical(field, hs_src, hs_tgt, d: SparseMat, da: int) -> SparseMat:
    """F ↦ d ∘ F between Hom_{A^e}(A, I^q) spaces (dm x da matrices, row major)."""
    co = Coordinates(field, d.rows * da, [_mvec(F) for F in hs_tgt.basis])
    return SparseMat(field, hs_tgt.dim, hs_src.dim, [co(_mvec(d @ F), check=True) for F in hs_src.basis])


def _mvec(F: SparseMat) -> dict:
    out = {}
    dx = F.cols
    for k, col in enumerate(F.columns):
        for i, x in col.items():
            out[i * dx + k] = x
    return out


def build_cohomological_grothendieck(sm, hp, m: ModuleData, bounds=(2, 2), route: str = "reduced"
                                     ) -> GrothendieckComplex:
    """C^{p,q} = Hom_{H_par}(C'_p, Hom_{A^e}(A, I^q)) with I^• = Hom_K(Λ̄^{⊗•} ⊗ Λ, M).

    route="reduced" uses Hom_{H_par}(C'_p, N) ≅ Hom_B(C'_{p-1}, N),
    F(x_0 ⊗ u) = x_0 ▷ F̃(u), split over the primitive idempotents of B.
    """
    from .partial import hpar_module
    P, Q = bounds
    f = hp.field
    Lam = sm.algebra
    region = _region(P, Q)
    res = dual_bar_bimodule_resolution(Lam, m, Q + 1)
    Ns = [hpar_module("hom", hp, smash=sm, module=dual_bar_term_module(res, q)) for q in range(Q + 2)]
    da = sm.base.algebra.dim
    vN = {q: _hom_vertical(f, Ns[q].extra, Ns[q + 1].extra, res.complex.diffs[q], da) for q in range(Q + 1)}
    if route == "direct":
        cp = CPrime(hp, P + 1)
        dims, horiz, vert, homs = {}, {}, {}, {}
        for (p, q) in region:
            homs[(p, q)] = hom_space(cp.left_module(p), Ns[q].module)
            dims[(p, q)] = homs[(p, q)].dim
        for (p, q) in region:
            hs = homs[(p, q)]
            if (p + 1, q) in homs:
                tgt = homs[(p + 1, q)]
                co = Coordinates(f, cp.dims[p + 1] * Ns[q].dim, [_mvec(F) for F in tgt.basis])
                d = cp.boundary(p + 1)
                horiz[(p, q)] = SparseMat(f, tgt.dim, hs.dim, [co(_mvec(F @ d), check=True) for F in hs.basis])
            if (p, q + 1) in homs:
                tgt = homs[(p, q + 1)]
                co = Coordinates(f, cp.dims[p] * Ns[q + 1].dim, [_mvec(F) for F in tgt.basis])
                d = vN[q]
                vert[(p, q)] = SparseMat(f, tgt.dim, hs.dim, [co(_mvec(d @ F), check=True) for F in hs.basis])
        dc = DoubleComplex(f, dims, horiz, vert, variant="cohomological", name="grothendieck (direct)")
        return GrothendieckComplex(dc, bounds, "cohomological", hp, sm, m, Ns, vN, region)

    cp = CPrime(hp, P)
    eps = _b_idempotents(hp)
    xsplit = {p: BSplit(f, cp.dims[p - 1], [cp.left_action(p - 1, e) for e in eps]) for p in range(1, P + 2)}
    nsplit = {q: BSplit(f, Ns[q].dim, [Ns[q].module.left_matrix(e) for e in eps]) for q in range(Q + 2)}
    spaces, dims = {}, {}
    for (p, q) in region:
        if p == 0:
            dims[(p, q)] = Ns[q].dim
        else:
            spaces[(p, q)] = _BlockSpace(xsplit[p], nsplit[q])
            dims[(p, q)] = spaces[(p, q)].dim
    horiz, vert = {}, {}
    for (p, q) in region:
        if (p, q + 1) in dims:
            if p == 0:
                vert[(p, q)] = vN[q]
            else:
                vert[(p, q)] = _block_hom_vertical(spaces[(p, q)], spaces[(p, q + 1)], vN[q])
        if (p + 1, q) in dims:
            horiz[(p, q)] = _reduced_coboundary(cp, Ns[q].module, spaces.get((p, q)), spaces[(p + 1, q)], p,
                                                dims[(p, q)])
    dc = DoubleComplex(f, dims, horiz, vert, variant="cohomological", name="grothendieck")
    return GrothendieckComplex(dc, bounds, "cohomological", hp, sm, m, Ns, vN, region)


def _block_hom_vertical(src: _BlockSpace, tgt: _BlockSpace, v: SparseMat) -> SparseMat:
    """Post-composition with the B-linear map v, block by block."""
    f = src.xs.field
    entries = []
    for i, a, b in src.items():
        img = tgt.ns.coords[i](v.apply(src.ns.basis[i][b]), check=True)
        for b2, c in img.items():
            entries.append((tgt.index(i, a, b2), src.index(i, a, b), c))
    return SparseMat.from_entries(f, tgt.dim, src.dim, entries)


def _reduced_coboundary(cp: CPrime, N: ModuleData, src, tgt: _BlockSpace, p: int, src_dim: int) -> SparseMat:
    """The coboundary of Hom_{H_par}(C'_•, N) transported to Hom_B(C'_{•-1}, N).

    A block element F̃ is evaluated on x ∈ C'_{p-1} as Σ_i basis_i M_i coords_i(ε_i x).
    """
    hp = cp.hp
    f = hp.field
    A = hp.algebra
    ns = tgt.ns
    nblocks = len(ns.basis)
    left_mats = {}

    def lm(h):
        if h not in left_mats:
            left_mats[h] = N.left_matrix(dict(h)) if isinstance(h, tuple) else N.left_matrix({h: 1})
        return left_mats[h]

    # p = 0: N -> Hom_B(C'_0, N), g ↦ (t ↦ t g - ψ(t) g)
    entries = []
    psi_key = [tuple(sorted(v.items())) for v in cp.psi_vec]
    for j in range(nblocks):
        for a2, xvec in enumerate(tgt.xs.basis[j]):
            # value of δF̃ on xvec as a list of (coef, h, source F-evaluation input)
            terms = []  # (coef, left multiplier key or None, x-vector in C'_{p-1} or None for p == 0)
            for k, cx in xvec.items():
                t = cp.lift(p, k)
                if p == 0:
                    terms.append((cx, t[0], None))
                    terms.append((f.neg(cx), psi_key[t[0]], None))
                    continue
                terms.append((cx, t[0], cp.pure(t[1:])))
                for i2 in range(1, p + 1):
                    sign = -1 if i2 % 2 else 1
                    prod = A.table[t[i2 - 1]][t[i2]]
                    xv = cp.project_terms([(c, t[:i2 - 1] + (u,) + t[i2 + 1:]) for u, c in prod.items()])
                    terms.append((f.mul(sign, cx), None, xv))
                sign = -1 if (p + 1) % 2 else 1
                last = A.mul({t[p - 1]: 1}, cp.psi_vec[t[p]])
                xv = cp.project_terms([(c, t[:p - 1] + (u,)) for u, c in last.items()])
                terms.append((f.mul(sign, cx), None, xv))
            if p == 0:
                # source index = coordinate of g in N
                for g in range(src_dim):
                    gv = {g: 1}
                    val: dict = {}
                    for c, h, _ in terms:
                        vadd(f, val, lm(h).apply(gv), c)
                    for b2, y in ns.coords[j](ns.proj[j].apply(val)).items():
                        entries.append((tgt.index(j, a2, b2), g, y))
                continue
            # accumulate per source (i, a, b): value vector in N
            contrib: dict = {}
            for c, h, xv in terms:
                for i, xc in enumerate(src.xs.split(xv)):
                    for a, y in xc.items():
                        cy = f.mul(c, y)
                        for b in range(len(src.ns.basis[i])):
                            nb = src.ns.basis[i][b]
                            img = nb if h is None else lm(h).apply(nb)
                            key = src.index(i, a, b)
                            vadd(f, contrib.setdefault(key, {}), img, cy)
            for key, val in contrib.items():
                for b2, y in ns.coords[j](ns.proj[j].apply(val)).items():
                    entries.append((tgt.index(j, a2, b2), key, y))
    return SparseMat.from_entries(f, tgt.dim, src_dim, entries)


# ---------------------------------------------------------------- oracles and reports

def homology_module(field, d_in: SparseMat | None, d_out: SparseMat | None, mod: ModuleData,
                    name: str = "H") -> ModuleData:
    """ker d_out / im d_in with the induced left action of ``mod.left_alg``."""
    dim = mod.dim
    if d_out is None:
        ker = [{i: 1} for i in range(dim)]
    else:
        _, k, _ = rank_kernel_image(d_out)
        ker = list(k.vectors())
    im = list(Subspace.span(field, dim, d_in.columns).vectors()) if d_in is not None else []
    ech = Echelon(field)
    for v in im:
        ech.add(v)
    reps = [v for v in ker if ech.add(v)]
    co = Coordinates(field, dim, im + reps)
    k = len(im)
    mats = []
    for x in mod.left:
        cols = []
        for r in reps:
            c = co(x.apply(r), check=True)
            cols.append({i - k: y for i, y in c.items() if i >= k})
        mats.append(SparseMat(field, len(reps), len(reps), cols))
    return ModuleData(len(reps), left_alg=mod.left_alg, left=mats, name=name, validate=False)


def coefficient_modules(gc: GrothendieckComplex) -> list[ModuleData]:
    """H_q(A, M) (or H^q) for q ≤ Q as H_par-modules, from the column p = 0."""
    f = gc.hp.field
    Q = gc.bounds[1]
    out = []
    for q in range(Q + 1):
        N = gc.column_modules[q].module
        if gc.variant == "homological":
            d_in, d_out = gc.column_maps.get(q + 1), gc.column_maps.get(q)
        else:
            d_in, d_out = gc.column_maps.get(q - 1), gc.column_maps.get(q)
        out.append(homology_module(f, d_in, d_out, N, name=f"H_{q}(A, M)"))
    return out


def _row_edge_dims(gc: GrothendieckComplex) -> list[int]:
    """dim Λ ⊗_{Λ^e} P_q (or Hom_{Λ^e}(Λ, I^q)) for q ≤ Q, computed over Λ^e."""
    Lam = gc.smash.algebra
    env = enveloping(Lam)
    Q = gc.bounds[1]
    if gc.variant == "homological":
        res = bar_resolution(Lam, gc.module, Q)
        lam_r = bimodule_to_right_env(regular_bimodule(Lam), env)
        return [tensor_over_subalgebra(lam_r, bimodule_to_left_env(bar_term_module(res, q), env)).dim
                for q in range(Q + 1)]
    res = dual_bar_bimodule_resolution(Lam, gc.module, Q)
    lam_l = bimodule_to_left_env(regular_bimodule(Lam), env)
    return [hom_space(lam_l, bimodule_to_left_env(dual_bar_term_module(res, q), env)).dim for q in range(Q + 1)]


@dataclass
class GrothendieckReport:
    column: SSResult
    row: SSResult
    e2_oracle: dict      # (p, q) -> dim from partial Tor / Ext of the coefficient modules
    abutment: list       # dim H_n(Λ, M) or H^n(Λ, M)
    checks: list

    @property
    def passed(self):
        return all_passed(self.checks)


def grothendieck_report(gc: GrothendieckComplex, r_max: int | None = None) -> GrothendieckReport:
    from .homology import hochschild_cohomology, hochschild_homology, partial_ext, partial_tor
    from .partial import _a_bimodule_from_smash
    P, Q = gc.bounds
    hp = gc.hp
    degs = gc.valid_degrees
    col = ss_pages(gc.dc, "column", r_max, degrees=degs)
    row = ss_pages(gc.dc, "row", r_max, degrees=degs)
    checks = [Check(f"column: {c.name}", c.passed) for c in col.checks]
    checks += [Check(f"row: {c.name}", c.passed) for c in row.checks]
    checks.append(Check("both filtrations give the same totals",
                        all(col.total_dims[n] == row.total_dims[n] for n in col.total_dims)))
    homological = gc.variant == "homological"
    cp = CPrime(hp, P + 1)
    coeff = coefficient_modules(gc)
    a_bimod = _a_bimodule_from_smash(gc.smash, gc.module)
    A = gc.smash.base.algebra
    hh_a = (hochschild_homology if homological else hochschild_cohomology)(A, a_bimod, Q).dims
    checks.append(Check("coefficient modules have the Hochschild dimensions of A",
                        [c.dim for c in coeff] == hh_a, [[c.dim for c in coeff], hh_a]))
    oracle = {}
    for q, hq in enumerate(coeff):
        dims = (partial_tor if homological else partial_ext)(hp, hq, P, cp).dims
        for p, d in enumerate(dims):
            oracle[(p, q)] = d
    e2 = col.page(2).entries if len(col.pages) >= 2 else {}
    got = {pq: e2.get(pq, 0) for pq in oracle}
    checks.append(Check("column E2 equals Tor/Ext of the coefficient modules", got == oracle,
                        None if got == oracle else {"got": _pq_list(got), "expected": _pq_list(oracle)}))
    abut = (hochschild_homology if homological else hochschild_cohomology)(gc.smash.algebra, gc.module,
                                                                           max(degs)).dims
    tot = [col.total_dims[n] for n in degs]
    checks.append(Check("total homology equals Hochschild homology of the smash product", tot == abut,
                        [tot, abut]))
    einf_sum = [sum(d for (p, q), d in col.einf.items() if p + q == n) for n in degs]
    checks.append(Check("column E-infinity sums to the Hochschild dimensions", einf_sum == abut,
                        [einf_sum, abut]))
    edge = _row_edge_dims(gc)
    e1 = row.page(1).entries
    conc = all(e1[(p, q)] == 0 for p in range(1, P + 1) for q in range(Q + 1))
    edge_ok = [e1[(0, q)] for q in range(Q + 1)] == edge
    checks.append(Check("row E1 vanishes off the column p = 0", conc))
    checks.append(Check("row E1 on p = 0 is the smash-product tensor (or Hom) over the enveloping algebra",
                        edge_ok, [[e1[(0, q)] for q in range(Q + 1)], edge]))
    return GrothendieckReport(col, row, oracle, abut, checks)


def _pq_list(d: dict) -> list:
    return [{"p": p, "q": q, "dim": v} for (p, q), v in sorted(d.items())]


def report_json(rep: GrothendieckReport, gc: GrothendieckComplex, fixture: str = "") -> dict:
    entries = set(gc.valid_entries)
    degs = gc.valid_degrees
    return {
        "fixture": fixture,
        "variant": gc.variant,
        "bounds": list(gc.bounds),
        "filtrations": [rep.column.as_json(fixture, entries, degs), rep.row.as_json(fixture, entries, degs)],
        "e2_oracle": _pq_list(rep.e2_oracle),
        "abutment": rep.abutment,
        "checks": [{"name": c.name, "pass": c.passed} for c in rep.checks],
    }


# ---------------------------------------------------------------- collapse corollaries

@dataclass
class CollapseReport:
    name: str
    precondition: bool
    lhs: list
    rhs: list
    checks: list = dc_field(default_factory=list)

    @property
    def passed(self):
        return self.precondition and self.lhs == self.rhs and all_passed(self.checks)

    def as_json(self):
        return {"name": self.name, "precondition": self.precondition, "lhs": self.lhs, "rhs": self.rhs,
                "pass": self.passed, "checks": [{"name": c.name, "pass": c.passed} for c in self.checks]}


def separable_collapse_check(sm, hp, m: ModuleData, n: int) -> CollapseReport:
    """dim H_n(A#H, M) against Tor^{H_par}_n(B, M/[A,M]) when A is separable."""
    from .homology import hochschild_homology, partial_tor
    from .partial import hpar_module
    A = sm.base.algebra
    if separability_idempotent(A) is None:
        return CollapseReport("separable collapse", False, [], [])
    lhs = hochschild_homology(sm.algebra, m, n).dims
    quot = hpar_module("tensor", hp, smash=sm, module=m)
    rhs = partial_tor(hp, quot.module, n).dims
    return CollapseReport("separable collapse", True, lhs, rhs, list(quot.checks))


def transport_to_smash(hp, m: ModuleData):
    """Move an H_par-bimodule along H_par ≅ B#H; returns (sm, bimodule over B#H, checks)."""
    from .hpar import theorem48_isomorphism_check, b_partial_action
    from .partial import smash_product
    ok, hom, checks = theorem48_isomorphism_check(hp)
    if not ok:
        raise ValueError("H_par -> B#H is not an isomorphism")
    sm = smash_product(b_partial_action(hp))
    inv = _invert(hom.matrix)
    left = [m.left_matrix(inv.columns[i]) for i in range(sm.dim)]
    right = [m.right_matrix(inv.columns[i]) for i in range(sm.dim)]
    return sm, ModuleData(m.dim, left_alg=sm.algebra, left=left, right_alg=sm.algebra, right=right,
                          name=m.name, validate=False), checks


def _invert(mat: SparseMat) -> SparseMat:
    from .linalg import solve_many
    out = solve_many(mat, SparseMat.identity(mat.field, mat.rows))
    if out is None:
        raise ValueError("matrix is not invertible")
    return out


def kpar_collapse_check(hp, m: ModuleData, n: int) -> CollapseReport:
    """dim H_n^{par}(G, M/[B,M]) against dim H_n(K_par G, M) for an H_par-bimodule M."""
    from .homology import hochschild_homology, partial_tor
    from .partial import hpar_module
    sm, mt, checks = transport_to_smash(hp, m)
    quot = hpar_module("tensor", hp, smash=sm, module=mt)
    lhs = partial_tor(hp, quot.module, n).dims
    rhs = hochschild_homology(hp.algebra, m, n).dims
    return CollapseReport("partial group algebra collapse", True, lhs, rhs, list(checks) + list(quot.checks))


def global_collapse_check(sm, hp, m: ModuleData, bounds=(2, 2), gc: GrothendieckComplex | None = None
                          ) -> CollapseReport:
    """Column E² of the homological complex against classical Tor^H_p(K, H_q(A, M))."""
    from .homology import classical_tor
    if not sm.base.is_global():
        return CollapseReport("global collapse", False, [], [])
    gc = gc if gc is not None else build_homological_grothendieck(sm, hp, m, bounds)
    P, Q = gc.bounds
    col = ss_pages(gc.dc, "column", 2)
    e2 = col.page(2).entries
    hopf = hp.hopf
    lhs, rhs = [], []
    for q, hq in enumerate(coefficient_modules(gc)):
        mats = [hq.left_matrix(hp.bracket_of({h: 1})) for h in range(hopf.dim)]
        xg = ModuleData(hq.dim, left_alg=hopf.algebra, left=mats, name=hq.name)
        cl = classical_tor(hopf, xg, P).dims
        for p in range(P + 1):
            lhs.append({"p": p, "q": q, "dim": e2[(p, q)]})
            rhs.append({"p": p, "q": q, "dim": cl[p]})
    return CollapseReport("global collapse", True, lhs, rhs)
