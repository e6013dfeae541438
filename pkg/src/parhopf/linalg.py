"""Exact sparse linear algebra over Q and prime fields.

Vectors are dicts ``{index: scalar}`` with no stored zeros.  Over Q scalars
are ``int`` or ``Fraction``; over F_p they are ints in ``range(p)``.
Matrices are stored by columns, so a matrix is literally the list of images
of the basis vectors.

Elimination over Q is fraction free: rows are kept as primitive integer
vectors and a pivot of absolute value 1 is preferred whenever one exists.
Ties are broken by the lowest column index, which keeps every basis
produced here reproducible.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple, Sequence


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The base field: ``p == 0`` means Q, otherwise F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def kind(self) -> str:
        return "rational" if self.p == 0 else "prime"

    @property
    def name(self) -> str:
        return "q" if self.p == 0 else f"f{self.p}"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip().lower()
        if t in ("q", "qq", "rational"):
            return cls(0)
        if t.startswith("f") and t[1:].isdigit():
            return cls(int(t[1:]))
        raise ValueError(f"unknown field {text!r}")

    def __call__(self, x):
        """Coerce an int or Fraction into the field."""
        if self.p == 0:
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            return int(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p == 0:
            if x == 0:
                raise ZeroDivisionError
            return _qn(Fraction(1) / x)
        return pow(x, -1, self.p)

    def div(self, a, b):
        if self.p == 0:
            return _qn(Fraction(a) / b)
        return a * pow(b, -1, self.p) % self.p

    def mul(self, a, b):
        if self.p == 0:
            return _qn(a * b)
        return a * b % self.p

    def add(self, a, b):
        if self.p == 0:
            return _qn(a + b)
        return (a + b) % self.p

    def neg(self, a):
        return -a if self.p == 0 else (-a) % self.p

    def __repr__(self):
        return f"FieldSpec({self.name})"


QQ = FieldSpec(0)
F2 = FieldSpec(2)
F3 = FieldSpec(3)


def _qn(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


# ---------------------------------------------------------------- vectors

def vadd(field: FieldSpec, acc: dict, vec: dict, c=1) -> dict:
    """acc += c * vec, in place."""
    p = field.p
    if p:
        for k, x in vec.items():
            y = (acc.get(k, 0) + c * x) % p
            if y:
                acc[k] = y
            else:
                acc.pop(k, None)
    else:
        for k, x in vec.items():
            y = acc.get(k, 0) + c * x
            if y:
                acc[k] = _qn(y)
            else:
                acc.pop(k, None)
    return acc


def vscale(field: FieldSpec, vec: dict, c) -> dict:
    if not c:
        return {}
    p = field.p
    if p:
        return {k: x * c % p for k, x in vec.items()}
    return {k: _qn(x * c) for k, x in vec.items()}


def vlincomb(field: FieldSpec, terms: Iterable[tuple]) -> dict:
    """Sum of c * vec over (c, vec) pairs."""
    acc: dict = {}
    for c, vec in terms:
        if c:
            vadd(field, acc, vec, c)
    return acc


# ---------------------------------------------------------------- matrices

class SparseMat:
    """A rows x cols matrix over ``field`` stored as a list of column dicts."""

    __slots__ = ("field", "rows", "cols", "columns")

    def __init__(self, field: FieldSpec, rows: int, cols: int, columns=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if columns is None:
            columns = [{} for _ in range(cols)]
        if len(columns) != cols:
            raise ValueError("column count mismatch")
        self.columns = columns

    # constructors
    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, [{i: 1} for i in range(n)])

    @classmethod
    def from_dense(cls, field, data: Sequence[Sequence], cols: int | None = None):
        nrows = len(data)
        ncols = len(data[0]) if nrows else (cols or 0)
        columns = [{} for _ in range(ncols)]
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            for j, x in enumerate(row):
                x = field(x)
                if x:
                    columns[j][i] = x
        return cls(field, nrows, ncols, columns)

    @classmethod
    def from_columns(cls, field, rows, columns: Sequence[dict]):
        cols = [dict(c) for c in columns]
        for c in cols:
            for i in c:
                if not 0 <= i < rows:
                    raise ValueError("row index out of range")
        return cls(field, rows, len(cols), cols)

    @classmethod
    def from_entries(cls, field, rows, cols, entries):
        m = cls(field, rows, cols)
        for i, j, x in entries:
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError("index out of range")
            if (i in m.columns[j]):
                raise ValueError("duplicate entry")
            x = field(x)
            if x:
                m.columns[j][i] = x
        return m

    # views
    @property
    def entries(self):
        out = []
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                out.append((i, j, x))
        out.sort()
        return out

    def nnz(self):
        return sum(len(c) for c in self.columns)

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                out[i][j] = x
        return out

    def row_dicts(self):
        rows = [{} for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                rows[i][j] = x
        return rows

    def transpose(self):
        return SparseMat(self.field, self.cols, self.rows, self.row_dicts())

    def apply(self, vec: dict) -> dict:
        acc: dict = {}
        cols = self.columns
        for j, x in vec.items():
            c = cols[j]
            if c:
                vadd(self.field, acc, c, x)
        return acc

    def __matmul__(self, other: "SparseMat") -> "SparseMat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        return SparseMat(self.field, self.rows, other.cols,
                         [self.apply(c) for c in other.columns])

    def __add__(self, other):
        self._same_shape(other)
        return SparseMat(self.field, self.rows, self.cols,
                         [vadd(self.field, dict(a), b) for a, b in zip(self.columns, other.columns)])

    def __sub__(self, other):
        self._same_shape(other)
        return SparseMat(self.field, self.rows, self.cols,
                         [vadd(self.field, dict(a), b, -1) for a, b in zip(self.columns, other.columns)])

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = self.field(c)
        return SparseMat(self.field, self.rows, self.cols, [vscale(self.field, a, c) for a in self.columns])

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def is_zero(self):
        return all(not c for c in self.columns)

    def __eq__(self, other):
        if not isinstance(other, SparseMat):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.columns == other.columns

    def __repr__(self):
        return f"SparseMat({self.rows}x{self.cols}, nnz={self.nnz()}, {self.field.name})"

    def select_columns(self, idx: Sequence[int]):
        return SparseMat(self.field, self.rows, len(idx), [dict(self.columns[j]) for j in idx])


def hstack(field, rows, blocks: Sequence[SparseMat]) -> SparseMat:
    cols = []
    for b in blocks:
        if b.rows != rows:
            raise ValueError("row mismatch in hstack")
        cols.extend(dict(c) for c in b.columns)
    return SparseMat(field, rows, len(cols), cols)


def block_matrix(field, row_dims: Sequence[int], col_dims: Sequence[int], blocks: dict) -> SparseMat:
    """Assemble a block matrix from ``{(i, j): SparseMat}``; missing blocks are zero."""
    roff = [0]
    for d in row_dims:
        roff.append(roff[-1] + d)
    coff = [0]
    for d in col_dims:
        coff.append(coff[-1] + d)
    columns = [{} for _ in range(coff[-1])]
    for (bi, bj), m in blocks.items():
        if (m.rows, m.cols) != (row_dims[bi], col_dims[bj]):
            raise ValueError(f"block {(bi, bj)} has shape {m.rows}x{m.cols}")
        r0, c0 = roff[bi], coff[bj]
        for j, col in enumerate(m.columns):
            if col:
                tgt = columns[c0 + j]
                for i, x in col.items():
                    vadd(field, tgt, {r0 + i: x})
    return SparseMat(field, roff[-1], coff[-1], columns)


def kron(a: SparseMat, b: SparseMat) -> SparseMat:
    """Kronecker product with the left factor major (index i*dim_b + j)."""
    f = a.field
    cols = []
    for ca in a.columns:
        for cb in b.columns:
            col = {}
            for i, x in ca.items():
                base = i * b.rows
                for k, y in cb.items():
                    col[base + k] = f.mul(x, y)
            cols.append(col)
    return SparseMat(f, a.rows * b.rows, a.cols * b.cols, cols)


# ---------------------------------------------------------------- elimination

def _primitive(vec: dict) -> dict:
    g = 0
    for x in vec.values():
        g = gcd(g, x)
        if g == 1:
            return vec
    if g > 1:
        return {k: x // g for k, x in vec.items()}
    return vec


def _integral(vec: dict) -> dict:
    """Scale a rational vector to a primitive integer vector."""
    den = 1
    for x in vec.values():
        if isinstance(x, Fraction):
            d = x.denominator
            den = den * d // gcd(den, d)
    if den != 1:
        vec = {k: int(x * den) for k, x in vec.items()}
    else:
        vec = {k: int(x) for k, x in vec.items()}
    return _primitive(vec)


class Echelon:
    """Incrementally grown echelon basis.

    Row ``i`` vanishes at the pivots of all rows added before it, so a vector
    is reduced by eliminating pivots in insertion order.  Columns at or
    beyond ``avoid_from`` only become pivots when nothing else is available
    (used for augmented systems).
    """

    def __init__(self, field: FieldSpec, avoid_from: int | None = None):
        self.field = field
        self.rows: list[dict] = []
        self.pivcols: list[int] = []
        self.pivots: dict[int, int] = {}
        self.avoid_from = avoid_from
        self._rref = None

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Reduce ``vec`` modulo the span (over Q the result is a scalar multiple)."""
        p = self.field.p
        if p:
            v = {k: x % p for k, x in vec.items() if x % p}
        else:
            v = _integral(vec)
        pivots = self.pivots
        heap = [pivots[k] for k in v if k in pivots]
        if not heap:
            return v
        heapq.heapify(heap)
        rows = self.rows
        pivcols = self.pivcols
        seen = set(heap)
        steps = 0
        while heap:
            i = heapq.heappop(heap)
            piv = pivcols[i]
            c = v.get(piv)
            if not c:
                continue
            row = rows[i]
            if p:
                for k, x in row.items():
                    y = (v.get(k, 0) - c * x) % p
                    if y:
                        v[k] = y
                        if k in pivots:
                            j = pivots[k]
                            if j not in seen:
                                seen.add(j)
                                heapq.heappush(heap, j)
                    else:
                        v.pop(k, None)
            else:
                a = row[piv]
                if a == 1 or a == -1:
                    cc = c * a
                else:
                    g = gcd(a, c)
                    sa, cc = a // g, c // g
                    if a < 0:
                        sa, cc = -sa, -cc
                    for k in v:
                        v[k] *= sa
                for k, x in row.items():
                    y = v.get(k, 0) - cc * x
                    if y:
                        v[k] = y
                        if k in pivots:
                            j = pivots[k]
                            if j not in seen:
                                seen.add(j)
                                heapq.heappush(heap, j)
                    else:
                        v.pop(k, None)
                steps += 1
                if steps % 8 == 0:
                    v = _primitive(v)
        if not p and v:
            v = _primitive(v)
        return v

    def _choose_pivot(self, v: dict) -> int:
        lim = self.avoid_from
        if self.field.p:
            cands = [k for k in v if lim is None or k < lim]
            return min(cands) if cands else min(v)
        best = None
        for k, x in v.items():
            if lim is not None and k >= lim:
                continue
            key = (abs(x) != 1, k)
            if best is None or key < best[0]:
                best = (key, k)
        return min(v) if best is None else best[1]

    def add(self, vec: dict) -> bool:
        """Add ``vec``; returns True iff it was independent of the current span."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = self._choose_pivot(v)
        if self.field.p:
            inv = pow(v[piv], -1, self.field.p)
            if inv != 1:
                v = {k: x * inv % self.field.p for k, x in v.items()}
        elif v[piv] < 0:
            v = {k: -x for k, x in v.items()}
        self.pivots[piv] = len(self.rows)
        self.rows.append(v)
        self.pivcols.append(piv)
        self._rref = None
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def rref(self) -> list[dict]:
        """Fully reduced rows (pivot entry 1), in insertion order."""
        if self._rref is not None:
            return self._rref
        f = self.field
        p = f.p
        n = len(self.rows)
        out: list = [None] * n
        for i in range(n - 1, -1, -1):
            piv = self.pivcols[i]
            row = self.rows[i]
            a = row[piv]
            if p:
                r = dict(row)
            else:
                r = {k: _qn(Fraction(x, a)) for k, x in row.items()}
            # clear later pivots using already reduced rows
            later = sorted(self.pivots[k] for k in row if k in self.pivots and self.pivots[k] > i)
            for j in later:
                c = r.get(self.pivcols[j])
                if c:
                    vadd(f, r, out[j], -c)
            out[i] = r
        self._rref = out
        return out


# ---------------------------------------------------------------- subspaces

class Subspace:
    """A subspace of K^ambient_dim with an explicit basis (one column per vector)."""

    __slots__ = ("ambient_dim", "basis", "_ech")

    def __init__(self, ambient_dim: int, basis: SparseMat):
        if basis.rows != ambient_dim:
            raise ValueError("basis rows must equal ambient dimension")
        self.ambient_dim = ambient_dim
        self.basis = basis
        self._ech = None

    @classmethod
    def span(cls, field, ambient_dim, vectors: Iterable[dict]) -> "Subspace":
        ech = Echelon(field)
        kept = []
        for v in vectors:
            if ech.add(v):
                kept.append(dict(v))
        s = cls(ambient_dim, SparseMat.from_columns(field, ambient_dim, kept))
        s._ech = ech
        return s

    @classmethod
    def zero(cls, field, ambient_dim):
        return cls(ambient_dim, SparseMat(field, ambient_dim, 0))

    @classmethod
    def full(cls, field, ambient_dim):
        return cls(ambient_dim, SparseMat.identity(field, ambient_dim))

    @property
    def field(self):
        return self.basis.field

    @property
    def dim(self):
        return self.basis.cols

    def vectors(self):
        return self.basis.columns

    def echelon(self) -> Echelon:
        if self._ech is None:
            ech = Echelon(self.field)
            for v in self.basis.columns:
                ech.add(v)
            self._ech = ech
        return self._ech

    def contains(self, vec: dict) -> bool:
        return self.echelon().contains(vec)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient_dim, list(self.vectors()) + list(other.vectors()))

    def image_under(self, m: SparseMat) -> "Subspace":
        return Subspace.span(self.field, m.rows, (m.apply(v) for v in self.vectors()))

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.ambient_dim})"


# ---------------------------------------------------------------- operations

def rank(m: SparseMat) -> int:
    ech = Echelon(m.field)
    r = 0
    for c in m.columns:
        if ech.add(c):
            r += 1
            if r == m.rows:
                break
    return r


def rank_kernel_image(m: SparseMat) -> tuple[int, Subspace, Subspace]:
    """Rank, kernel and image of ``m`` by row elimination."""
    f = m.field
    ech = Echelon(f)
    rows = m.row_dicts()
    order = sorted(range(m.rows), key=lambda i: (len(rows[i]), i))
    for i in order:
        if rows[i]:
            ech.add(rows[i])
    rr = ech.rref()
    pivset = set(ech.pivcols)
    kernel_cols = []
    for fcol in range(m.cols):
        if fcol in pivset:
            continue
        v = {fcol: 1}
        for piv, row in zip(ech.pivcols, rr):
            x = row.get(fcol)
            if x:
                v[piv] = f.neg(x)
        kernel_cols.append(v)
    kernel = Subspace(m.cols, SparseMat.from_columns(f, m.cols, kernel_cols))
    pivs = sorted(pivset)
    image = Subspace(m.rows, SparseMat.from_columns(f, m.rows, [m.columns[c] for c in pivs]))
    return len(pivs), kernel, image


def kernel(m: SparseMat) -> Subspace:
    return rank_kernel_image(m)[1]


def image(m: SparseMat) -> Subspace:
    return Subspace.span(m.field, m.rows, m.columns)


class Quotient(NamedTuple):
    dim: int
    projection: SparseMat
    section: SparseMat


def quotient_from_echelon(field, ambient_dim: int, ech: Echelon) -> Quotient:
    rr = ech.rref()
    pivset = set(ech.pivcols)
    free = [j for j in range(ambient_dim) if j not in pivset]
    idx = {j: t for t, j in enumerate(free)}
    proj_cols: list[dict] = [None] * ambient_dim  # type: ignore
    for j in free:
        proj_cols[j] = {idx[j]: 1}
    for piv, row in zip(ech.pivcols, rr):
        col = {}
        for k, x in row.items():
            if k != piv:
                col[idx[k]] = field.neg(x)
        proj_cols[piv] = col
    q = len(free)
    projection = SparseMat(field, q, ambient_dim, proj_cols)
    section = SparseMat(field, ambient_dim, q, [{j: 1} for j in free])
    return Quotient(q, projection, section)


def quotient_space(ambient_dim: int, sub: Subspace) -> Quotient:
    """ambient / sub with a projection and a section (projection @ section = id)."""
    if sub.ambient_dim != ambient_dim:
        raise ValueError(f"subspace lives in dim {sub.ambient_dim}, not {ambient_dim}")
    return quotient_from_echelon(sub.field, ambient_dim, sub.echelon())


def quotient_by_vectors(field, ambient_dim: int, vectors: Iterable[dict]) -> Quotient:
    ech = Echelon(field)
    for v in vectors:
        if v:
            ech.add(v)
    return quotient_from_echelon(field, ambient_dim, ech)


def solve(m: SparseMat, b: dict | Sequence) -> dict | None:
    """Some x with m x = b, or None if the system is inconsistent."""
    f = m.field
    if not isinstance(b, dict):
        if len(b) != m.rows:
            raise ValueError("right-hand side has wrong length")
        b = {i: f(x) for i, x in enumerate(b) if f(x)}
    elif any(not 0 <= i < m.rows for i in b):
        raise ValueError("right-hand side index out of range")
    aug = m.cols
    ech = Echelon(f, avoid_from=aug)
    rows = m.row_dicts()
    for i in range(m.rows):
        r = dict(rows[i])
        if i in b:
            r[aug] = b[i]
        if r:
            ech.add(r)
    if aug in ech.pivots:
        return None
    x = {}
    for piv, row in zip(ech.pivcols, ech.rref()):
        y = row.get(aug)
        if y:
            x[piv] = y
    return x


def solve_many(m: SparseMat, rhs: SparseMat) -> SparseMat | None:
    """X with m X = rhs column by column, or None if any column is inconsistent."""
    cols = []
    for c in rhs.columns:
        x = solve(m, c)
        if x is None:
            return None
        cols.append(x)
    return SparseMat(m.field, m.cols, rhs.cols, cols)


def homology_dim(d_in: SparseMat | None, d_out: SparseMat | None, dim: int) -> int:
    """dim ker(d_out) - rank(d_in) at a space of dimension ``dim``."""
    k = dim - (rank(d_out) if d_out is not None and d_out.cols else 0)
    r = rank(d_in) if d_in is not None and d_in.cols else 0
    return k - r


class Coordinates:
    """Coordinates with respect to a list of independent vectors."""

    def __init__(self, field: FieldSpec, ambient_dim: int, vectors: Sequence[dict]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.vectors = [dict(v) for v in vectors]
        n = ambient_dim
        ech = Echelon(field, avoid_from=n)
        for i, v in enumerate(self.vectors):
            r = dict(v)
            r[n + i] = 1
            ech.add(r)
        rr = ech.rref()
        self._pivrow = {}
        for piv, row in zip(ech.pivcols, rr):
            if piv >= n:
                raise ValueError("vectors are linearly dependent")
            self._pivrow[piv] = {k - n: x for k, x in row.items() if k >= n}

    @property
    def dim(self):
        return len(self.vectors)

    def __call__(self, vec: dict, check: bool = False) -> dict:
        out: dict = {}
        for k, x in vec.items():
            t = self._pivrow.get(k)
            if t:
                vadd(self.field, out, t, x)
        if check:
            back = vlincomb(self.field, ((c, self.vectors[j]) for j, c in out.items()))
            if vadd(self.field, dict(back), vec, -1):
                raise ValueError("vector not in span")
        return out

    def matrix_of(self, images: Sequence[dict], check: bool = False) -> SparseMat:
        return SparseMat(self.field, self.dim, len(images), [self(v, check) for v in images])
