"""The partial "Hopf" algebra H_par, its base algebra B and the universal
partial representation h -> [h].

For a group algebra KG the algebra is built on the normal form (S, g) with
S ⊆ G∖{1} and g ∈ S ∪ {1}; subsets are bitmasks over the non-identity
elements in increasing order.  Every basis element is also remembered as a
word in brackets, which is what the universal factorization evaluates.
"""
from __future__ import annotations

from itertools import product
from typing import Sequence

from .algebra import (
    AlgebraHom,
    AxiomError,
    Check,
    FiniteAlgebra,
    ModuleData,
    Subalgebra,
    all_passed,
    subalgebra_generated,
)
from .hopf import GroupTable, HopfData, group_algebra
from .linalg import Coordinates, Echelon, FieldSpec, SparseMat, rank, vadd, vlincomb
from .partial import (
    PartialActionData,
    PartialRepData,
    check_partial_rep,
    check_pr_axioms,
    smash_product,
)


class HParAlgebra:
    """H_par together with [_], h -> e_h, B and the involution 𝒮."""

    def __init__(self, hopf: HopfData, algebra: FiniteAlgebra, bracket: SparseMat,
                 words: Sequence[list], labels: Sequence | None = None, name: str = ""):
        self.hopf = hopf
        self.algebra = algebra
        self.field = algebra.field
        self.bracket = bracket
        # words[i] = list of (coefficient, tuple of H basis indices) summing to basis i
        self.words = [list(w) for w in words]
        self.labels = list(labels) if labels is not None else None
        self.name = name or f"{hopf.name}_par"
        self.e_map = SparseMat(self.field, algebra.dim, hopf.dim,
                               [self.e_of({h: 1}) for h in range(hopf.dim)])
        self.base: Subalgebra = subalgebra_generated(algebra, [c for c in self.e_map.columns if c],
                                                     name=f"B({self.name})")
        self.involution: SparseMat = self._involution()

    @property
    def dim(self):
        return self.algebra.dim

    def bracket_of(self, h: dict) -> dict:
        return self.bracket.apply(h)

    def e_of(self, h: dict) -> dict:
        """e_h = [h1][S h2]."""
        f = self.field
        acc: dict = {}
        for i, c in h.items():
            for x, y, d in self.hopf.sweedler(i):
                vadd(f, acc, self.algebra.mul(self.bracket_of({x: 1}), self.bracket_of(self.hopf.S({y: 1}))),
                     f.mul(c, d))
        return acc

    def word_value(self, word: Sequence[int]) -> dict:
        out = self.algebra.one
        for letter in word:
            out = self.algebra.mul(out, self.bracket.columns[letter])
        return out

    def _involution(self) -> SparseMat:
        # 𝒮([h1]...[hk]) = [S hk]...[S h1]
        f = self.field
        cols = []
        for w in self.words:
            acc: dict = {}
            for c, word in w:
                val = self.algebra.one
                for letter in reversed(word):
                    val = self.algebra.mul(val, self.bracket_of(self.hopf.S({letter: 1})))
                vadd(f, acc, val, c)
            cols.append(acc)
        return SparseMat(f, self.dim, self.dim, cols)

    def S_par(self, x: dict) -> dict:
        return self.involution.apply(x)

    def __repr__(self):
        return f"HParAlgebra({self.name}, dim={self.dim}, dim B={self.base.algebra.dim})"


# ---------------------------------------------------------------- group route

def kpar_basis(g: GroupTable) -> list[tuple[int, int]]:
    """(mask, g) pairs in the order (g ascending, mask ascending)."""
    e = g.identity
    nonid = [x for x in range(g.order) if x != e]
    bit = {x: 1 << i for i, x in enumerate(nonid)}
    out = []
    for x in range(g.order):
        for mask in range(1 << len(nonid)):
            if x == e or mask & bit[x]:
                out.append((mask, x))
    return out


def build_kpar_group(g: GroupTable, f: FieldSpec, validate: bool = True) -> HParAlgebra:
    hopf = group_algebra(g, f)
    e = g.identity
    nonid = [x for x in range(g.order) if x != e]
    bit = {x: 1 << i for i, x in enumerate(nonid)}
    bit[e] = 0
    basis = kpar_basis(g)
    index = {b: i for i, b in enumerate(basis)}

    def members(mask):
        return [x for x in nonid if mask & bit[x]]

    def mul(b1, b2):
        (s, x), (t, y) = b1, b2
        mask = s | bit[x] | bit[g.mul(x, y)]
        for z in members(t):
            mask |= bit[g.mul(x, z)]
        return (mask, g.mul(x, y))

    n = len(basis)
    table = [[{index[mul(basis[i], basis[j])]: 1} for j in range(n)] for i in range(n)]
    alg = FiniteAlgebra(f, n, table, {index[(0, e)]: 1}, name=f"K_par{g.name or 'G'}",
                        generators=[{index[(bit[x], x)]: 1} for x in nonid], validate=validate)
    bracket = SparseMat(f, n, g.order, [{index[(bit[x], x)]: 1} for x in range(g.order)])
    words = []
    for mask, x in basis:
        word: list[int] = []
        for s in members(mask):
            if s != x:
                word += [s, g.inv(s)]
        if x != e:
            word.append(x)
        words.append([(1, tuple(word))])
    hp = HParAlgebra(hopf, alg, bracket, words, labels=basis, name=f"K_par{g.name or 'G'}")
    hp.group = g
    if validate:
        failed = [c for c in validate_hpar(hp) if not c.passed]
        if failed:
            raise AxiomError(failed[0].name, failed[0].witness)
    return hp


def kpar_dimension_formula(n: int) -> int:
    if n == 1:
        return 1
    return 2 ** (n - 1) + (n - 1) * 2 ** (n - 2)


# ---------------------------------------------------------------- validation

RELATION_NAMES = {
    "PR1": "relation (2)",
    "PR2": "relation (3)",
    "PR3": "relation (4)",
    "PR4": "relation (5)",
    "PR5": "relation (6)",
}


def bracket_relation_checks(hopf: HopfData, algebra: FiniteAlgebra, bracket: SparseMat) -> list[Check]:
    """Relations (1)-(6) for the bracket map, multiplying left to right."""
    out = [Check("relation (1)", bracket.rows == algebra.dim and bracket.cols == hopf.dim)]

    def mul(xs):
        v = xs[0]
        for x in xs[1:]:
            v = algebra.mul(v, x)
        return v

    for c in check_pr_axioms(hopf, bracket.apply, mul, algebra.unit):
        out.append(Check(RELATION_NAMES[c.name], c.passed, c.witness))
    return out


def bprop_checks(hp: HParAlgebra) -> list[Check]:
    H = hp.hopf
    A = hp.algebra
    f = hp.field
    n = H.dim
    E = lambda u: hp.e_of(u)
    Br = hp.bracket_of
    out = []
    bad = {k: None for k in ("i", "ii", "iii", "iv")}
    for h, k in product(range(n), repeat=2):
        hv, kv = {h: 1}, {k: 1}
        sw = H.sweedler(h)
        if bad["i"] is None:
            lhs = A.mul(E(kv), Br(hv))
            rhs = vlincomb(f, ((c, A.mul(Br({y: 1}), E(H.algebra.mul(H.S({x: 1}), kv)))) for x, y, c in sw))
            if lhs != rhs:
                bad["i"] = [h, k]
        if bad["ii"] is None:
            lhs = A.mul(Br(hv), E(kv))
            rhs = vlincomb(f, ((c, A.mul(E(H.algebra.table[x][k]), Br({y: 1}))) for x, y, c in sw))
            if lhs != rhs:
                bad["ii"] = [h, k]
        if bad["iv"] is None and A.mul(E(hv), E(kv)) != A.mul(E(kv), E(hv)):
            bad["iv"] = [h, k]
    for h in range(n):
        lhs = vlincomb(f, ((c, A.mul(E({x: 1}), E({y: 1}))) for x, y, c in H.sweedler(h)))
        if lhs != E({h: 1}):
            bad["iii"] = [h]
            break
    for k in ("i", "ii", "iii", "iv"):
        out.append(Check(f"e-map identity ({k})", bad[k] is None, bad[k]))
    return out


def base_checks(hp: HParAlgebra) -> list[Check]:
    B = hp.base
    out = [Check("B is commutative", B.algebra.is_commutative())]
    inv = hp.involution
    ok = all(inv.apply(v) == v for v in B.inclusion.matrix.columns)
    out.append(Check("involution is the identity on B", ok))
    ok = inv @ inv == SparseMat.identity(hp.field, hp.dim)
    out.append(Check("involution squares to the identity", ok))
    A = hp.algebra
    bad = None
    for i, j in product(range(hp.dim), repeat=2):
        if inv.apply(A.table[i][j]) != A.mul(inv.columns[j], inv.columns[i]):
            bad = [i, j]
            break
    out.append(Check("involution is an anti-homomorphism", bad is None, bad))
    ok = all(inv.apply(hp.bracket_of({h: 1})) == hp.bracket_of(hp.hopf.S({h: 1})) for h in range(hp.hopf.dim))
    out.append(Check("involution sends [h] to [S h]", ok))
    return out


def words_check(hp: HParAlgebra) -> Check:
    bad = None
    for i, w in enumerate(hp.words):
        v = vlincomb(hp.field, ((c, hp.word_value(word)) for c, word in w))
        if v != {i: 1}:
            bad = [i]
            break
    return Check("basis words evaluate to the basis", bad is None, bad)


def validate_hpar(hp: HParAlgebra) -> list[Check]:
    out = bracket_relation_checks(hp.hopf, hp.algebra, hp.bracket)
    out += bprop_checks(hp)
    out.append(words_check(hp))
    out += base_checks(hp)
    if getattr(hp, "group", None) is not None:
        out.append(Check("dim B = 2^(|G|-1)", hp.base.algebra.dim == 2 ** (hp.group.order - 1)))
    return out


# ---------------------------------------------------------------- generic route

def words_by_closure(hopf: HopfData, algebra: FiniteAlgebra, bracket: SparseMat, max_len: int = 64):
    """Express each basis element as a combination of bracket words (BFS by length)."""
    f = algebra.field
    n = algebra.dim
    # echelon with tracking: vector ⊕ word-coordinate
    found: list[tuple[dict, tuple]] = []
    ech = Echelon(f)
    frontier = [((), algebra.one)]
    if ech.add(algebra.one):
        found.append((algebra.one, ()))
    for _ in range(max_len):
        nxt = []
        for word, val in frontier:
            for h in range(hopf.dim):
                v = algebra.mul(val, bracket.columns[h])
                if v and ech.add(v):
                    found.append((v, word + (h,)))
                    nxt.append((word + (h,), v))
        if not nxt:
            break
        frontier = nxt
    if len(found) != n:
        raise AxiomError("bracket generates H_par", None, f"brackets span only {len(found)} of {n} dimensions")
    co = Coordinates(f, n, [v for v, _ in found])
    words = []
    for i in range(n):
        c = co({i: 1}, check=True)
        words.append([(x, found[j][1]) for j, x in sorted(c.items())])
    return words


def from_presentation(dim: int, table, unit: dict, bracket: SparseMat, hopf: HopfData, name: str = "") -> HParAlgebra:
    """Accept a user model of H_par after validating every relation.

    Relations are checked before associativity so that a corrupted structure
    constant is reported against the relation it breaks.
    """
    f = hopf.field
    alg = FiniteAlgebra(f, dim, table, unit, name=name or "H_par model", validate=False)
    failed = [c for c in bracket_relation_checks(hopf, alg, bracket) if not c.passed]
    if failed:
        # for group algebras (3)/(5) and (4)/(6) are the same equations up to k -> k^-1,
        # so every broken relation is named, not just the first
        err = AxiomError(failed[0].name, failed[0].witness,
                         "failing relations: " + ", ".join(f"{c.name} at {c.witness}" for c in failed))
        err.failed = [(c.name, c.witness) for c in failed]
        raise err
    alg.validate()
    words = words_by_closure(hopf, alg, bracket)
    hp = HParAlgebra(hopf, alg, bracket, words, name=name or "H_par model")
    for c in validate_hpar(hp):
        if not c.passed:
            raise AxiomError(c.name, c.witness)
    return hp


# ---------------------------------------------------------------- universal property

def extend_matrix_rep(hp: HParAlgebra, mats: Sequence[SparseMat], op: bool = False) -> list[SparseMat]:
    """Matrices of π̂ on every basis element, π̂ = value of the basis words."""
    f = hp.field
    dim = mats[0].rows
    ident = SparseMat.identity(f, dim)
    cache: dict = {(): ident}

    def word_mat(word):
        if word in cache:
            return cache[word]
        prev = word_mat(word[:-1])
        m = mats[word[-1]]
        val = (m @ prev) if op else (prev @ m)
        cache[word] = val
        return val

    out = []
    for w in hp.words:
        acc = SparseMat(f, dim, dim)
        for c, word in w:
            acc = acc + word_mat(tuple(word)).scale(c)
        out.append(acc)
    return out


def universal_factorization(hp: HParAlgebra, rep: PartialRepData) -> AlgebraHom:
    """The algebra map π̂: H_par -> target with π̂([h]) = π(h)."""
    failed = [c for c in check_partial_rep(rep) if not c.passed]
    if failed:
        raise AxiomError(failed[0].name, failed[0].witness)
    T = rep.target
    f = hp.field
    cols = []
    for w in hp.words:
        acc: dict = {}
        for c, word in w:
            val = T.one
            for letter in word:
                val = T.mul(val, rep.pi.columns[letter])
            vadd(f, acc, val, c)
        cols.append(acc)
    hom = AlgebraHom(hp.algebra, T, SparseMat(f, T.dim, hp.dim, cols))
    for h in range(hp.hopf.dim):
        if hom(hp.bracket_of({h: 1})) != rep.pi.columns[h]:
            raise AxiomError("factorization through the bracket", [h])
    return hom


def b_partial_action(hp: HParAlgebra) -> PartialActionData:
    """h·b = [h1] b [S h2] on B."""
    from .partial import b_left_matrix
    B = hp.base.algebra
    cols = []
    for h in range(hp.hopf.dim):
        m = b_left_matrix(hp, {h: 1})
        cols.extend(m.columns)
    return PartialActionData(hp.hopf, B, SparseMat(hp.field, B.dim, hp.hopf.dim * B.dim, cols),
                             name=f"{hp.name} on B")


def theorem48_isomorphism_check(hp: HParAlgebra):
    """H_par -> B#H from h -> 1_B#h: returns (ok, hom, checks)."""
    checks: list[Check] = []
    try:
        pa = b_partial_action(hp)
    except AxiomError as e:
        return False, None, [Check("partial action on B", False, e.witness)]
    checks.append(Check("partial action on B", True))
    sm = smash_product(pa)
    checks.extend(sm.checks())
    rep = PartialRepData(hp.hopf, sm.algebra, sm.pi0_matrix())
    hom = universal_factorization(hp, rep)
    checks.append(Check("map is an algebra homomorphism", True))
    bij = hom.is_bijective()
    checks.append(Check("map is bijective", bij, [hp.dim, sm.dim, rank(hom.matrix)]))
    # left B-linearity: π̂(b x) = (b#1) π̂(x)
    B = hp.base
    one_h = hp.hopf.algebra.unit
    ok = True
    for j in range(B.algebra.dim):
        b = B.inclusion.matrix.columns[j]
        bb = sm.elem({j: 1}, one_h)
        for i in range(hp.dim):
            if hom(hp.algebra.mul(b, {i: 1})) != sm.algebra.mul(bb, hom({i: 1})):
                ok = False
                break
        if not ok:
            break
    checks.append(Check("map is left B-linear", ok))
    return all_passed(checks), hom, checks


# ---------------------------------------------------------------- side change

def twist_left_to_right(hp: HParAlgebra, m: ModuleData) -> ModuleData:
    """x ◁ y := 𝒮(y) ▷ x."""
    mats = [m.left_matrix(hp.involution.columns[i]) for i in range(hp.dim)]
    return ModuleData(m.dim, right_alg=hp.algebra, right=mats, name=f"{m.name} (twisted)")


def twist_right_to_left(hp: HParAlgebra, m: ModuleData) -> ModuleData:
    mats = [m.right_matrix(hp.involution.columns[i]) for i in range(hp.dim)]
    return ModuleData(m.dim, left_alg=hp.algebra, left=mats, name=f"{m.name} (twisted)")


# ---------------------------------------------------------------- independent oracle

def closure_oracle_dim(g: GroupTable, f: FieldSpec, word_len: int = 6, relation_len: int | None = None) -> int:
    """Dimension of the span of bracket words modulo relations (2)-(6), by brute force.

    Words in the letters [x], x ≠ 1, of length ≤ ``word_len`` are counted.
    Every u·r·v of length ≤ ``relation_len`` (default word_len + 1) with r a
    defining relation is imposed as a linear constraint; the extra letter of
    room lets long words reduce through one longer intermediate word.
    """
    max_len = word_len + 1 if relation_len is None else relation_len
    span_len = word_len
    e = g.identity
    letters = [x for x in range(g.order) if x != e]
    words = [()]
    layer = [()]
    for _ in range(max_len):
        layer = [w + (x,) for w in layer for x in letters]
        words.extend(layer)
    index = {w: i for i, w in enumerate(words)}

    def norm(word):
        return tuple(x for x in word if x != e)

    def rel_terms():
        inv = g.inv
        m = g.mul
        for h in range(g.order):
            for k in range(g.order):
                yield [(1, (h, k, inv(k))), (-1, (m(h, k), inv(k)))]
                yield [(1, (h, inv(h), k)), (-1, (h, m(inv(h), k)))]
                yield [(1, (h, inv(k), k)), (-1, (m(h, inv(k)), k))]
                yield [(1, (inv(h), h, k)), (-1, (inv(h), m(h, k)))]

    rels = list(rel_terms())
    ech = Echelon(f)
    by_len: dict[int, list] = {}
    for w in words:
        by_len.setdefault(len(w), []).append(w)
    for r in rels:
        normed = [(c, norm(t)) for c, t in r]
        longest = max(len(t) for _, t in normed)
        for lu in range(max_len - longest + 1):
            for lv in range(max_len - longest - lu + 1):
                for u in by_len.get(lu, []):
                    for v in by_len.get(lv, []):
                        vec: dict = {}
                        for c, t in normed:
                            vadd(f, vec, {index[u + t + v]: c})
                        if vec:
                            ech.add(vec)
    ech2 = Echelon(f)
    for row in ech.rows:
        ech2.add(row)
    base = len(ech2)
    for w in words:
        if len(w) <= span_len:
            ech2.add({index[w]: 1})
    return len(ech2) - base
