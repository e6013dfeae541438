"""Fixture descriptions (JSON) and the built-in corpus."""
from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from pathlib import Path

from .algebra import (
    ModuleData,
    dual_numbers,
    field_algebra,
    matrix_algebra,
    product_algebra,
    regular_bimodule,
)
from .hopf import GroupTable
from .hpar import b_partial_action, build_kpar_group
from .linalg import FieldSpec, SparseMat
from .partial import explicit_action, permutation_action, restrict_global_action, smash_product


class FixtureError(ValueError):
    """A fixture document that cannot be parsed; ``where`` names the offending field."""

    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


BUILTIN = {
    "trivial": {
        "field": "q", "group": {"cyclic": 1},
        "action": {"kind": "explicit", "algebra": {"kind": "field"}, "images": [[{"0": 1}]]},
    },
    "z2-zero": {
        "field": "q", "group": {"cyclic": 2},
        "action": {"kind": "explicit", "algebra": {"kind": "field"}, "images": [[{"0": 1}], [{}]]},
    },
    "z2-swap-global": {
        "field": "q", "group": {"cyclic": 2},
        "action": {"kind": "permutation", "n": 2, "perms": [[0, 1], [1, 0]]},
    },
    "z4-restricted": {
        "field": "q", "group": {"cyclic": 4},
        "action": {"kind": "permutation", "n": 4,
                   "perms": [[(i + g) % 4 for i in range(4)] for g in range(4)],
                   "restrict": {"0": 1, "1": 1}},
    },
    "z3-B-action": {
        "field": "q", "group": {"cyclic": 3},
        "action": {"kind": "B-action"},
        "bounds": {"max_degree": 2, "ss": [1, 1]},
    },
    "z2-f2-trivial": {
        "field": "f2", "group": {"cyclic": 2},
        "action": {"kind": "explicit", "algebra": {"kind": "field"}, "images": [[{"0": 1}], [{"0": 1}]]},
    },
}

# negative controls: parse, but fail their axiom checks
NEGATIVE = {
    "neg-pa3": {
        "field": "q", "group": {"cyclic": 2},
        "action": {"kind": "explicit", "algebra": {"kind": "field"}, "images": [[{"0": 1}], [{"0": 2}]],
                   "validate": False},
    },
}

DEFAULT_BOUNDS = {"max_degree": 3, "ss": [2, 2]}


@dataclass
class Fixture:
    name: str
    field: FieldSpec
    group: GroupTable
    doc: dict = dc_field(repr=False)
    max_degree: int = 3
    ss_bounds: tuple = (2, 2)

    @cached_property
    def hopf(self):
        return self.hp.hopf

    @cached_property
    def hp(self):
        return build_kpar_group(self.group, self.field)

    @cached_property
    def action(self):
        return _build_action(self, self.doc["action"])

    @cached_property
    def smash(self):
        return smash_product(self.action)

    @cached_property
    def module(self) -> ModuleData:
        return _build_module(self, self.doc.get("module", {"kind": "regular"}))

    @property
    def validates(self) -> bool:
        return self.doc["action"].get("validate", True)


def _field_of(doc, override):
    if override is not None:
        return override if isinstance(override, FieldSpec) else FieldSpec.parse(override)
    try:
        return FieldSpec.parse(str(doc.get("field", "q")))
    except ValueError as e:
        raise FixtureError("field", str(e)) from None


def _group_of(doc) -> GroupTable:
    g = doc.get("group")
    if g is None:
        raise FixtureError("group", "missing")
    try:
        if "cyclic" in g:
            return GroupTable.cyclic(int(g["cyclic"]))
        if g.get("name") == "klein":
            return GroupTable.klein()
        return GroupTable.from_json(g)
    except (KeyError, TypeError, ValueError) as e:
        raise FixtureError("group", str(e)) from None


def _vec(d: dict, where: str) -> dict:
    try:
        return {int(k): v for k, v in d.items()}
    except (AttributeError, ValueError):
        raise FixtureError(where, "expected an object of index: coefficient") from None


def _algebra_of(f: FieldSpec, doc: dict):
    kind = doc.get("kind", "field")
    if kind == "field":
        return field_algebra(f)
    if kind == "product":
        return product_algebra(f, int(doc["n"]))
    if kind == "dual_numbers":
        return dual_numbers(f)
    if kind == "matrix":
        return matrix_algebra(f, int(doc["n"]))
    raise FixtureError("action.algebra.kind", f"unknown algebra {kind!r}")


def _build_action(fx: Fixture, doc: dict):
    kind = doc.get("kind")
    H = fx.hopf
    if kind == "explicit":
        A = _algebra_of(fx.field, doc.get("algebra", {}))
        imgs = doc.get("images")
        if not isinstance(imgs, list) or len(imgs) != H.dim or any(len(r) != A.dim for r in imgs):
            raise FixtureError("action.images", f"need {H.dim} lists of {A.dim} vectors")
        images = [[_vec(v, f"action.images[{h}][{a}]") for a, v in enumerate(r)] for h, r in enumerate(imgs)]
        return explicit_action(H, A, images, name=fx.name, validate=doc.get("validate", True))
    if kind == "permutation":
        n = int(doc["n"])
        perms = doc.get("perms")
        if not isinstance(perms, list) or len(perms) != H.dim:
            raise FixtureError("action.perms", f"need {H.dim} permutations")
        pa = permutation_action(H, n, perms, name=fx.name)
        if "restrict" in doc:
            pa = restrict_global_action(pa, _vec(doc["restrict"], "action.restrict"), name=fx.name)
        return pa
    if kind == "B-action":
        return b_partial_action(fx.hp)
    raise FixtureError("action.kind", f"unknown action kind {kind!r}")


def _dense(f, rows, where):
    try:
        return SparseMat.from_dense(f, rows)
    except (TypeError, ValueError) as e:
        raise FixtureError(where, str(e)) from None


def _build_module(fx: Fixture, doc: dict) -> ModuleData:
    kind = doc.get("kind", "regular")
    lam = fx.smash.algebra
    if kind == "regular":
        return regular_bimodule(lam)
    if kind == "explicit":
        left = [_dense(fx.field, m, f"module.left[{i}]") for i, m in enumerate(doc["left"])]
        right = [_dense(fx.field, m, f"module.right[{i}]") for i, m in enumerate(doc["right"])]
        if len(left) != lam.dim or len(right) != lam.dim:
            raise FixtureError("module", f"need {lam.dim} left and right matrices")
        return ModuleData(left[0].rows, left_alg=lam, left=left, right_alg=lam, right=right, name="M")
    if kind == "trivial":
        # one-dimensional, both sides through a character given on the basis of A#H
        chi = doc.get("character")
        if not isinstance(chi, list) or len(chi) != lam.dim:
            raise FixtureError("module.character", f"need {lam.dim} values")
        f = fx.field
        vals = [f(c) for c in chi]
        for i in range(lam.dim):
            for j in range(lam.dim):
                prod = sum((f.mul(c, vals[k]) for k, c in lam.table[i][j].items()), f(0))
                if f(prod) != f.mul(vals[i], vals[j]):
                    raise FixtureError("module.character", f"not multiplicative at basis pair ({i}, {j})")
        if f(sum((f.mul(c, vals[k]) for k, c in lam.unit.items()), f(0))) != f(1):
            raise FixtureError("module.character", "does not send the unit to 1")
        mats = [SparseMat(f, 1, 1, [{0: v} if v else {}]) for v in vals]
        return ModuleData(1, left_alg=lam, left=mats, right_alg=lam, right=list(mats), name="K_chi")
    raise FixtureError("module.kind", f"unknown module kind {kind!r}")


def fixture_from_doc(name: str, doc: dict, field=None) -> Fixture:
    if not isinstance(doc, dict):
        raise FixtureError("document", "expected a JSON object")
    doc = copy.deepcopy(doc)
    if "action" not in doc:
        raise FixtureError("action", "missing")
    f = _field_of(doc, field)
    bounds = dict(DEFAULT_BOUNDS)
    bounds.update(doc.get("bounds", {}))
    ss = bounds["ss"]
    return Fixture(str(doc.get("name", name)), f, _group_of(doc), doc, int(bounds["max_degree"]),
                   (int(ss[0]), int(ss[1])))


def load_fixture(ref: str, field=None) -> Fixture:
    """A built-in name, a negative-control name, or a path to a JSON document."""
    if ref in BUILTIN:
        return fixture_from_doc(ref, BUILTIN[ref], field)
    if ref in NEGATIVE:
        return fixture_from_doc(ref, NEGATIVE[ref], field)
    path = Path(ref)
    if not path.exists():
        raise FixtureError("fixture", f"no built-in fixture or file named {ref!r}")
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise FixtureError(f"line {e.lineno}", e.msg) from None
    return fixture_from_doc(path.stem, doc, field)
