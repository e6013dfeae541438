"""Command-line front end: every subcommand emits one JSON report."""
from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone

from .algebra import AxiomError, Check, regular_bimodule, separability_idempotent
from .fixtures import BUILTIN, FixtureError, load_fixture
from .homology import (
    MethodDisagreement,
    global_comparison,
    hochschild_cohomology,
    hochschild_homology,
    partial_ext,
    partial_tor,
)
from .hopf import check_cocommutative, check_hopf
from .hpar import (
    closure_oracle_dim,
    kpar_dimension_formula,
    theorem48_isomorphism_check,
    validate_hpar,
)
from .linalg import FieldSpec
from .partial import PartialRepData, check_partial_action, check_partial_rep, hpar_module
from .spectral import (
    build_cohomological_grothendieck,
    build_homological_grothendieck,
    global_collapse_check,
    grothendieck_report,
    kpar_collapse_check,
    report_json,
    separable_collapse_check,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _timestamp() -> str:
    """Fixed unless SOURCE_DATE_EPOCH is set, so reports are byte-identical across runs."""
    epoch = int(os.environ.get("SOURCE_DATE_EPOCH", "0"))
    return datetime.fromtimestamp(epoch, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _checks_json(checks) -> list:
    return [c.as_json() for c in checks]


def _report(fx, command: str, checks: list, **body) -> dict:
    out = {"fixture": fx.name, "field": fx.field.name, "command": command, "timestamp": _timestamp()}
    out.update(body)
    out["checks"] = _checks_json(checks)
    out["pass"] = all(c.passed for c in checks)
    return out


# ---------------------------------------------------------------- commands

def cmd_check(fx) -> dict:
    checks: list[Check] = []
    hp = fx.hp
    hopf = hp.hopf
    checks += [Check(f"Hopf: {c.name}", c.passed, c.witness) for c in check_hopf(hopf)]
    checks.append(Check("Hopf: cocommutative", check_cocommutative(hopf)))
    checks += [Check(f"H_par: {c.name}", c.passed, c.witness) for c in validate_hpar(hp)]
    try:
        pa = fx.action
    except AxiomError as e:
        checks.append(Check(e.axiom, False, e.witness))
        return _report(fx, "check", checks)
    pa_checks = check_partial_action(pa)
    checks += pa_checks
    if all(c.passed for c in pa_checks):
        sm = fx.smash
        checks += [Check(f"smash: {c.name}", c.passed, c.witness) for c in sm.checks()]
        rep = PartialRepData(hopf, sm.algebra, sm.pi0_matrix(), validate=False)
        checks += check_partial_rep(rep)
        ok, _, t48 = theorem48_isomorphism_check(hp)
        checks += [Check(f"H_par to B#H: {c.name}", c.passed, c.witness) for c in t48]
    return _report(fx, "check", checks)


def cmd_hpar(fx) -> dict:
    hp = fx.hp
    n = fx.group.order
    checks = []
    formula = kpar_dimension_formula(n)
    checks.append(Check("dim H_par matches the closed formula", hp.dim == formula, [hp.dim, formula]))
    if n <= 4:
        oracle = closure_oracle_dim(fx.group, fx.field)
        checks.append(Check("dim H_par matches the word-closure count", hp.dim == oracle, [hp.dim, oracle]))
    checks.append(Check("dim B = 2^(|G|-1)", hp.base.algebra.dim == 2 ** (n - 1)))
    ok, _, t48 = theorem48_isomorphism_check(hp)
    checks += [Check(f"H_par to B#H: {c.name}", c.passed, c.witness) for c in t48]
    return _report(fx, "hpar", checks, dims={"hpar": hp.dim, "base": hp.base.algebra.dim, "group": n})


def cmd_homology(fx, kind: str, n: int, module: str = "base") -> dict:
    hp = fx.hp
    checks: list[Check] = []
    tables = []
    if kind == "hochschild":
        lam, m = fx.smash.algebra, fx.module
        for fn in (hochschild_homology, hochschild_cohomology):
            try:
                tables.append(fn(lam, m, n).as_json())
                checks.append(Check(f"{fn.__name__}: routes agree", True))
            except MethodDisagreement as e:
                checks.append(Check(f"{fn.__name__}: routes agree", False, str(e)))
    elif kind in ("partial-tor", "partial-ext"):
        hm = _coefficients(fx, module)
        checks += hm.checks
        fn = partial_tor if kind == "partial-tor" else partial_ext
        tables.append(fn(hp, hm.module, n).as_json())
    elif kind == "global-compare":
        pa = fx.action
        if not pa.is_global():
            raise InputError("global-compare needs a global action")
        hm = hpar_module("base", hp, pa=pa)
        out, equal = global_comparison(hp, hm.rep, n, name=pa.algebra.name or "A")
        for key, (par, cl) in sorted(out.items()):
            tables += [par.as_json(), cl.as_json()]
            checks.append(Check(f"partial and classical {key} agree", par.dims == cl.dims, [par.dims, cl.dims]))
    else:
        raise InputError(f"unknown homology kind {kind!r}")
    return _report(fx, "homology", checks, kind=kind, max_degree=n, tables=tables)


def _coefficients(fx, module: str):
    if module == "base":
        return hpar_module("base", fx.hp, pa=fx.action)
    if module == "tensor":
        return hpar_module("tensor", fx.hp, smash=fx.smash, module=fx.module)
    if module == "hom":
        return hpar_module("hom", fx.hp, smash=fx.smash, module=fx.module)
    raise InputError(f"unknown module {module!r}")


def cmd_ss(fx, variant: str, bounds: tuple) -> dict:
    build = build_homological_grothendieck if variant == "homological" else build_cohomological_grothendieck
    sm, hp, m = fx.smash, fx.hp, fx.module
    gc = build(sm, hp, m, bounds)
    rep = grothendieck_report(gc)
    ss = report_json(rep, gc, fx.name)
    checks = list(rep.checks)
    collapse = []
    n = min(bounds)
    if variant == "homological":
        if separability_idempotent(sm.base.algebra) is not None:
            collapse.append(separable_collapse_check(sm, hp, m, n))
        if sm.base.is_global():
            collapse.append(global_collapse_check(sm, hp, m, bounds, gc))
        if fx.doc["action"].get("kind") == "B-action":
            collapse.append(kpar_collapse_check(hp, regular_bimodule(hp.algebra), n))
    checks += [Check(c.name, c.passed) for c in collapse]
    return _report(fx, "ss", checks, variant=variant, ss=ss, collapse=[c.as_json() for c in collapse])


def cmd_report_all(fixtures, n: int | None, bounds: tuple | None) -> dict:
    reports = []
    for fx in fixtures:
        deg = n if n is not None else fx.max_degree
        bnd = bounds if bounds is not None else fx.ss_bounds
        reports.append(cmd_check(fx))
        reports.append(cmd_hpar(fx))
        reports.append(cmd_homology(fx, "hochschild", deg))
        reports.append(cmd_homology(fx, "partial-tor", deg))
        reports.append(cmd_homology(fx, "partial-ext", deg))
        if fx.action.is_global():
            reports.append(cmd_homology(fx, "global-compare", deg))
        for variant in ("homological", "cohomological"):
            reports.append(cmd_ss(fx, variant, bnd))
    return {"command": "report-all", "timestamp": _timestamp(), "reports": reports,
            "pass": all(r["pass"] for r in reports)}


# ---------------------------------------------------------------- argument handling

def _parse_bounds(text: str) -> tuple:
    try:
        p, q = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("bounds must look like P,Q") from None
    if p < 0 or q < 0:
        raise argparse.ArgumentTypeError("bounds must be nonnegative")
    return p, q


def _parse_field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fixture", default=None,
                        help="built-in fixture name or path to a JSON fixture (default: trivial; "
                             "report-all runs every built-in fixture)")
    common.add_argument("--field", type=_parse_field, default=None, help="override the fixture field: q, f2, f3")
    common.add_argument("--max-degree", type=int, default=None, help="homological degree cap")
    common.add_argument("--bounds", type=_parse_bounds, default=None, help="spectral-sequence bounds P,Q")
    common.add_argument("--out", default=None, help="write the JSON report here instead of stdout")

    ap = argparse.ArgumentParser(prog="parhopf", description="Partial Hopf (co)homology workbench.")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="run every axiom validator on a fixture")
    sub.add_parser("hpar", parents=[common], help="H_par and B dimensions with their oracles")
    h = sub.add_parser("homology", parents=[common], help="Hochschild, partial Tor/Ext, global comparison")
    h.add_argument("--kind", default="hochschild",
                   choices=["hochschild", "partial-tor", "partial-ext", "global-compare"])
    h.add_argument("--module", default="base", choices=["base", "tensor", "hom"],
                   help="H_par-module for partial Tor/Ext: A itself, A (x)_Ae M, or Hom_Ae(A, M)")
    s = sub.add_parser("ss", parents=[common], help="Grothendieck spectral sequence report")
    s.add_argument("--variant", default="homological", choices=["homological", "cohomological"])
    sub.add_parser("report-all", parents=[common], help="every command on every built-in fixture")
    return ap


def _emit(report: dict, out: str | None):
    text = json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    if args.max_degree is not None and args.max_degree < 0:
        print("error: --max-degree must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.command == "report-all":
            names = list(BUILTIN) if args.fixture is None else [args.fixture]
            fixtures = [load_fixture(n, args.field) for n in names]
            report = cmd_report_all(fixtures, args.max_degree, args.bounds)
        else:
            fx = load_fixture(args.fixture or "trivial", args.field)
            n = args.max_degree if args.max_degree is not None else fx.max_degree
            bounds = args.bounds if args.bounds is not None else fx.ss_bounds
            if args.command == "check":
                report = cmd_check(fx)
            elif args.command == "hpar":
                report = cmd_hpar(fx)
            elif args.command == "homology":
                report = cmd_homology(fx, args.kind, n, args.module)
            else:
                report = cmd_ss(fx, args.variant, bounds)
    except (FixtureError, InputError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except AxiomError as e:
        print(f"error: fixture fails {e.axiom} at {e.witness}", file=sys.stderr)
        return EXIT_FAIL
    _emit(report, args.out)
    return EXIT_OK if report["pass"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
