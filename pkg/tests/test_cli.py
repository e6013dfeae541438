import json

import pytest

from parhopf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    report = json.loads(cap.out) if cap.out.strip() else None
    return code, report, cap.err


def test_check_passes_on_global_fixture(capsys):
    code, rep, _ = run(capsys, "check", "--fixture", "z2-swap-global")
    assert code == 0 and rep["pass"]
    assert rep["fixture"] == "z2-swap-global"
    names = [c["name"] for c in rep["checks"]]
    assert len(names) == len(set(names))
    assert {"PA1", "PA2", "PA3", "PA4"} <= set(names)


def test_trivial_fixture_is_default(capsys):
    code, rep, _ = run(capsys, "check")
    assert code == 0 and rep["fixture"] == "trivial"


def test_negative_control_exits_one_with_witness(capsys):
    code, rep, _ = run(capsys, "check", "--fixture", "neg-pa3")
    assert code == 1 and not rep["pass"]
    pa3 = next(c for c in rep["checks"] if c["name"] == "PA3")
    assert not pa3["pass"] and pa3["witness"] is not None


def test_corrupted_lambda_in_a_file(tmp_path, capsys):
    doc = {"field": "q", "group": {"cyclic": 2},
           "action": {"kind": "explicit", "algebra": {"kind": "product", "n": 2},
                      "images": [[{"0": 1}, {"1": 1}], [{"1": 1}, {"0": 1, "1": 1}]], "validate": False}}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, rep, _ = run(capsys, "check", "--fixture", str(path))
    assert code == 1
    assert any(not c["pass"] for c in rep["checks"])


def test_malformed_json_reports_line(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "field": "q",\n  "group": oops\n}\n')
    code, rep, err = run(capsys, "check", "--fixture", str(path))
    assert code == 2 and rep is None
    assert "line 3" in err


@pytest.mark.parametrize("argv", [
    ["check", "--fixture", "no-such-fixture"],
    ["ss", "--bounds", "2"],
    ["ss", "--bounds", "-1,2"],
    ["hpar", "--field", "f4"],
    ["homology", "--max-degree", "-1"],
    ["homology", "--kind", "global-compare", "--fixture", "z4-restricted"],
    ["frobnicate"],
])
def test_input_errors_exit_two(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_missing_group_field_is_named(tmp_path, capsys):
    path = tmp_path / "nogroup.json"
    path.write_text(json.dumps({"action": {"kind": "B-action"}}))
    code, _, err = run(capsys, "check", "--fixture", str(path))
    assert code == 2 and "group" in err


def test_partial_tor_over_f2(capsys):
    code, rep, _ = run(capsys, "homology", "--fixture", "z2-f2-trivial", "--kind", "partial-tor", "--max-degree", "3")
    assert code == 0
    assert rep["tables"][0]["dims"] == [1, 1, 1, 1]


def test_trivial_hochschild(capsys):
    code, rep, _ = run(capsys, "homology", "--max-degree", "2")
    assert code == 0
    assert [t["dims"] for t in rep["tables"]] == [[1, 0, 0], [1, 0, 0]]


def test_global_compare_over_both_fields(capsys):
    for field, dims in (("q", [1, 0, 0, 0]), ("f2", [1, 1, 1, 1])):
        code, rep, _ = run(capsys, "homology", "--fixture", "z2-f2-trivial", "--field", field,
                           "--kind", "global-compare", "--max-degree", "3")
        assert code == 0 and rep["field"] == field
        assert all(t["dims"] == dims for t in rep["tables"])


def test_field_override(capsys):
    _, rep_q, _ = run(capsys, "hpar", "--fixture", "z2-swap-global")
    _, rep_f, _ = run(capsys, "hpar", "--fixture", "z2-swap-global", "--field", "f3")
    assert rep_q["field"] != rep_f["field"]
    assert rep_q["dims"] == rep_f["dims"] == {"hpar": 3, "base": 2, "group": 2}


def test_repeat_runs_are_byte_identical(capsys, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        assert main(["homology", "--fixture", "z4-restricted", "--kind", "partial-tor", "--max-degree", "2",
                     "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["timestamp"] == "1970-01-01T00:00:00Z"


def test_source_date_epoch(capsys, monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "86400")
    _, rep, _ = run(capsys, "check")
    assert rep["timestamp"] == "1970-01-02T00:00:00Z"


@pytest.mark.parametrize("name,variant", [("z2-swap-global", "homological"), ("z2-zero", "homological"),
                                          ("trivial", "cohomological")])
def test_ss_command(capsys, name, variant):
    code, rep, _ = run(capsys, "ss", "--fixture", name, "--variant", variant)
    assert code == 0 and rep["pass"]
    ss = rep["ss"]
    assert ss["variant"] == variant
    if name == "z2-zero":
        assert all(e["dim"] <= 1 for f in ss["filtrations"] for pg in f["pages"] for e in pg["entries"])
    if name == "z2-swap-global":
        assert {c["name"] for c in rep["collapse"]} == {"separable collapse", "global collapse"}


def test_report_all_single_fixture(capsys):
    code, rep, _ = run(capsys, "report-all", "--fixture", "trivial")
    assert code == 0 and rep["pass"]
    assert [r["command"] for r in rep["reports"]][:2] == ["check", "hpar"]


def _characters(alg, f):
    """All algebra maps alg -> F_p, by enumeration."""
    import itertools
    out = []
    for vals in itertools.product(range(f.p), repeat=alg.dim):
        ev = lambda v: sum(c * vals[k] for k, c in v.items()) % f.p  # noqa: E731
        if ev(alg.unit) != 1:
            continue
        if all(ev(alg.table[i][j]) == vals[i] * vals[j] % f.p for i in range(alg.dim) for j in range(alg.dim)):
            out.append(list(vals))
    return out


def test_trivial_module_through_a_character(tmp_path, capsys):
    from parhopf.fixtures import BUILTIN, load_fixture
    from parhopf.linalg import F2
    lam = load_fixture("z2-f2-trivial").smash.algebra
    chars = _characters(lam, F2)
    assert len(chars) == 1  # F2[Z2] is local
    doc = dict(BUILTIN["z2-f2-trivial"], module={"kind": "trivial", "character": chars[0]})
    path = tmp_path / "triv.json"
    path.write_text(json.dumps(doc))
    code, rep, _ = run(capsys, "homology", "--fixture", str(path), "--max-degree", "3")
    # HH_n(kG, k) is group homology H_n(Z2, F2)
    assert code == 0 and [t["dims"] for t in rep["tables"]] == [[1, 1, 1, 1]] * 2
    doc["module"]["character"] = [1, 0]
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "homology", "--fixture", str(path))
    assert code == 2 and "character" in err
