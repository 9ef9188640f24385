import json

import pytest

from ksclass.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_koebe_passes(capsys):
    code, out, _ = run(capsys, "check", "--f", "koebe", "--g", "koebe", "--k", "1",
                       "--lambda", "0", "--mu", "0", "--A", "1", "--B", "-1")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "pass"
    assert set(report) >= {"verdict", "margin", "witness", "checks", "grid", "order", "semantics"}
    assert len(report["witness"]) == 2
    names = [c["name"] for c in report["checks"]]
    assert names[0].startswith("starlike_order") and names[1].startswith("subordinate_moebius")


def test_check_fails_outside_class(capsys, tmp_path):
    bad = tmp_path / "f.json"
    run(capsys, "catalog", "koebe", "--order", "2048", "--out", str(bad))
    code, out, _ = run(capsys, "check", "--f", str(bad), "--A", "0.5", "--B", "0")
    assert code == 1
    assert json.loads(out)["verdict"] == "fail"


def test_parameter_order_violation_is_usage_error(capsys):
    code, _, err = run(capsys, "check", "--f", "koebe", "--k", "1", "--lambda", "0.5", "--mu", "0.7")
    assert code == 2
    assert "InvariantViolation" in err


@pytest.mark.parametrize("argv", [
    ["check", "--f", "koebe", "--A", "0", "--B", "0.5"],
    ["check", "--f", "no_such_series"],
    ["check", "--f", "koebe", "--grid-radii", "0.5,1.2"],
    ["fs", "--f", "koebe", "--d1", "3"],
])
def test_bad_inputs_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_malformed_json_exits_2(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert run(capsys, "check", "--f", str(path))[0] == 2


@pytest.mark.parametrize("order", ["4", "5000"])
def test_order_out_of_range(capsys, order):
    with pytest.raises(SystemExit) as exc:
        main(["check", "--f", "koebe", "--order", order])
    assert exc.value.code == 2


def test_catalog_roundtrip(capsys, tmp_path):
    path = tmp_path / "g.json"
    assert run(capsys, "catalog", "gen_koebe", "--alpha", "0.5", "--order", "8", "--out", str(path))[0] == 0
    data = json.loads(path.read_text())
    assert data["order"] == 8 and data["coeffs"][3] == [1.0, 0.0]
    code, out, _ = run(capsys, "catalog", "catalog:moebius(1,-1)", "--order", "8")
    assert code == 0 and json.loads(out)["coeffs"][2] == [2.0, 0.0]


def test_synth_then_bounds(capsys, tmp_path):
    member = tmp_path / "m.json"
    code, _, _ = run(capsys, "synth", "--k", "2", "--lambda", "0.5", "--mu", "0.5", "--A", "0.8",
                     "--B", "-0.6", "--order", "64", "--seed", "7", "--out", str(member))
    assert code == 0
    data = json.loads(member.read_text())
    assert data["meta"]["k"] == 2 and data["meta"]["seed"] == 7
    code, out, _ = run(capsys, "bounds", "--member", str(member), "--nmax", "16")
    assert code == 0
    rows = json.loads(out)
    assert [r["n"] for r in rows] == list(range(2, 17))
    assert all(r["slack"] >= 0 for r in rows)


def test_synth_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        run(capsys, "synth", "--k", "3", "--order", "32", "--seed", "1", "--out", str(path))
    assert a.read_bytes() == b.read_bytes()


def test_synth_member_certifies(capsys, tmp_path):
    member = tmp_path / "m.json"
    run(capsys, "synth", "--k", "1", "--lambda", "1", "--mu", "0.5", "--g", "koebe", "--out", str(member))
    code, out, _ = run(capsys, "check", "--f", str(member), "--g", "koebe", "--k", "1",
                       "--lambda", "1", "--mu", "0.5")
    assert code == 0, out


def test_bounds_detects_violation(capsys):
    code, out, _ = run(capsys, "bounds", "--f", "koebe", "--A", "0.5", "--B", "0", "--nmax", "4")
    assert code == 1
    assert min(r["slack"] for r in json.loads(out)) < 0


def test_bounds_requires_series(capsys):
    assert run(capsys, "bounds")[0] == 2


def test_fs_report(capsys):
    code, out, _ = run(capsys, "fs", "--f", "koebe", "--delta", "0")
    report = json.loads(out)
    assert code == 0
    assert report["functional"] == pytest.approx(3.0)
    assert report["bound"] == pytest.approx(3.0)
    assert "printed-formula" in report["caveats"]


def test_sufficient(capsys, tmp_path):
    f = tmp_path / "f.json"
    f.write_text(json.dumps({"order": 2, "coeffs": [[0, 0], [1, 0], [0.5, 0]], "tag": "normalized"}))
    code, out, _ = run(capsys, "sufficient", "--f", str(f))
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    f.write_text(json.dumps({"order": 2, "coeffs": [[0, 0], [1, 0], [0.8, 0]], "tag": "normalized"}))
    assert run(capsys, "sufficient", "--f", str(f))[0] == 1


def test_suite_zero_trials(capsys):
    code, out, _ = run(capsys, "suite", "--trials", "0")
    report = json.loads(out)
    assert code == 0
    assert report["properties"] == [] and report["all_passed"]


def test_suite_report_is_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(capsys, "suite", "--trials", "2", "--seed", "5", "--out", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    rows = json.loads(a.read_text())["properties"]
    assert all({"name", "trials", "passed", "failed", "worst_slack"} <= set(r) for r in rows)
