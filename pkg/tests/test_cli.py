import json

import pytest

from curvhom import cli


def run_cli(tmp_path, command, scenario=None, *extra):
    args = [command]
    if scenario is not None:
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps(scenario))
        args += ["--scenario", str(path)]
    out = tmp_path / "report.json"
    args += ["--out", str(out), *extra]
    code = cli.main(args)
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report, out


def test_ext_basic(tmp_path):
    code, rep, out = run_cli(tmp_path, "ext-basic", {"command": "ext-basic"})
    assert code == 0
    assert rep["result"]["ext"] == [1, 59, 84, 1]
    meta = json.loads((tmp_path / "report.json.meta.json").read_text())
    assert "started" in meta and "started" not in out.read_text()


def test_gm_check(tmp_path):
    code, rep, _ = run_cli(tmp_path, "gm-check", {"command": "gm-check", "family": "x^3 - t*x"})
    assert code == 0 and rep["result"]["flat"] and rep["result"]["residue"] == 0


def test_family_scan_and_csv(tmp_path):
    csv = tmp_path / "scan.csv"
    code, rep, _ = run_cli(tmp_path, "family-scan",
                           {"command": "family-scan", "family": "x^3 - t*x", "grid": [0, 1, 2, -1]},
                           "--csv", str(csv))
    assert code == 0 and rep["result"]["dimension"] == 2
    assert csv.read_text().startswith("t,dim_even,dim_odd,stable")


def test_family_scan_jump_is_violation(tmp_path):
    code, rep, _ = run_cli(tmp_path, "family-scan", {"family": "x^2 + t*x^3", "grid": [0, 1]})
    assert code == 4 and rep["status"] == "fail"


def test_unstable_exit_code(tmp_path):
    # truncation far too small to see the Milnor algebra of x^5
    code, rep, _ = run_cli(tmp_path, "dcrit", {"potential": "x^5"}, "--trunc", "2")
    assert code == 3 and rep["status"] == "unstable"


def test_unknown_fields_are_usage_errors(tmp_path):
    code, rep, _ = run_cli(tmp_path, "dcrit", {"potential": "x^3", "bogus": 1})
    assert code == 2 and rep is None


def test_mismatched_command_is_usage_error(tmp_path):
    code, _, _ = run_cli(tmp_path, "dcrit", {"command": "hp"})
    assert code == 2


def test_bad_expression_is_usage_error(tmp_path):
    code, _, _ = run_cli(tmp_path, "twisted-derham", {"potential": "x^^2"})
    assert code == 2


def test_invalid_mf_is_usage_error(tmp_path):
    code, _, _ = run_cli(tmp_path, "mf-end", {"mf": {"f": "x^2", "ranks": [1, 1], "d0": [["x"]], "d1": [["x^2"]]}})
    assert code == 2


@pytest.mark.parametrize("command,scenario,key,value", [
    ("mf-end", {"mf": {"f": "x^2", "ranks": [1, 1], "d0": [["x"]], "d1": [["x"]]}}, "even", 1),
    ("twisted-derham", {"potential": "x^3"}, "total", 2),
    ("hkr-check", {"potential": "x^2"}, "holds", True),
    ("hp", {"potential": "x^2"}, "total", 1),
    ("dcrit", {"potential": "x^3"}, "cohomology", {"-1": 0, "0": 2}),
    ("bar-tor", {"algebra": {"variables": ["x"], "trunc": 1}}, "window", 6),
    ("ss-demo", {"algebra": {"variables": ["x"], "trunc": 1}}, "degenerate_at", 0),
    ("hochschild-check", {"potential": "x^2"}, "holds", True),
    ("lemma-ax", {"random": {"count": 3}, "negative_control": True}, "negative_controls", 2),
    ("lemma-fg", {"random": {"count": 1}}, "trunc", 4),
])
def test_subcommands(tmp_path, command, scenario, key, value):
    code, rep, _ = run_cli(tmp_path, command, scenario, "--bar-window", "4") if command in ("hp", "hochschild-check") \
        else run_cli(tmp_path, command, scenario)
    assert code == 0, rep
    assert rep["result"][key] == value


def test_determinism(tmp_path):
    scenario = {"command": "family-scan", "family": "x^3 - t*x", "grid": [0, 1]}
    a = tmp_path / "a"
    b = tmp_path / "b"
    a.mkdir()
    b.mkdir()
    run_cli(a, "family-scan", scenario)
    run_cli(b, "family-scan", scenario)
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()


def test_stdout_output(capsys):
    assert cli.main(["ext-basic"]) == 0
    out = capsys.readouterr().out
    assert json.loads(out)["status"] == "pass"


def test_environment_truncation_default(monkeypatch):
    monkeypatch.setenv("CURVHOM_TRUNC", "5")
    args = cli.build_parser().parse_args(["dcrit"])
    assert cli.effective_settings("dcrit", {}, args)["trunc"] == 5
    args = cli.build_parser().parse_args(["dcrit", "--trunc", "7"])
    assert cli.effective_settings("dcrit", {"trunc": 6}, args)["trunc"] == 7
