"""CLI: verb behavior, determinism, JSON round-trips, exit codes."""
from __future__ import annotations

import json

from padelic.cli import run


def run_cli(argv, capsys):
    code = run(argv)
    out = capsys.readouterr().out
    return code, out


def test_ordering_example(capsys):
    code, out = run_cli(
        ["ordering", "--set", "p=2; balls: 0+p^1, 1+p^1", "--length", "4"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["points"] == [0, 1, 2, 3]
    assert obj["w"] == [0, 0, 1, 1]


def test_charideal_example(capsys):
    code, out = run_cli(["charideal", "--adelic", "default=Zp", "--degree", "4"], capsys)
    assert code == 0
    assert json.loads(out)["D"] == 24


def test_charideal_pzp_reports_not_fg(capsys):
    code, out = run_cli(["charideal", "--adelic", "default=pZp", "--degree", "2"], capsys)
    assert code == 0
    assert json.loads(out)["finitely_generated"] is False


def test_member_example(capsys):
    code, out = run_cli(
        ["member", "--poly", "1/2*x^2-1/2*x", "--adelic", "default=Zp"], capsys)
    assert code == 0
    assert json.loads(out)["member"] is True


def test_member_false(capsys):
    code, out = run_cli(
        ["member", "--poly", "1/2*x", "--adelic", "default=Zp"], capsys)
    assert code == 0
    assert json.loads(out)["member"] is False


def test_basis_verb(capsys):
    code, out = run_cli(["basis", "--adelic", "default=Zp", "--degree", "3"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["lc_denominators"] == [1, 1, 2, 6]


def test_expand_verb(tmp_path, capsys):
    req = tmp_path / "req.json"
    req.write_text(json.dumps({
        "p": 2, "set": {"p": 2, "balls": [{"center": 0, "k": 0}]},
        "m": 2, "table": {"0": 0, "1": 1, "2": 4, "3": 9}, "N": 5}))
    code, out = run_cli(["expand", "--request", str(req)], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["certified"] is True
    assert obj["coeffs"][:3] == [0, 1, 2]


def test_approx_verb(tmp_path, capsys):
    req = tmp_path / "req.json"
    req.write_text(json.dumps({
        "set": {"default": "Zp", "tracked": {}},
        "targets": {"2": {"phi": {"p": 2, "set": {"p": 2, "balls": [{"center": 0, "k": 0}]},
                                  "m": 1, "table": {"0": 0, "1": 1}, "N": 4},
                          "k": 1}}}))
    code, out = run_cli(["approx", "--request", str(req)], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["certificate"]["member"] is True


def test_adelic_ordering_verb(capsys):
    code, out = run_cli(
        ["adelic-ordering", "--adelic", "default=Zp", "--length", "5"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["exceptions"][4] == [2, 3]


def test_scale_verb(tmp_path, capsys):
    req = tmp_path / "req.json"
    req.write_text(json.dumps(
        {"components": {"2": [[{"num": 1, "den": 2}, 1]], "3": [[0, 1]]}}))
    code, out = run_cli(["scale", "--request", str(req)], capsys)
    assert code == 0
    assert json.loads(out)["d"] == 2


def test_determinism(capsys):
    argv = ["basis", "--adelic", "default=Zp; p=2; balls: 0+p^1", "--degree", "4"]
    _, out1 = run_cli(argv, capsys)
    _, out2 = run_cli(argv, capsys)
    assert out1 == out2


def test_validation_exit_code(capsys):
    code, out = run_cli(["ordering", "--set", "p=2; balls:", "--length", "3"], capsys)
    assert code == 2
    assert "error" in json.loads(out)
    code, _ = run_cli(["charideal", "--degree", "2"], capsys)  # missing --adelic
    assert code == 2


def test_diagnostic_exit_code(capsys):
    # two 2-adically close points need more digits than allowed
    code, out = run_cli(
        ["ordering", "--set", "p=2; finite: 0, 4096", "--length", "2",
         "--precision", "4"], capsys)
    assert code == 3
    assert json.loads(out)["error"] == "PrecisionExhausted"


def test_pzp_adelic_ordering_rejected(capsys):
    code, out = run_cli(
        ["adelic-ordering", "--adelic", "default=pZp", "--length", "4"], capsys)
    assert code == 2
    assert json.loads(out)["error"] == "NoAdelicOrdering"


def test_out_flag(tmp_path, capsys):
    target = tmp_path / "out.json"
    code = run(["charideal", "--adelic", "default=Zp", "--degree", "3",
                "--out", str(target)])
    assert code == 0
    assert json.loads(target.read_text())["D"] == 6
