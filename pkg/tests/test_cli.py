import json
import subprocess
import sys

import pytest

from stackval.cli import run
from stackval.gallery import FIG1, FIG2


@pytest.fixture
def files(tmp_path):
    (tmp_path / "fig2.game").write_text(FIG2)
    (tmp_path / "fig1.game").write_text(FIG1)
    return tmp_path


def call(capsys, *argv):
    code = run([str(x) for x in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_asv_value(files, capsys):
    code, out, _ = call(capsys, "asv-mp-value", "--arena", files / "fig2.game", "--vertex", "v0")
    assert code == 0
    assert out.splitlines() == ["1", "attained=false"]


def test_threshold_and_verify(files, capsys):
    code, out, _ = call(capsys, "asv-mp-threshold", "--arena", files / "fig2.game", "--vertex", "v0",
                        "--c", "1/2", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["answer"] == "Yes" and obj["certificate"]["alpha"] == "3/4"
    cert = files / "cert.json"
    cert.write_text(out)
    code, out, _ = call(capsys, "verify-witness", "--arena", files / "fig2.game", "--certificate", cert)
    assert code == 0 and "accepted" in out
    # tampering is caught
    obj["certificate"]["d"] = "2"
    cert.write_text(json.dumps(obj))
    assert call(capsys, "verify-witness", "--arena", files / "fig2.game", "--certificate", cert)[0] == 1


def test_threshold_no(files, capsys):
    code, out, _ = call(capsys, "asv-mp-threshold", "--arena", files / "fig2.game", "--c", "1")
    assert code == 1 and "No" in out


def test_decimal_rejected(files, capsys):
    code, _, err = call(capsys, "asv-mp-threshold", "--arena", files / "fig2.game", "--c", "0.5")
    assert code == 3 and "p/q" in err


def test_usage_errors(files, capsys):
    assert call(capsys, "no-such-command")[0] == 3
    assert call(capsys, "asv-mp-value")[0] == 3
    assert call(capsys, "asv-mp-value", "--arena", files / "missing.game")[0] == 3
    assert call(capsys, "asv-mp-value", "--arena", files / "fig2.game", "--vertex", "zz")[0] == 3


def test_lambda_region_membership(files, capsys):
    base = ("lambda-region", "--arena", files / "fig2.game", "--vertex", "v0")
    assert call(capsys, *base, "--c", "1/2", "--d", "1")[0] == 0
    assert call(capsys, *base, "--c", "1/2", "--d", "3/2")[0] == 1
    code, out, _ = call(capsys, *base, "--format", "json")
    assert code == 0 and "region" in json.loads(out)


def test_br_mp(files, capsys):
    strat = files / "s.json"
    strat.write_text(json.dumps({"player": 0, "memory": [0], "initial": 0, "update": [],
                                 "output": [[0, "2", "3"], [0, "3", "3"]]}))
    code, out, _ = call(capsys, "br-mp", "--arena", files / "fig1.game", "--vertex", "1",
                        "--strategy", strat, "--format", "json")
    assert code == 0 and json.loads(out)["value"] == "2"


def test_zerosum(files, capsys):
    code, out, _ = call(capsys, "zerosum", "--arena", files / "fig2.game", "--vertex", "v0",
                        "--dim", "1", "--maximizer", "1")
    assert code == 0 and out.strip() == "1"
    code, out, _ = call(capsys, "zerosum", "--arena", files / "fig2.game", "--objective", "ds",
                        "--lambda", "1/2")
    assert code == 0


def test_tds_pipeline(files, capsys):
    game = files / "tds.game"
    assert call(capsys, "gen-tds", "--a", "0", "--b", "1", "--t", "3/2", "--lambda", "2/3",
                "--out", game)[0] == 0
    strat = files / "alt.json"
    strat.write_text(json.dumps({
        "player": 0, "memory": [0, 1], "initial": 0,
        "update": [[0, "a", 1], [0, "b", 1], [1, "a", 0], [1, "b", 0]],
        "output": [[m, x, "b" if m == 0 else "a"] for m in (0, 1) for x in ("s", "a", "b")]
        + [[m, "z", "z"] for m in (0, 1)]}))
    code, out, _ = call(capsys, "ds-evaluate", "--arena", game, "--strategy", strat, "--format", "json")
    assert code == 0 and json.loads(out)["csv"] == "0"
    code, out, _ = call(capsys, "ds-gap", "--arena", game, "--vertex", "v", "--c", "4/5",
                        "--epsilon", "1/10", "--mode", "csv", "--deterministic", "--format", "json")
    assert code == 0
    verdict = files / "gap.json"
    verdict.write_text(out)
    code, out, _ = call(capsys, "verify-witness", "--arena", game, "--certificate", verdict)
    assert code == 0 and "accepted" in out


def test_partition_pipeline(files, capsys):
    game = files / "part.game"
    code, out, _ = call(capsys, "gen-partition", "--weights", "1,1,2", "--out", game, "--format", "json")
    assert code == 0 and json.loads(out)["solvable"]
    for mode in ("csv", "asv"):
        assert call(capsys, "ds-gap", "--arena", game, "--mode", mode)[0] == 0
    game = files / "bad.game"
    call(capsys, "gen-partition", "--weights", "1,3", "--out", game)
    assert call(capsys, "ds-gap", "--arena", game)[0] == 1


def test_budget_exit(files, capsys, monkeypatch):
    game = files / "tds.game"
    call(capsys, "gen-tds", "--a", "0", "--b", "1", "--t", "3/2", "--lambda", "2/3", "--out", game)
    monkeypatch.setenv("QSG_BUDGET", "10")
    code, out, _ = call(capsys, "ds-gap", "--arena", game, "--c", "4/5", "--epsilon", "1/10")
    assert code == 2
    report = json.loads(out)
    assert report["error"] == "budget" and report["budget"] == 10


def test_console_script(files):
    proc = subprocess.run([sys.executable, "-m", "stackval.cli", "asv-mp-value", "--arena",
                           str(files / "fig2.game"), "--vertex", "v0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("1")
