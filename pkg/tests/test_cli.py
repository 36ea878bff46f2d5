from __future__ import annotations

import csv
import json
import subprocess
import sys

import pytest

from orbit_gate.cli import main
from orbit_gate.schemas import RESULTS


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_check_examples(capsys):
    code, data, err = run(capsys, "check", "rankin-selberg", "--pi-t", "3,2", "--tau-t", "2,2")
    assert code == 0 and data["pass"] is True
    assert data["inputs_transposed"]["pi"] == {"lambda": [2, 2, 1], "lambda_t": [3, 2]}
    assert "RankinSelberg" in err
    code, data, _ = run(capsys, "check", "ginzburg-rallis", "--pi", "4,2")
    assert code == 3 and data["pass"] is False


def test_lr_examples(capsys):
    code, data, _ = run(capsys, "lr", "--lambda", "3,2,1", "--mu", "2,1", "--nu", "2,1")
    assert code == 0 and data["coefficient"] == 2
    code, data, _ = run(capsys, "lr-support", "--mu", "1,1", "--nu", "1,1")
    assert data["support"] == [[2, 2], [2, 1, 1], [1, 1, 1, 1]]


def test_envelope(capsys):
    _, data, _ = run(capsys, "scan", "shalika", "--n", "1", "--field", "3", "--seed", "7")
    assert data["tool_version"] and data["command"] == "scan shalika"
    assert data["seed"] == 7 and "workers" not in data["inputs"]
    assert data["status"] == "pass" and data["mode"] == "exhaustive"


def test_invalid_inputs_exit_2(capsys):
    assert run(capsys, "check", "shalika", "--pi", "3,x")[0] == 2
    assert run(capsys, "check", "shalika", "--pi", "3")[0] == 2
    assert run(capsys, "check", "bessel", "--pi", "3", "--tau", "1,1", "--family-pi", "Sp:3")[0] == 2
    assert run(capsys, "theta", "witness", "--l1", "3", "--l2", "1,1,1")[0] == 2
    assert run(capsys, "scan", "klyachko", "--n", "1")[0] == 2
    assert run(capsys, "lr", "--mu", "1")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_every_command_has_schema(capsys):
    for command in RESULTS:
        argv = command.split() + ["--schema"]
        code, data, _ = run(capsys, *argv)
        assert code == 0 and data["title"] == f"orbit-gate {command}"
        assert set(data["required"]) == {"tool_version", "command", "inputs", "seed"}


def test_scan_is_byte_identical_across_workers(capsys):
    outs = []
    for w in ("1", "4", "8"):
        main(["scan", "klyachko", "--n", "1", "--k", "2", "--field", "5", "--budget", "50000",
              "--workers", w])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1] == outs[2]


def test_scan_plot(tmp_path, capsys):
    png = tmp_path / "h.png"
    code, data, _ = run(capsys, "scan", "torus", "--field", "5", "--plot", str(png))
    assert code == 0 and png.stat().st_size > 0
    assert {tuple(r["type"]) for r in data["jordan_type_histogram"]} == {(2,), (1, 1)}


def test_oracles_and_theta(capsys):
    code, data, _ = run(capsys, "oracle", "quot", "--trials", "200", "--size", "6", "--seed", "1")
    assert code == 0 and data["violations"] == 0
    code, data, _ = run(capsys, "oracle", "interlace", "--lam", "2,1", "--lamp", "3,2,1")
    assert code == 0 and data["jordan_type"] == [3, 2, 1] and data["round_trip"]
    code, data, _ = run(capsys, "theta", "witness", "--l1", "2,1", "--l2", "2,2")
    assert code == 0 and data["type_YX"] == [2, 1] and data["type_XY"] == [2, 2]
    code, data, _ = run(capsys, "theta", "max-match", "--l1", "2,1", "--dim-w", "5")
    assert data["max_match"] == [3, 2]
    code, data, _ = run(capsys, "theta", "scan", "--dim-v", "2", "--dim-w", "2")
    assert code == 0 and data["match_set_equal"]


def test_dim_estimate(capsys):
    code, data, _ = run(capsys, "dim-estimate", "torus")
    assert code == 0 and data["estimate"] == 1 and data["status"] == "pass"
    code, data, _ = run(capsys, "dim-estimate", "pardim", "--lambda", "1", "--lambda-prime", "3")
    assert code == 3 and data["status"] == "inconclusive"
    code, data, _ = run(capsys, "dim-estimate", "theta", "--l1", "1", "--l2", "2")
    assert code == 0 and data["predicted"] == 3


def test_jordan_command(tmp_path, capsys):
    code, data, _ = run(capsys, "jordan", "--matrix", "[[0,1,0],[0,0,1],[0,0,0]]")
    assert code == 0 and data["jordan_type"] == [3] and data["power_ranks"][:3] == [3, 2, 1]
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"rows": [[1, 1], [1, 1]], "field": "F2"}))
    code, data, _ = run(capsys, "jordan", "--matrix", str(path))
    assert code == 0 and data["jordan_type"] == [2]
    code, _, _ = run(capsys, "jordan", "--matrix", "[[1,0],[0,0]]")
    assert code == 2


def test_same_invocation_same_bytes(capsys):
    argv = ["scan", "whittaker", "--weights", "2,0,-2", "--field", "Q", "--budget", "500"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


@pytest.mark.slow
def test_report_writes_files(tmp_path, capsys):
    code, data, _ = run(capsys, "report", "--out", str(tmp_path), "--budget", "4096")
    assert code == 0 and data["status"] == "pass"
    for name in data["files"]:
        assert (tmp_path / name).stat().st_size > 0
    rows = list(csv.DictReader(open(tmp_path / "summary.csv")))
    assert rows and {"kind", "label", "status"} <= set(rows[0])
    body = json.loads((tmp_path / "report.json").read_text())
    assert body["scans"] and body["dimensions"]


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "orbit_gate", "lr", "--lambda", "2", "--mu", "1",
                          "--nu", "1"], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["coefficient"] == 1
