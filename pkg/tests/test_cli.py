import csv

import pytest

from wfemu import cli
from wfemu.cli import EXIT_CAPACITY, EXIT_OK, EXIT_PARSE, EXIT_USAGE, main, parse_range


@pytest.fixture
def bell(tmp_path):
    p = tmp_path / "bell.txt"
    p.write_text("qubits 2\nH 0\nCX 0 1\n")
    return p


def test_parse_range():
    assert parse_range("3..6") == [3, 4, 5, 6]
    assert parse_range("5") == [5]
    assert parse_range("2,4..5") == [2, 4, 5]
    with pytest.raises(cli.UsageError):
        parse_range("a..b")


def test_run_writes_outputs(bell, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["run", str(bell), "--format", "fx16", "--out-dir", str(out)]) == EXIT_OK
    amps = list(csv.DictReader((out / "bell.amplitudes.csv").open()))
    assert len(amps) == 4 and float(amps[3]["prob"]) == pytest.approx(0.5, abs=1e-4)
    acc = list(csv.DictReader((out / "bell.accuracy.csv").open()))
    assert acc[0]["format"] == "fx16" and float(acc[0]["fidelity"]) == pytest.approx(1, abs=1e-3)
    cost = list(csv.DictReader((out / "bell.cost.csv").open()))
    assert int(cost[0]["cycles"]) == 4 + 2
    assert "fidelity=" in capsys.readouterr().out


def test_env_defaults(bell, tmp_path, monkeypatch):
    monkeypatch.setenv("WFEMU_FORMAT", "fp16")
    monkeypatch.setenv("WFEMU_OUTDIR", str(tmp_path / "env"))
    assert main(["run", str(bell)]) == EXIT_OK
    acc = (tmp_path / "env" / "bell.accuracy.csv").read_text()
    assert ",fp16," in acc


def test_parse_error_exit(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("qubits 2\nH 0\nCX 0 0\n")
    assert main(["run", str(p)]) == EXIT_PARSE
    assert "line 3" in capsys.readouterr().err


def test_capacity_exit(tmp_path):
    p = tmp_path / "big.txt"
    p.write_text("qubits 18\nH 0\n")
    assert main(["run", str(p), "--format", "fx32", "--out-dir", str(tmp_path)]) == EXIT_CAPACITY
    assert main(["psr", "--n", "18", "--format", "fx24"]) == EXIT_CAPACITY


def test_usage_exit(capsys):
    with pytest.raises(SystemExit) as e:
        main(["bogus"])
    assert e.value.code == EXIT_USAGE
    assert main(["bench", "qft", "--n", "x"]) == EXIT_USAGE
    assert main(["bench", "qft", "--n", "3", "--formats", "fx8"]) == EXIT_USAGE


def test_bench(tmp_path, capsys):
    rc = main(["bench", "qft", "--n", "2..3", "--formats", "fx16,fp32",
               "--out-dir", str(tmp_path), "--markdown", "t.md"])
    assert rc == EXIT_OK
    rows = list(csv.DictReader((tmp_path / "bench_qft.csv").open()))
    assert [(r["n"], r["format"]) for r in rows] == [("2", "fx16"), ("2", "fp32"), ("3", "fx16"), ("3", "fp32")]
    assert (tmp_path / "t.md").read_text().startswith("| task |")


def test_bench_cost_only_large_n(tmp_path):
    rc = main(["bench", "qft", "--n", "17", "--formats", "fx32", "--no-accuracy", "--out-dir", str(tmp_path)])
    assert rc == EXIT_OK
    (row,) = csv.DictReader((tmp_path / "bench_qft.csv").open())
    assert row["fidelity"] == "" and float(row["time_s"]) == pytest.approx(2.8089, abs=1e-4)


def test_rqc_then_run(tmp_path):
    circ = tmp_path / "r.txt"
    assert main(["rqc", "--n", "3", "--depth", "4", "--seed", "5", "--out", str(circ)]) == EXIT_OK
    assert circ.read_text().startswith("qubits 3\n")
    assert main(["run", str(circ), "--out-dir", str(tmp_path)]) == EXIT_OK


def test_psr_session_count(tmp_path, capsys):
    rc = main(["psr", "--n", "2", "--iters", "3", "--format", "fx32", "--out-dir", str(tmp_path)])
    assert rc == EXIT_OK
    assert "emulator sessions: 39" in capsys.readouterr().out
    assert (tmp_path / "psr_n2_fx32.csv").exists()


def test_mse_alarm(tmp_path, capsys, monkeypatch):
    monkeypatch.setattr(cli, "MSE_ALARM", -1.0)
    p = tmp_path / "h.txt"
    p.write_text("qubits 1\nH 0\n")
    main(["run", str(p), "--format", "fp16", "--out-dir", str(tmp_path)])
    assert "WARNING" in capsys.readouterr().out
