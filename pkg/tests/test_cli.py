import json
import subprocess
import sys

import pytest

from locbeam.cli import main, parse_config_file
from locbeam.harness import read_records


def test_run_csv(tmp_path, capsys):
    out = tmp_path / "r.csv"
    assert main(["run", "--trials", "2", "--seed", "42", "--out", str(out)]) == 0
    recs = read_records(out)
    assert len(recs) == 6 and recs[0].seed == 42
    assert "CsLocalized" in capsys.readouterr().err


def test_run_to_stdout(capsys):
    assert main(["run", "--trials", "1", "--seed", "1"]) == 0
    assert capsys.readouterr().out.startswith("trial,strategy,gain,switch_count,fallback_used,seed\n")


def test_run_json_with_flags(tmp_path):
    out = tmp_path / "r.json"
    rc = main(["run", "--trials", "2", "--seed", "5", "--format", "json", "--out", str(out),
               "--snr-db", "10", "--switch-convention", "pair", "--paths", "3", "--rician-k", "4",
               "--max-loc-error", "2", "--area-side", "60", "--n-bs", "8", "--n-ms", "4",
               "--beamwidth-deg", "10", "--grid-size", "36"])
    assert rc == 0
    doc = json.loads(out.read_text())
    cfg = doc["config"]
    assert cfg["snr_db"] == 10.0 and cfg["switch_convention"] == "pair" and cfg["num_paths"] == 3
    assert cfg["n_ms"] == 4 and cfg["grid_size"] == 36
    es = [r for r in doc["records"] if r["strategy"] == "ExhaustiveSearch"]
    assert es[0]["switch_count"] == 36 * 36


def test_config_file_and_override(tmp_path):
    conf = tmp_path / "sim.conf"
    conf.write_text("# default setup\ntrials = 3\nseed=9\nsnr-db = 15\n")
    assert parse_config_file(conf) == {"trials": "3", "seed": "9", "snr_db": "15"}
    out = tmp_path / "r.json"
    assert main(["run", "--config", str(conf), "--trials", "1", "--format", "json", "--out", str(out)]) == 0
    cfg = json.loads(out.read_text())["config"]
    assert cfg["trials"] == 1 and cfg["seed"] == 9 and cfg["snr_db"] == 15.0


def test_json_config_file_reuses_echo(tmp_path):
    first = tmp_path / "a.json"
    main(["run", "--trials", "2", "--seed", "8", "--format", "json", "--out", str(first)])
    second = tmp_path / "b.json"
    echo = json.loads(first.read_text())["config"]
    (tmp_path / "echo.json").write_text(json.dumps(echo))
    assert main(["run", "--config", str(tmp_path / "echo.json"), "--format", "json", "--out", str(second)]) == 0
    assert json.loads(second.read_text())["records"] == json.loads(first.read_text())["records"]


def test_config_errors_exit_2(tmp_path, capsys):
    assert main(["run", "--trials", "0"]) == 2
    assert "trials" in capsys.readouterr().err
    bad = tmp_path / "bad.conf"
    bad.write_text("trials 3\n")
    assert main(["run", "--config", str(bad)]) == 2
    assert main(["run", "--n-bs", "6", "--seed", "-1"]) == 2
    err = capsys.readouterr().err
    assert "n_bs" in err and "seed" in err


def test_io_errors_exit_3(tmp_path):
    assert main(["run", "--trials", "1", "--out", str(tmp_path / "missing" / "r.csv")]) == 3
    assert main(["run", "--config", str(tmp_path / "nope.conf")]) == 3
    assert main(["cdf", str(tmp_path / "nope.csv")]) == 3


def test_cdf_subcommand(tmp_path, capsys):
    out = tmp_path / "r.csv"
    main(["run", "--trials", "3", "--out", str(out)])
    assert main(["cdf", str(out), "--out", str(tmp_path / "cdf")]) == 0
    for name in ("ExhaustiveSearch", "CsRandom", "CsLocalized"):
        text = (tmp_path / "cdf" / f"cdf_{name}.csv").read_text().splitlines()
        assert text[0] == "value,probability" and text[-1].endswith(",1.0")


def test_demo(capsys):
    assert main(["demo", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "LOS" in out and "CsLocalized" in out and "localized AoD range" in out


def test_module_entry_point(tmp_path):
    out = tmp_path / "r.csv"
    proc = subprocess.run([sys.executable, "-m", "locbeam", "run", "--trials", "1", "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and out.exists()
