import json
import subprocess
import sys
from pathlib import Path

import pytest

from mdlbound.cli import main

DATA = Path(__file__).resolve().parents[1] / "src" / "mdlbound" / "data"
B0059 = str(DATA / "b0059.fasta")
B0060 = str(DATA / "b0060.fasta")


def _tsv(text):
    lines = [line.split("\t") for line in text.strip().splitlines()]
    return lines[0], lines[1:]


def test_analyze_table(capsys):
    assert main(["analyze", "-i", B0059]) == 0
    header, rows = _tsv(capsys.readouterr().out)
    assert header[0] == "model"
    assert [r[0] for r in rows] == ["1", "2.0", "2.1", "3.0", "3.1", "3.2", "4.0", "4.1", "4.2", "4.3", "a.a."]
    row = dict(zip(header, rows[3]))
    assert float(row["total_bits"]) == pytest.approx(5277.51, abs=0.01)
    assert float(row["rate"]) == pytest.approx(0.9077, abs=1e-4)


def test_analyze_constant_sequence(capsys):
    assert main(["analyze", "--sequence", "AAAAAAAA", "--models", "1"]) == 0
    header, rows = _tsv(capsys.readouterr().out)
    row = dict(zip(header, rows[0]))
    assert float(row["total_bits"]) == 0.0
    assert float(row["rate"]) == 0.0
    assert float(row["raw_bits"]) == 16.0


def test_analyze_lz78_and_json(capsys, tmp_path):
    out = tmp_path / "r.json"
    assert main(["analyze", "-i", B0059, "--models", "3.0,lz78", "--json", "-o", str(out)]) == 0
    rows = json.loads(out.read_text())
    assert [r["model"] for r in rows] == ["3.0", "lz78"]
    assert rows[1]["n_words"] == 636


def test_scan_json_tsv_agree(capsys):
    assert main(["scan", "-i", B0060]) == 0
    text = capsys.readouterr().out
    best_line = text.strip().splitlines()[-1].split("\t")
    assert best_line[:3] == ["# best", "3.0", "fixed:3.0"]
    header, rows = _tsv("\n".join(text.strip().splitlines()[:-1]))
    totals = [float(dict(zip(header, r))["total_bits"]) for r in rows]
    assert float(best_line[3]) == pytest.approx(min(totals), abs=1e-4)
    assert main(["scan", "-i", B0060, "--json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["best"]["model"] == "3.0"
    assert d["best"]["rate"] == pytest.approx(float(best_line[4]), abs=5e-5)
    assert min(r["total_bits"] for r in d["reports"]) == d["best"]["total_bits"]


def test_exact_nml(capsys):
    assert main(["exact-nml", "-m", "2", "-n", "2", "--json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["exact_bits"] == pytest.approx(1.3219, abs=1e-4)


def test_exact_nml_too_large(capsys):
    assert main(["exact-nml", "-m", "50", "-n", "500"]) == 1
    assert "too large" in capsys.readouterr().err


def test_simulate_deterministic(capsys):
    assert main(["simulate", "-n", "50", "--seed", "3"]) == 0
    a = capsys.readouterr().out
    assert main(["simulate", "-n", "50", "--seed", "3"]) == 0
    assert capsys.readouterr().out == a
    assert len(a.strip()) == 50 and set(a.strip()) <= {"0", "1"}


def test_simulate_analyze(capsys):
    assert main(["simulate", "-n", "3000", "--seed", "1", "--analyze", "--max-word-length", "3"]) == 0
    header, rows = _tsv(capsys.readouterr().out)
    assert header == ["model", "n_words", "dict_size", "rate_entropy", "rate_entropy_plus_dim", "rate_nml"]
    assert [r[0] for r in rows] == ["1", "2.0", "3.0"]


def test_permute(capsys):
    assert main(["permute", "-i", B0060, "--models", "1,2.0", "--replicates", "5", "--seed", "1"]) == 0
    header, rows = _tsv(capsys.readouterr().out)
    assert header == ["statistic", "measure", "1", "2.0"]


def test_data_error_exit_1(capsys):
    assert main(["analyze", "--sequence", "ACGX", "--alphabet", "ACGT"]) == 1
    assert "offset 3" in capsys.readouterr().err
    assert main(["analyze", "-i", "/nonexistent/file.fa"]) == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze"],
        ["analyze", "--sequence", "AC", "--models", "foo"],
        ["analyze", "--sequence", "AC", "-i", B0059],
        ["permute", "--sequence", "ACGT", "--models", "lz78"],
        ["scan", "--sequence", "AC", "--max-word-length", "0"],
        ["bogus"],
    ],
)
def test_usage_error_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mdlbound", "exact-nml", "-m", "2", "-n", "10"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].split("\t")[2] == "2.220397"
