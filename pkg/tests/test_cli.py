import json
import subprocess
import sys

import jsonschema
import pytest

from mforge.cli import main
from mforge.report import REPORT_SCHEMA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "G . tG", "--g", "4")
    assert code == 0 and out.strip() == "L"


def test_normalize_parse_error(capsys):
    code, out, err = run(capsys, "normalize", "L . Lam +", "--g", "4")
    assert code == 2 and out == "" and "position 9" in err


def test_hodge_text_and_json(capsys):
    code, out, _ = run(capsys, "hodge", "--g", "4")
    assert code == 0
    assert "-24" in out and "[1, 8, 28, 66, 28, 8, 1]" in out
    assert "k           10" in out and "level bound 1" in out
    code, out, _ = run(capsys, "hodge", "--g", "3", "--d", "2", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["geom_genus"] == 4 and d["euler"] == 12


def test_verify_g4_json(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--g", "4", "--format", "json", "--out", str(out_file))
    assert code == 0
    doc = json.loads(out_file.read_text())
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["summary"]["failed"] == doc["summary"]["not_proved"] == 0


def test_verify_range_symbolic_text(capsys):
    code, out, _ = run(capsys, "verify", "--g", "2..6", "--symbolic-only")
    assert code == 0
    assert out.count("summary:") == 5 and "Failed " not in out


def test_verify_corrupt_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "--g", "4", "--corrupt-rule", "--format", "json")
    assert code == 1
    doc = json.loads(out)
    assert doc["summary"]["failed"] >= 1


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--g", "7"],
        ["verify", "--g", "x"],
        ["verify", "--depth", "-1"],
        ["normalize", "L", "--g", "2..3"],
        ["hodge", "--g", "1"],
        ["frobnicate"],
        [],
        ["normalize", "G . L", "--g", "4"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and err


def test_bad_depth_env(capsys, monkeypatch):
    monkeypatch.setenv("MFORGE_DEPTH", "nope")
    code, _, err = run(capsys, "verify", "--g", "2", "--symbolic-only")
    assert code == 2 and "MFORGE_DEPTH" in err


def test_dump_model(capsys, tmp_path):
    f = tmp_path / "m.json"
    code, _, _ = run(capsys, "dump-model", "--g", "3", "--out", str(f))
    d = json.loads(f.read_text())
    assert code == 0 and d["k"] == 1 and d["spaces"]["Theta"]["dims"] == [1, 6, 16, 6, 1]


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "mforge", "normalize", "mul(2) . pi(3,A)", "--g", "3"],
                       capture_output=True, text=True, timeout=120)
    assert p.returncode == 0 and p.stdout.strip() == "8 pi(3,A)"
