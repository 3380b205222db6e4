import json
import subprocess
import sys

import pytest

from agm_jellyfish.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_swarm(capsys):
    code, out, _ = run(capsys, "swarm", "--q", "7")
    assert code == 0 and "nodes=12 d=1" in out
    code, out, _ = run(capsys, "swarm", "--p", "3", "--m", "3")
    assert code == 0 and "d=39" in out and "modulus=[1, 2, 0, 1]" in out
    code, out, _ = run(capsys, "swarm", "--q", "83")
    assert code == 0 and "d=6" in out and "N_820=" in out


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--limit", "47")
    rows = [tuple(map(int, line.split())) for line in out.splitlines()]
    assert rows == [(3, 0), (7, 1), (11, 3), (19, 8), (23, 5), (31, 10), (43, 7), (47, 4)]
    _, out, _ = run(capsys, "table", "--limit", "3")
    assert out.split() == ["3", "0"]


def test_table_default_ends_at_283(capsys):
    _, out, _ = run(capsys, "table")
    assert out.splitlines()[-1] == "283 35"


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "--q", "7", "--a", "1", "--b", "2")
    assert code == 0
    assert "cycle (6): (1, 2) (5, 3) (4, 1) (6, 5) (2, 4) (3, 6)" in out


def test_export(capsys, tmp_path):
    path = tmp_path / "f7.json"
    assert main(["export", "--q", "7", "--format", "json", "--out", str(path)]) == 0
    obj = json.loads(path.read_text())
    assert obj["d"] == 1 and obj["jellyfish"][0]["trace"] == 0
    _, out, _ = run(capsys, "export", "--q", "7")
    assert out.startswith("// F_7") and "doublecircle" in out


def test_curves(capsys):
    _, out, _ = run(capsys, "curves", "--q", "19", "--lambda", "6")
    assert "lambda=6 j=15 N=24 trace=-4 n1=2 n2=12" in out


def test_schoof(capsys):
    code, out, _ = run(capsys, "schoof", "--q", "19")
    assert code == 0
    assert [line for line in out.splitlines() if line.endswith("OK")] == [
        "-4, 15, 2, 2, OK",
        "4, 15, 2, 2, OK",
    ]


def test_hurwitz(capsys):
    assert run(capsys, "hurwitz", "--N", "12")[1].strip() == "4/3"
    assert run(capsys, "hurwitz", "--N", "5")[0] == 2


def test_hyper(capsys):
    _, out, _ = run(capsys, "hyper", "--q", "19", "--lambda", "4", "--full")
    assert "S=-4" in out and "2F1=4/19" in out and "N=16" in out
    dev = float(out.split("deviation=")[1])
    assert dev < 1e-8


def test_pi(capsys):
    _, out, _ = run(capsys, "pi", "--steps", "5", "--digits", "40")
    lines = out.splitlines()
    assert lines[0] == "4.0" and lines[4].startswith("3.14159265358979323846")


@pytest.mark.parametrize("q", ["9", "13", "21"])
def test_invalid_q(capsys, q):
    code, _, err = run(capsys, "swarm", "--q", q)
    assert code == 2 and err.startswith("error:")


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "agm_jellyfish", "orbit", "--q", "67", "--a", "1", "--b", "17"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and "cycle (9)" in res.stdout
