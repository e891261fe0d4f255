import json
import shutil
import subprocess
import sys

import pytest

from troppatch.cli import main


def run(capsys, *argv):
    code = main(list(argv) + ["--json", "-"])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_validate_ok(capsys):
    code, rep = run(capsys, "validate", "u23_line")
    assert code == 0 and rep["status"] == "ok" and rep["command"] == "validate"
    assert list(rep["inputs"]) == sorted(rep["inputs"])


def test_refuted_exit_code(capsys):
    code, rep = run(capsys, "closed-check", "u23_phase_broken_cover")
    assert code == 2 and rep["status"] == "refuted"


def test_error_exit_codes(capsys):
    assert main(["validate", "no_such_file"]) == 1
    assert main(["frobnicate"]) == 1
    assert main([]) == 1
    capsys.readouterr()


@pytest.mark.parametrize(
    "argv,check",
    [
        (["homology", "--cosheaf", "fp", "--p", "1", "--bm", "u23_line"], lambda r: r["dims"] == [0, 1]),
        (["euler", "u23_phase"], lambda r: r["chi"] == r["sigma"] == 3),
        (["tope-count", "u34_om"], lambda r: r["topes"] == 14 and r["zaslavsky_match"]),
        (["hirzebruch", "u34_plane", "--matroid", "u34"], lambda r: r["coefficients"] == [3, -3, 1]),
    ],
)
def test_commands(capsys, argv, check):
    code, rep = run(capsys, *argv)
    assert code == 0, rep
    assert check(rep["result"]), rep["result"]


def test_emit_poset(tmp_path, capsys):
    out = tmp_path / "p.json"
    assert main(["poset", "int", "u23_line", "--emit-poset", str(out)]) == 0
    capsys.readouterr()
    data = json.loads(out.read_text())
    assert data["elements"]


def test_text_output(capsys):
    assert main(["euler", "u23_phase"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("euler: ok")


def test_json_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["betti-bounds", "u34_phase", "--json", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.skipif(shutil.which("troppatch") is None, reason="console script not installed")
def test_console_script():
    r = subprocess.run(["troppatch", "tope-count", "u23_om", "--json", "-"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["result"]["topes"] == 6


def test_module_entry():
    r = subprocess.run([sys.executable, "-m", "troppatch", "validate", "u23"], capture_output=True, text=True)
    assert r.returncode == 0
