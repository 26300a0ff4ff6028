import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from implicitize import fixtures
from implicitize.cli import EXIT_INPUT, EXIT_NO_EQUATION, EXIT_OK, main
from implicitize.pipeline import ImplicitResult

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"
sys.path.insert(0, str(ROOT / "scripts"))
from make_goldens import JOBS, render  # noqa: E402


def cli(args, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(args)
    return code, capsys.readouterr()


@pytest.mark.parametrize("name", sorted(JOBS))
def test_golden_structured_output(name):
    code, text = render(name)
    assert text == (GOLDEN / f"{name}.json").read_text(encoding="utf-8")
    doc = json.loads(text)
    assert (code == EXIT_OK) == (doc["status"] == "ok")
    if doc["status"] == "ok":
        ImplicitResult.from_dict(doc)


def test_golden_exit_codes():
    codes = {name: render(name)[0] for name in JOBS}
    assert codes == {"ex31": 1, "ex32": 1, "ex36": 0, "ex37": 0, "ex38": 0, "ex44": 1, "ex53": 0}


def test_text_output(capsys, tmp_path):
    f = tmp_path / "q.txt"
    f.write_text(fixtures.source("ex36"))
    code, out = cli([str(f)], capsys)
    assert code == EXIT_OK
    assert out.out.splitlines()[0] == "P = X^2*Y - Z*W^2 + W^3"


def test_verbose_lists_conditions(capsys, tmp_path):
    f = tmp_path / "q.txt"
    f.write_text(fixtures.source("ex36"))
    code, out = cli([str(f), "--verbose"], capsys)
    assert code == EXIT_OK and "bp5: True" in out.out and "chosen_d: 1" in out.out


def test_stdin(capsys, monkeypatch):
    code, out = cli(["-", "--method", "moving"], capsys, stdin=fixtures.source("ex37"), monkeypatch=monkeypatch)
    assert code == EXIT_OK and "W^7" in out.out


def test_syntax_error(capsys, monkeypatch):
    code, out = cli(["-"], capsys, stdin="x = 2s\ny = t\nz = u\nw = s\n", monkeypatch=monkeypatch)
    assert code == EXIT_INPUT
    assert out.out.startswith("error: SyntaxError: line 1, column 6")


def test_structured_error(capsys, monkeypatch):
    code, out = cli(["-", "--format", "structured"], capsys, stdin="x = s + t^2\ny = t\nz = u\nw = s\n",
                    monkeypatch=monkeypatch)
    doc = json.loads(out.out)
    assert code == EXIT_INPUT and doc["status"] == "error" and doc["error"]["kind"] == "NonHomogeneous"
    assert "input" not in doc


def test_degree_mismatch(capsys, monkeypatch):
    code, _ = cli(["-"], capsys, stdin="x = s^2\ny = t^2\nz = u^2\nw = s\n", monkeypatch=monkeypatch)
    assert code == EXIT_INPUT


def test_missing_file(capsys, tmp_path):
    code, out = cli([str(tmp_path / "nope.txt")], capsys)
    assert code == EXIT_INPUT and "cannot read" in out.err


def test_no_equation_report_on_stdout(capsys, tmp_path):
    f = tmp_path / "bp5.txt"
    f.write_text(fixtures.source("ex32"))
    code, out = cli([str(f), "--verbose"], capsys)
    assert code == EXIT_NO_EQUATION
    assert out.out.startswith("error: NoApplicableMethod")


def test_seed_and_sat_bound_echoed(capsys, tmp_path):
    f = tmp_path / "q.txt"
    f.write_text(fixtures.source("ex36"))
    code, out = cli([str(f), "--format", "structured", "--seed", "7", "--sat-bound", "5"], capsys)
    doc = json.loads(out.out)
    assert code == EXIT_OK and doc["options"] == {"method": "auto", "sat_bound": 5, "seed": 7}


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "implicitize.cli", str(ROOT / "inputs" / JOBS["ex53"][0]),
                           "--method", "resultant"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "extraneous factor Y + Z - W (multiplicity 1)" in proc.stdout
