"""Regenerate the structured-output golden files in tests/golden/.

Run after an intentional change to the output format; the pipeline tests
compare the CLI output against these files byte for byte.
"""
import contextlib
import io
import sys
from pathlib import Path

from implicitize.cli import main

ROOT = Path(__file__).resolve().parent.parent

# golden name -> (input file, method)
JOBS = {
    "ex31": ("ex31_regularity_too_high.txt", "auto"),
    "ex32": ("ex32_bp5_fails.txt", "auto"),
    "ex36": ("ex36_quadric_one_basepoint.txt", "auto"),
    "ex37": ("ex37_cubic_double_basepoint.txt", "auto"),
    "ex38": ("ex38_cubic_six_basepoints.txt", "both"),
    "ex44": ("ex44_saturated_not_lci.txt", "resultant"),
    "ex53": ("ex53_extraneous_plane.txt", "resultant"),
}


def render(name: str) -> tuple:
    """(exit code, structured output) of the CLI on a golden job."""
    path, method = JOBS[name]
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main([str(ROOT / "inputs" / path), "--method", method, "--format", "structured"])
    return code, buf.getvalue()


if __name__ == "__main__":
    out = ROOT / "tests" / "golden"
    out.mkdir(exist_ok=True)
    for name in sys.argv[1:] or JOBS:
        code, text = render(name)
        (out / f"{name}.json").write_text(text, encoding="utf-8")
        print(f"{name}: exit {code}, {len(text)} bytes")
