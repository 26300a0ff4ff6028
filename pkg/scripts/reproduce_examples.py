"""Run every bundled fixture through the pipeline and print a one-line outcome.

    python scripts/reproduce_examples.py [name ...]
"""
import sys
import time

from implicitize import fixtures
from implicitize.errors import ImplicitizationError
from implicitize.pipeline import run_parametrization

# fixtures that need a specific method to show their behaviour
METHOD = {"ex38": "both", "ex44": "resultant", "ex53": "resultant"}


def outcome(name: str) -> str:
    method = METHOD.get(name, "auto")
    start = time.perf_counter()
    try:
        res = run_parametrization(fixtures.load(name), method)
        text = f"{res.method}: P of degree {res.degree}"
        if res.ledger:
            text += f", ledger {res.ledger['identity']}"
        if res.extraneous:
            text += ", extraneous " + ", ".join(f"({f})^{e}" for f, e in res.extraneous)
        if res.degree <= 4:
            text += f"\n    P = {res.P}"
    except ImplicitizationError as exc:
        text = f"{type(exc).__name__}: {exc}"
    return f"{name:6s} [{method}] {time.perf_counter() - start:6.2f} s  {text}"


if __name__ == "__main__":
    for name in sys.argv[1:] or fixtures.names():
        print(outcome(name))
