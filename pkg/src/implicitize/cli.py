"""Command line entry point: ``implicitize <file> [options]``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import ImplicitizationError, ParseError
from .pipeline import METHODS, JobSpec, dumps, error_document, run

log = logging.getLogger("implicitize")

EXIT_OK = 0
EXIT_NO_EQUATION = 1
EXIT_INPUT = 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="implicitize",
                                 description="Implicit equation of a rational surface given by four ternary forms.")
    ap.add_argument("file", help="input file with lines 'x = ...', 'y = ...', 'z = ...', 'w = ...' ('-' for stdin)")
    ap.add_argument("--method", choices=METHODS, default="auto")
    ap.add_argument("--seed", type=int, default=0, help="seed for generic recombination retries")
    ap.add_argument("--sat-bound", type=int, default=None, help="degree bound for saturation tests (default 2n)")
    ap.add_argument("--format", choices=("text", "structured"), default="text", dest="output_format")
    ap.add_argument("--verbose", action="store_true")
    return ap


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _text_report(res, verbose: bool) -> str:
    out = res.to_text()
    if verbose:
        rep = res.bp_report.to_dict()
        lines = ["base point report:"]
        for key in ("bp1", "bp2", "bp3", "bp4", "bp5", "chosen_d", "m", "i", "deg_V", "lci"):
            lines.append(f"  {key}: {rep[key]}")
        lines.append(f"  saturated: {res.saturated}")
        if res.minors:
            lines.append(f"  V1(A) empty: {res.minors.v1_empty}, V2(A) empty: {res.minors.v2_empty}")
        out += "\n".join(lines) + "\n"
    return out


def _text_error(exc: ImplicitizationError, verbose: bool) -> str:
    out = f"error: {exc.kind}: {exc}\n"
    if verbose:
        for key, value in sorted(exc.details.items()):
            out += f"  {key}: {value}\n"
    return out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    options = {"method": args.method, "seed": args.seed, "sat_bound": args.sat_bound}
    try:
        source = _read(args.file)
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    job = JobSpec(source=source, method=args.method, seed=args.seed, sat_bound=args.sat_bound,
                  output_format=args.output_format)
    try:
        log.info("running method %s", job.method)
        res = run(job)
    except ImplicitizationError as exc:
        if args.output_format == "structured":
            sys.stdout.write(dumps(error_document(exc, source=source, options=options)))
        else:
            sys.stdout.write(_text_error(exc, args.verbose))
        is_input = isinstance(exc, ParseError) or exc.kind in ("NonHomogeneous", "DegreeMismatch")
        return EXIT_INPUT if is_input else EXIT_NO_EQUATION
    if args.output_format == "structured":
        sys.stdout.write(res.to_json())
    else:
        sys.stdout.write(_text_report(res, args.verbose))
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
