"""Command-line front end.

Exit codes: 0 success, 1 input or I/O error, 2 bad lambda or empty result,
3 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import re
import sys
from pathlib import Path

from .config import DEFAULT_TOLERANCES, load_tolerances
from .envelope import BadLambda, conic_descriptor, solve_triangle
from .errors import EnvelopeError
from .inversive import FociPair, UnimodularParam
from .lambda_scan import DEFAULT_SAMPLES, DEFAULT_REFINE_TOL, sample_good_thetas, scan_good_intervals
from .render import Scene, Style, default_view, export_csv, render_svg, to_jsonable
from .verify import run_verification

log = logging.getLogger("conic_envelope")

EXIT_OK, EXIT_INPUT, EXIT_BAD, EXIT_VIOLATION = 0, 1, 2, 3

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_REAL = re.compile(rf"^([+-]?{_NUM})$")
_FULL = re.compile(rf"^([+-]?{_NUM})([+-]{_NUM})i$", re.IGNORECASE)
_IMAG = re.compile(rf"^([+-]?{_NUM})i$", re.IGNORECASE)


def parse_complex(text: str) -> complex:
    """Parse ``<re>``, ``<re>+-<im>i`` or ``+-<im>i`` (``I`` accepted too)."""
    token = text.replace("−", "-").replace(" ", "")
    if m := _REAL.match(token):
        return complex(float(m.group(1)), 0.0)
    if m := _FULL.match(token):
        return complex(float(m.group(1)), float(m.group(2)))
    if m := _IMAG.match(token):
        return complex(0.0, float(m.group(1)))
    raise ValueError(f"invalid complex literal {text!r}; expected forms like 0.618, 0.7+1i, -0.3i")


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, allow_nan=False)


def _foci(args) -> FociPair:
    return FociPair(args.a, args.b)


def _solution_dict(sol) -> dict:
    return {
        "good": True,
        "theta": sol.theta,
        "roots": sol.roots,
        "weights": sol.weights,
        "tangency": sol.tangency,
        "residuals": sol.residuals,
        "conic_residuals": sol.conic_residuals,
    }


def cmd_solve(args, tol) -> int:
    foci = _foci(args)
    theta = math.radians(args.lambda_deg) if args.lambda_deg is not None else args.theta
    lam = UnimodularParam(theta)
    try:
        sol = solve_triangle(foci, lam, tol)
    except BadLambda as exc:
        print(_dump({"good": False, "theta": lam.theta, "reason": exc.reason.value}))
        return EXIT_BAD
    print(_dump(_solution_dict(sol)))
    return EXIT_OK


def envelope_solutions(foci: FociPair, count: int, n_samples: int = DEFAULT_SAMPLES, tol=DEFAULT_TOLERANCES):
    """Triangle solutions for ``count`` thetas spread over the good arcs (1% inset)."""
    intervals = scan_good_intervals(foci, n_samples, tolerances=tol)
    solutions = []
    c = conic_descriptor(foci)
    for theta in sample_good_thetas(intervals, count, inset=0.01):
        try:
            solutions.append(solve_triangle(foci, UnimodularParam(theta), tol, descriptor=c))
        except EnvelopeError as exc:
            log.warning("skipping theta=%r: %s", theta, exc)
    return intervals, solutions


def cmd_envelope(args, tol) -> int:
    if args.count < 1:
        raise ValueError("--count must be at least 1")
    foci = _foci(args)
    c = conic_descriptor(foci)
    intervals, solutions = envelope_solutions(foci, args.count, args.n_samples, tol)
    if not solutions:
        print("no good lambda values for these foci", file=sys.stderr)
        return EXIT_BAD
    out = Path(args.out)
    csv_path = Path(args.csv) if args.csv else out.with_suffix(".csv")
    scene = Scene(c, solutions, default_view(c), Style())
    try:
        out.write_text(render_svg(scene), encoding="utf-8", newline="\n")
        csv_path.write_text(export_csv(solutions), encoding="utf-8", newline="\n")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"wrote {out} and {csv_path} ({len(solutions)} triangles, {len(intervals)} good arc(s))")
    return EXIT_OK


def cmd_good_lambda(args, tol) -> int:
    intervals = scan_good_intervals(_foci(args), args.n_samples, args.refine_tol, tol)
    payload = []
    for iv in intervals:
        entry = {"theta_lo": iv.theta_lo, "theta_hi": iv.theta_hi}
        if iv.boundary_lo is not None:
            entry["boundary_lo"] = iv.boundary_lo
        if iv.boundary_hi is not None:
            entry["boundary_hi"] = iv.boundary_hi
        payload.append(entry)
    print(_dump(payload))
    return EXIT_OK


def cmd_verify(args, tol) -> int:
    if (args.a is None) != (args.b is None):
        raise ValueError("give both --a and --b, or neither for random foci")
    foci = None if args.a is None else _foci(args)
    report = run_verification(foci, args.samples, args.seed, tol)
    if report.draws == 0:
        print("no good lambda values to verify", file=sys.stderr)
        return EXIT_BAD
    print(f"verified {report.draws} good-lambda draw(s), seed={args.seed}")
    for line in report.lines():
        print(line)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_conic(args, tol) -> int:
    c = conic_descriptor(_foci(args))
    print(_dump(c.as_dict()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="conic-envelope", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="flat key = value file overriding numerical tolerances")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def foci_args(p, required=True):
        p.add_argument("--a", type=_complex_arg, required=required, help="first focus, e.g. 0.7+1i")
        p.add_argument("--b", type=_complex_arg, required=required, help="second focus, e.g. 1.5-0.8i")

    p = sub.add_parser("solve", help="roots, weights and tangency points for one lambda")
    foci_args(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--theta", type=float, help="lambda = exp(i theta), radians")
    group.add_argument("--lambda-deg", type=float, help="lambda angle in degrees")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("envelope", help="render the triangle family as SVG plus CSV")
    foci_args(p)
    p.add_argument("--count", type=int, default=60)
    p.add_argument("--out", required=True, help="SVG output path")
    p.add_argument("--csv", help="CSV output path (default: SVG path with .csv suffix)")
    p.add_argument("--n-samples", type=int, default=DEFAULT_SAMPLES)
    p.set_defaults(func=cmd_envelope)

    p = sub.add_parser("good-lambda", help="arcs of theta giving three distinct unimodular roots")
    foci_args(p)
    p.add_argument("--n-samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--refine-tol", type=float, default=DEFAULT_REFINE_TOL)
    p.set_defaults(func=cmd_good_lambda)

    p = sub.add_parser("verify", help="run the invariant battery")
    foci_args(p, required=False)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conic", help="describe the conic with foci a, b")
    foci_args(p)
    p.set_defaults(func=cmd_conic)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        tol = load_tolerances(args.config) if args.config else DEFAULT_TOLERANCES
        return args.func(args, tol)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
