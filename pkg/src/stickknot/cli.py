"""Command-line interface.

Exit codes: 0 success, 2 malformed input file, 3 polygon rejected by
validation, 4 numeric failure. Failures print one line on stderr::

    stickknot: error exit=<code> kind=<kind>: <message>
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import bounds as B
from .bezier import dense_eval, polyline_param, second_diff
from .certificate import compute_delta, iterations_from_values, norms
from .diagnostics import (PLANES, SAMPLES_PER_EDGE, diagnose_iteration,
                          project, project_along, sample_closed)
from .errors import (CertificateDegenerateError, DomainError, GenerationError, KnotFileError,
                     ProjectionError, SolverOverflowError, StickKnotError, ValidationError)
from .knotfile import format_knot, read_knot
from .polygon import PolyKnot, refine, refined_curve_points, validate
from .render import diagram_svg
from .sweep import sweep, to_csv

EXIT_OK, EXIT_FILE, EXIT_INVALID, EXIT_NUMERIC = 0, 2, 3, 4


def _num(x) -> str:
    return f"{x:.10g}"


def _load(path) -> PolyKnot:
    return validate(read_knot(path).points)


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_insert(args):
    p = refine(_load(args.knot), args.j)
    name = f"{Path(args.knot).stem} after {args.j} collinear insertion(s)"
    _emit(format_knot(p.vertices, name, args.format), args.output)


def cmd_bounds(args):
    p = _load(args.knot)
    n = len(p)
    omega1, omega2, lam = norms(p)
    lines = [f"n = {n}", f"lambda = {_num(lam)}", f"omega1 = {_num(omega1)}",
             f"omega2 = {_num(omega2)}", ""]
    header = ["j", "degree", "N1", "N1_upper", "ineq1", "ineq2", "ineq4"]
    if args.measure:
        header += ["gap", "hodograph_gap"]
    lines.append("\t".join(header))
    for j in range(args.jmax + 1):
        deg = n * 2**j
        even = deg + deg % 2
        refined = refine(p, j)
        n1 = B.n1(deg)
        row = [str(j), str(deg), _num(n1), _num(B.n1_upper(even)),
               _num(B.curve_polygon_bound(deg, second_diff(refined.closed_vertices).omega)),
               _num(B.insertion_distance_bound(n, j, omega1)),
               _num(B.hodograph_rate_bound(n, j, omega2))]
        if args.measure:
            m = args.samples
            ts = np.linspace(0.0, 1.0, m)
            gap = refined_curve_points(p, j, ts) - polyline_param(refined.closed_vertices, ts)
            hod = refined.hodograph_points()
            hgap = dense_eval(hod, m) - polyline_param(hod, ts)
            row += [_num(np.linalg.norm(gap, axis=1).max()), _num(np.linalg.norm(hgap, axis=1).max())]
        lines.append("\t".join(row))
    print("\n".join(lines))


def cmd_delta(args):
    cert = compute_delta(_load(args.knot), args.epsilon)
    print("variable\tvalue")
    for name, value in cert.rows():
        print(f"{name}\t{_num(value)}")


def _print_chain(label, b):
    print(f"# {label}")
    for name, value in [("n", b.n), ("omega1", b.omega1), ("omega2", b.omega2),
                        ("lambda", b.lam), ("delta", b.delta)]:
        print(f"{name} = {value if isinstance(value, int) else _num(value)}")
    for name in ("m1", "m2T", "m2A", "m2", "M"):
        print(f"{name} = {getattr(b, name)}")


def cmd_iterations(args):
    p = _load(args.knot)
    n = len(p)
    omega1, omega2, lam = norms(p)
    overrides = {"omega1": args.omega1, "omega2": args.omega2, "lam": args.lam, "delta": args.delta}
    injected = any(v is not None for v in overrides.values())
    try:
        delta = compute_delta(p, args.epsilon).delta
        computed = iterations_from_values(n, omega1, omega2, lam, delta, args.m2t_mode)
    except StickKnotError:
        if not all(v is not None for v in overrides.values()):
            raise
        computed = None
    if computed is not None:
        _print_chain("self-computed", computed)
    else:
        print("# self-computed: unavailable (certificate degenerate)")
    if injected:
        values = {"omega1": omega1, "omega2": omega2, "lam": lam,
                  "delta": computed.delta if computed else None}
        values.update({k: v for k, v in overrides.items() if v is not None})
        print()
        _print_chain("injected", iterations_from_values(n, m2T_mode=args.m2t_mode, **values))


def cmd_diagnose(args):
    p = _load(args.knot)
    report = diagnose_iteration(p, args.j, args.samples, args.seed)
    print(f"iteration = {report.iteration}")
    print(f"samples = {report.samples}")
    print(f"seed = {report.seed}")
    print(f"crossings = {report.crossings}")
    print(f"determinant = {report.determinant}")
    print(f"gauss_code = {report.gauss_code}")


def cmd_render(args):
    p = _load(args.knot)
    if args.j is None:
        pts, control, title = p.vertices, None, f"{Path(args.knot).stem}: stick knot"
    else:
        floor = SAMPLES_PER_EDGE * len(p) * 2**args.j
        samples = args.samples or floor
        if samples < floor:
            raise DomainError(f"need at least {floor} samples at iteration {args.j}")
        pts = sample_closed(p, args.j, samples)
        control, title = p.vertices, f"{Path(args.knot).stem}: Bezier curve after {args.j} insertion(s)"
    if args.plane.startswith("seed:"):
        diagram = project(pts, int(args.plane[5:]))
    else:
        diagram = project_along(pts, plane=args.plane)
    svg = diagram_svg(diagram, title, control)
    _emit(svg, args.output)


def cmd_sweep(args):
    records = sweep(args.count, args.sticks, args.seed, args.jmax, args.epsilon, args.workers)
    _emit(to_csv(records), args.output)


def _plane(value: str) -> str:
    if value in PLANES:
        return value
    if value.startswith("seed:") and value[5:].lstrip("-").isdigit():
        return value
    raise argparse.ArgumentTypeError("plane must be xy, xz, yz or seed:K")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stickknot",
        description="Bezier curves converging isotopically to a stick knot under collinear insertion.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("insert", help="apply J collinear insertions")
    s.add_argument("knot")
    s.add_argument("-j", type=int, default=1)
    s.add_argument("-o", "--output")
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.set_defaults(func=cmd_insert)

    s = sub.add_parser("bounds", help="norms, N1 values and the distance/hodograph bound tables")
    s.add_argument("knot")
    s.add_argument("--jmax", type=int, default=6)
    s.add_argument("--measure", action="store_true", help="add sampled gap columns")
    s.add_argument("--samples", type=int, default=10_000)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("delta", help="the r1..r4, delta certificate")
    s.add_argument("knot")
    s.add_argument("--epsilon", type=float, default=1.0)
    s.set_defaults(func=cmd_delta)

    s = sub.add_parser("iterations", help="insertion counts m1, m2T, m2A, M")
    s.add_argument("knot")
    s.add_argument("--epsilon", type=float, default=1.0)
    s.add_argument("--omega1", type=float)
    s.add_argument("--omega2", type=float)
    s.add_argument("--lambda", dest="lam", type=float)
    s.add_argument("--delta", type=float)
    s.add_argument("--m2t-mode", choices=["simplified", "strict"], default="simplified")
    s.set_defaults(func=cmd_iterations)

    s = sub.add_parser("diagnose", help="crossings and determinant of the Bezier knot at level J")
    s.add_argument("knot")
    s.add_argument("-j", type=int, default=0)
    s.add_argument("--samples", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_diagnose)

    s = sub.add_parser("render", help="SVG projection")
    s.add_argument("knot")
    s.add_argument("-j", type=int)
    s.add_argument("--plane", type=_plane, default="xy")
    s.add_argument("--samples", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("sweep", help="random-polygon tightness study (CSV)")
    s.add_argument("--count", type=int, default=50)
    s.add_argument("--sticks", type=int, default=7)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jmax", type=int, default=8)
    s.add_argument("--epsilon", type=float, default=1.0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sweep)
    return parser


def _failure(exc) -> tuple[int, str]:
    if isinstance(exc, KnotFileError):
        return EXIT_FILE, "malformed-file"
    if isinstance(exc, ValidationError):
        return EXIT_INVALID, exc.clause
    if isinstance(exc, CertificateDegenerateError):
        return EXIT_NUMERIC, "certificate-degenerate"
    if isinstance(exc, ProjectionError):
        return EXIT_NUMERIC, "projection-failure"
    if isinstance(exc, SolverOverflowError):
        return EXIT_NUMERIC, "solver-overflow"
    if isinstance(exc, GenerationError):
        return EXIT_NUMERIC, "generation-failure"
    if isinstance(exc, DomainError):
        return EXIT_NUMERIC, "domain"
    return EXIT_NUMERIC, "numeric"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except StickKnotError as exc:
        code, kind = _failure(exc)
        message = str(exc).replace("\n", " ")
        print(f"stickknot: error exit={code} kind={kind}: {message}", file=sys.stderr)
        return code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
