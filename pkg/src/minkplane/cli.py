"""Command-line front end.

Commands: classify | intersect | probe | propagate | verify-map | render.

Exit codes:
    0   success (classify: URTC; verify-map: pass)
    1   classify: not URTC; verify-map: a check failed
    2   classify: inconclusive; verify-map: corrupt ledger
    3   input or validation error (bad norm file, degenerate query,
        non-URTC norm where URTC is required, ...)
    4   usage error
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .circles import (
    DEFAULT_CONFIG,
    DegenerateCircleError,
    SolverConfig,
    SolutionSet,
    TwoRadiusError,
    intersect_circles,
)
from .classify import Verdict, classify
from .geom import MixedBackendError, Point2
from .norms import NormValidationError, load_norm
from .probe import (
    NotUrtcError,
    ProbeConstructionError,
    RegularPositionError,
    SphereError,
    build_probe,
    sphere_map_f,
    validate_probe,
)
from .propagate import (
    AffineMap,
    CandidateMap,
    ComposedMap,
    LedgerError,
    LedgerImportError,
    LinearMap,
    TabulatedMap,
    WitnessValidationError,
    derive_midpoint_rule,
    derive_rational,
    derive_scale_down,
    derive_scale_up,
    new_ledger,
    read_ledger,
    verify_map,
    write_ledger,
)
from .render import render_norm, render_probe

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3
EXIT_USAGE = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep argparse from sys.exit(2)
        raise _UsageError(f"{self.prog}: {message}")


def _parse_scalar(text: str):
    t = text.strip()
    if "/" in t:
        return Fraction(t)
    if "." in t or "e" in t or "E" in t:
        return float(t)
    return int(t)


def _parse_point(text: str) -> Point2:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected 'x,y', got {text!r}")
    vals = [_parse_scalar(part) for part in parts]
    if any(isinstance(v, float) for v in vals):
        vals = [float(v) for v in vals]
    return Point2(*vals)


def _fmt_scalar(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _fmt_point(p: Point2) -> str:
    return f"({_fmt_scalar(p.x)}, {_fmt_scalar(p.y)})"


def _print_solution(sol: SolutionSet):
    print(f"exact: {'yes' if sol.exact else f'no (tolerance {sol.tolerance:g})'}")
    print(f"points ({len(sol.points)}):")
    for p in sol.points:
        print(f"  {_fmt_point(p)}")
    print(f"segments ({len(sol.segments)}):")
    for s in sol.segments:
        print(f"  {_fmt_point(s.p)} -- {_fmt_point(s.q)}")


def _solver_config(args) -> SolverConfig:
    if getattr(args, "tol", None):
        return SolverConfig(theta_tol=args.tol)
    return DEFAULT_CONFIG


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    norm = load_norm(args.norm)
    verdict = classify(norm)
    print(f"verdict: {verdict.verdict.value}")
    print(f"method: {verdict.method}")
    print(f"exactness: {'exact' if verdict.exact else f'approx (tolerance {verdict.tolerance:g})'}")
    if verdict.witness is not None:
        w = verdict.witness
        print(
            f"witness: {_fmt_point(w.seg.p)} -- {_fmt_point(w.seg.q)} "
            f"endpoint distance {_fmt_scalar(w.endpoint_gauge_distance)}"
        )
    return {
        Verdict.URTC: EXIT_OK,
        Verdict.NOT_URTC: EXIT_NEGATIVE,
        Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
    }[verdict.verdict]


def cmd_intersect(args) -> int:
    norm = load_norm(args.norm)
    a = _parse_point(args.a)
    b = _parse_point(args.b)
    r1 = _parse_scalar(args.r1)
    r2 = _parse_scalar(args.r2) if args.r2 is not None else r1
    sol = intersect_circles(norm, a, r1, b, r2, _solver_config(args))
    _print_solution(sol)
    return EXIT_OK


def _default_probe_base(norm, d):
    b0 = Point2(0, 0)
    b1 = norm.boundary_on_ray(Point2(1, 0)) * d
    b2 = sphere_map_f(norm, b1, d)
    return b0, b1, b2


def cmd_probe(args) -> int:
    norm = load_norm(args.norm)
    d = _parse_scalar(args.d)
    if not float(d) > 0:
        raise ValueError("d must be positive")
    b0, b1, b2 = _default_probe_base(norm, d)
    probe = build_probe(norm, b0, b1, b2, d, _solver_config(args))
    report = validate_probe(norm, probe)
    for name in ("a", "b1", "b2", "b3", "c1", "c2", "c3"):
        print(f"{name}: {_fmt_point(probe.point(name))}")
    print("residuals:")
    for edge, res in report.residuals.items():
        print(f"  {edge}: {res:.3e}")
    print(f"  b3-identity: {report.b3_identity:.3e}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(render_probe(norm, probe))
        print(f"svg written to {args.out}")
    return EXIT_OK


def cmd_propagate(args) -> int:
    norm = load_norm(args.norm)
    d = _parse_scalar(args.d)
    config = _solver_config(args)
    ledger = new_ledger(norm, d, config)
    derive_midpoint_rule(ledger, 1, config)
    for n in range(2, args.max_n + 1):
        derive_scale_up(ledger, n, 1, config)
    for n in range(2, args.max_q + 1):
        derive_scale_down(ledger, n, 1, config)
    for p in range(1, args.max_n + 1):
        for q in range(1, args.max_q + 1):
            derive_rational(ledger, p, q, config)
    write_ledger(ledger, args.out)
    print(f"{len(ledger.facts)} facts written to {args.out}")
    return EXIT_OK


def _map_from_jsonable(obj) -> CandidateMap:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("map spec must be an object with a 'kind'")
    kind = obj["kind"]
    if kind == "rotation":
        import math
        return AffineMap.rotation(math.radians(float(_parse_scalar(str(obj["degrees"])))))
    if kind == "scale":
        return AffineMap.scaling(float(_parse_scalar(str(obj["factor"]))))
    if kind == "translation":
        dx, dy = obj["by"]
        return AffineMap.translation(float(_parse_scalar(str(dx))), float(_parse_scalar(str(dy))))
    if kind == "affine":
        (m00, m01), (m10, m11) = obj["matrix"]
        tx, ty = obj.get("translate", [0, 0])
        return AffineMap(*(float(_parse_scalar(str(v))) for v in (m00, m01, m10, m11, tx, ty)))
    if kind == "linear":
        (m00, m01), (m10, m11) = obj["matrix"]
        return LinearMap(*(_parse_scalar(str(v)) for v in (m00, m01, m10, m11)))
    if kind == "tabulated":
        pairs = {}
        for src, dst in obj["pairs"]:
            pairs[Point2(*(_parse_scalar(str(c)) for c in src))] = \
                Point2(*(_parse_scalar(str(c)) for c in dst))
        return TabulatedMap(pairs)
    if kind == "compose":
        return ComposedMap(tuple(_map_from_jsonable(m) for m in obj["maps"]))
    raise ValueError(f"unknown map kind {kind!r}")


def load_map_spec(path) -> CandidateMap:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid map spec JSON: {exc}") from None
    return _map_from_jsonable(obj)


def cmd_verify_map(args) -> int:
    norm = load_norm(args.norm)
    candidate = load_map_spec(args.map)
    try:
        ledger = read_ledger(args.ledger, norm=norm, revalidate=True, tol=args.tol or 1e-7)
    except LedgerImportError as exc:
        print(f"corrupt ledger: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    report = verify_map(norm, candidate, ledger, samples=args.samples, seed=args.seed,
                        tol=args.tol or 1e-7)
    print(report)
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_render(args) -> int:
    norm = load_norm(args.norm)
    svg = render_norm(norm)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"svg written to {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="minkplane", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=fn)
        p.add_argument("--norm", required=True, help="norm spec file (JSON)")
        p.add_argument("--tol", type=float, default=None, help="tolerance override")
        return p

    add("classify", cmd_classify, help="URTC classification of a norm")

    p = add("intersect", cmd_intersect, help="solve the two-circle system")
    p.add_argument("--a", required=True, help="first center, as 'x,y'")
    p.add_argument("--b", required=True, help="second center, as 'x,y'")
    p.add_argument("--r1", required=True, help="first radius (rational or decimal)")
    p.add_argument("--r2", default=None, help="second radius (default: r1)")

    p = add("probe", cmd_probe, help="build and validate a d-probe")
    p.add_argument("--d", required=True, help="probe distance d")
    p.add_argument("--out", default=None, help="optional SVG output path")

    p = add("propagate", cmd_propagate, help="derive a distance-propagation ledger")
    p.add_argument("--d", default="1", help="base distance (default 1)")
    p.add_argument("--max-n", type=int, default=5, dest="max_n")
    p.add_argument("--max-q", type=int, default=5, dest="max_q")
    p.add_argument("--out", required=True, help="ledger output path")

    p = add("verify-map", cmd_verify_map, help="check a candidate map against a ledger")
    p.add_argument("--ledger", required=True)
    p.add_argument("--map", required=True, help="map spec file (JSON)")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)

    p = add("render", cmd_render, help="render the unit circle as SVG")
    p.add_argument("--out", required=True)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (
        NormValidationError,
        DegenerateCircleError,
        TwoRadiusError,
        NotUrtcError,
        SphereError,
        RegularPositionError,
        ProbeConstructionError,
        LedgerError,
        WitnessValidationError,
        MixedBackendError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
