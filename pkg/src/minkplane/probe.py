"""Sphere maps and d-probes.

On a URTC norm, every point z of the radius-d sphere has exactly one
companion w on the same sphere with ||z - w|| = d on each side of the line
through 0 and z.  ``sphere_map_f`` picks the counterclockwise companion,
``sphere_map_g`` the clockwise one; they are mutually inverse.

A d-probe is a 7-tuple (a, b1, b2, b3, c1, c2, c3) whose eleven prescribed
pairwise distances all equal d; those distances force b3 = b1 + b2 - a.
``build_probe`` extends any regular-d triple to a probe by bisecting
h(z) = ||(z + f(z))/2 - (b1 + b2)/2|| - d/2 along the sphere, and
``validate_probe`` reports every residual of a candidate probe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .circles import DEFAULT_CONFIG, SolverConfig, intersect_circles
from .classify import Verdict, classify
from .geom import ORIGIN, Orientation, Point2, Scalar, orientation
from .norms import Norm

PROBE_EDGES = (
    ("a", "b1"), ("a", "b2"), ("b1", "b2"), ("b1", "b3"), ("b2", "b3"),
    ("a", "c1"), ("a", "c2"), ("c1", "c2"), ("c1", "c3"), ("c2", "c3"),
    ("b3", "c3"),
)

_SPHERE_TOL = 1e-9
_H_SCAN = 256
_H_THETA_TOL = 1e-12
_H_MAX_ITER = 200


class NotUrtcError(ValueError):
    """Operation needs a norm classified URTC."""


class SphereError(ValueError):
    """Input point is not on the required sphere."""


class RegularPositionError(ValueError):
    """The three base points are not in regular d-position."""


class ProbeConstructionError(RuntimeError):
    """Root search for the probe's c1 failed."""


@dataclass(frozen=True)
class DProbe:
    a: Point2
    b1: Point2
    b2: Point2
    b3: Point2
    c1: Point2
    c2: Point2
    c3: Point2
    d: Scalar

    def point(self, name: str) -> Point2:
        return getattr(self, name)

    def translated(self, v: Point2) -> "DProbe":
        return DProbe(*(getattr(self, n) + v for n in ("a", "b1", "b2", "b3", "c1", "c2", "c3")), self.d)


def require_urtc(norm: Norm) -> None:
    verdict = classify(norm)
    if verdict.verdict is not Verdict.URTC:
        raise NotUrtcError(
            f"operation requires a URTC norm; classification is {verdict.verdict.value}"
        )


def _companions(norm, z: Point2, d, config) -> list[Point2]:
    sols = intersect_circles(norm, Point2(0, 0), d, z, d, config)
    if sols.segments:
        raise NotUrtcError("two-circle system returned segments; norm is not URTC")
    return list(sols.points)


def _sphere_map(norm, z, d, want: Orientation, config) -> Point2:
    require_urtc(norm)
    gz = norm.gauge(z)
    if d is None:
        d = gz
        if d == 0:
            raise SphereError("z must be a nonzero sphere point")
    elif abs(float(gz) - float(d)) > _SPHERE_TOL * max(1.0, abs(float(d))):
        raise SphereError(f"||z|| = {gz} but the sphere radius is {d}")
    picked = [
        w for w in _companions(norm, z, d, config)
        if orientation(ORIGIN, z, w) is want
    ]
    if len(picked) != 1:
        raise SphereError(
            f"expected exactly one {want.name.lower()}-oriented companion for {z}, "
            f"got {len(picked)}"
        )
    return picked[0]


def sphere_map_f(norm: Norm, z: Point2, d: Optional[Scalar] = None,
                 config: SolverConfig = DEFAULT_CONFIG) -> Point2:
    """The counterclockwise unit-chord step: w on the same sphere as z with
    ||z - w|| = d and (0, z, w) positively oriented."""
    return _sphere_map(norm, z, d, Orientation.POSITIVE, config)


def sphere_map_g(norm: Norm, z: Point2, d: Optional[Scalar] = None,
                 config: SolverConfig = DEFAULT_CONFIG) -> Point2:
    """The clockwise unit-chord step; inverse of :func:`sphere_map_f`."""
    return _sphere_map(norm, z, d, Orientation.NEGATIVE, config)


@dataclass(frozen=True)
class SphereMapResult:
    """Diagnostic record of one sphere-map evaluation: the chord residual
    |(||z - output|| - d)| is bounded by the solver tolerance and the output
    orientation was verified against the requested side."""

    input: Point2
    output: Point2
    orientation_checked: bool


def checked_sphere_map(norm: Norm, z: Point2, d: Optional[Scalar] = None,
                       positive: bool = True,
                       config: SolverConfig = DEFAULT_CONFIG) -> SphereMapResult:
    """Sphere map evaluation packaged with its orientation check."""
    want = Orientation.POSITIVE if positive else Orientation.NEGATIVE
    w = _sphere_map(norm, z, d, want, config)
    return SphereMapResult(z, w, orientation(ORIGIN, z, w) is want)


def build_probe(norm: Norm, b0: Point2, b1: Point2, b2: Point2, d: Scalar,
                config: SolverConfig = DEFAULT_CONFIG) -> DProbe:
    """Extend a regular-d triple (b0, b1, b2) to a d-probe.

    Works in coordinates translated so b0 sits at the origin.  c1 is the
    first root of h(z) = ||(z + f(z))/2 - (b1 + b2)/2|| - d/2 scanning the
    sphere counterclockwise from b1 toward -b1 (h is -d/2 at b1 and at least
    d/2 at -b1); then c2 = f(c1) and c3 = c1 + c2.
    """
    require_urtc(norm)
    df = float(d)
    if not df > 0:
        raise ValueError("d must be positive")
    tol = 1e-8 * max(1.0, df)
    for x, y, names in ((b0, b1, "b0-b1"), (b0, b2, "b0-b2"), (b1, b2, "b1-b2")):
        err = abs(float(norm.gauge(y - x)) - df)
        if err > tol:
            raise RegularPositionError(
                f"pair {names} has distance off by {err:.3g}; "
                "the three base points must be pairwise at distance d"
            )
    p1, p2 = b1 - b0, b2 - b0
    ori = orientation(ORIGIN, p1, p2)
    if ori is Orientation.COLLINEAR:
        raise RegularPositionError("base points are collinear")
    if ori is Orientation.NEGATIVE:
        p1, p2 = p2, p1

    mx = (float(p1.x) + float(p2.x)) / 2.0
    my = (float(p1.y) + float(p2.y)) / 2.0
    m = Point2(mx, my)

    def h(theta: float) -> float:
        z = norm.boundary_point(theta) * df
        w = _sphere_map(norm, z, df, Orientation.POSITIVE, config)
        mid = Point2((float(z.x) + float(w.x)) / 2.0, (float(z.y) + float(w.y)) / 2.0)
        return float(norm.gauge(mid - m)) - df / 2.0

    t0 = math.atan2(float(p1.y), float(p1.x))
    step = math.pi / _H_SCAN
    prev_t, prev_h = t0, h(t0)
    bracket = None
    for i in range(1, _H_SCAN + 1):
        cur_t = t0 + i * step
        cur_h = h(cur_t)
        if prev_h <= 0.0 <= cur_h:
            bracket = (prev_t, cur_t, prev_h, cur_h)
            break
        prev_t, prev_h = cur_t, cur_h
    if bracket is None:
        raise ProbeConstructionError("no sign change found for the probe root")
    lo, hi, h_lo, h_hi = bracket
    if h_lo == 0.0:
        root = lo
    elif h_hi == 0.0:
        root = hi
    else:
        for _ in range(_H_MAX_ITER):
            if hi - lo <= _H_THETA_TOL:
                break
            mid_t = 0.5 * (lo + hi)
            hm = h(mid_t)
            if hm == 0.0:
                lo = hi = mid_t
                break
            if hm < 0.0:
                lo = mid_t
            else:
                hi = mid_t
        root = 0.5 * (lo + hi)

    c1 = norm.boundary_point(root) * df
    c2 = _sphere_map(norm, c1, df, Orientation.POSITIVE, config)
    c3 = c1 + c2
    return DProbe(
        a=b0, b1=b1, b2=b2, b3=b1 + b2 - b0,
        c1=c1 + b0, c2=c2 + b0, c3=c3 + b0, d=d,
    )


@dataclass(frozen=True)
class ProbeReport:
    """Residuals of the eleven probe distances plus the forced-sum identity."""

    residuals: dict[str, float]
    b3_identity: float
    b3_offset: float
    d: float

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())

    def ok(self, tol: float = 1e-8) -> bool:
        return (
            self.max_residual <= tol
            and self.b3_identity <= tol
            and self.b3_offset > 1e-12 * max(1.0, self.d)
        )

    def __str__(self):
        lines = [f"{k}: {v:.3e}" for k, v in self.residuals.items()]
        lines.append(f"b3-identity: {self.b3_identity:.3e}")
        lines.append(f"b3-offset: {self.b3_offset:.6g}")
        return "\n".join(lines)


def validate_probe(norm: Norm, probe: DProbe) -> ProbeReport:
    df = float(probe.d)
    residuals = {}
    for n1, n2 in PROBE_EDGES:
        dist = norm.gauge(probe.point(n2) - probe.point(n1))
        residuals[f"{n1}-{n2}"] = abs(float(dist) - df)
    forced = probe.b1 + probe.b2 - probe.a
    b3_identity = abs(float(norm.gauge(probe.b3 - forced)))
    b3_offset = abs(float(norm.gauge(probe.b3 - probe.a)))
    return ProbeReport(residuals, b3_identity, b3_offset, df)
