"""Norm definitions: gauge evaluation, unit-sphere parametrization, and
detection of maximal line segments contained in the unit sphere.

Three backends:

* :class:`PolygonNorm` -- centrally symmetric convex polygon with exact
  rational vertices; gauge values and segment detection are exact.
* :class:`PNorm` -- the p-norms for finite p >= 1 (binary64).  p = infinity is
  rejected: supply the polygonal square instead so that verdicts stay exact.
* :class:`CustomGaugeNorm` -- a user boundary sampler, interpolated by chords
  between uniform-angle samples; every result is tolerance-qualified.
"""

from __future__ import annotations

import json
import math
from array import array
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from . import _kernels
from .geom import ORIGIN, Orientation, Point2, Scalar, Segment, orientation

TWO_PI = 2.0 * math.pi

# Chord-midpoint gauge at or above this declares a locally flat boundary run.
FLAT_RUN_RATIO = 1.0 - 1e-7

# Adjacent flat chords merge into one run while their directions agree to this
# relative cross product (a fraction of a milliradian of turn).
_CHORD_MERGE_CROSS = 1e-3

DEFAULT_CUSTOM_RESOLUTION = 4096


class NormValidationError(ValueError):
    """A norm definition failed validation; .reason is a stable code."""

    def __init__(self, reason: str, message: str):
        self.reason = reason
        super().__init__(message)


@dataclass(frozen=True)
class SphereSegment:
    """A maximal line segment contained in the unit sphere.

    ``endpoint_gauge_distance`` is the norm's own distance between the two
    endpoints; ``approximate`` marks sampled (CustomGauge) detections.
    """

    seg: Segment
    endpoint_gauge_distance: Scalar
    approximate: bool = False


class Norm:
    """Common interface for the three norm backends."""

    kind: str = "abstract"
    exact: bool = False

    def gauge(self, v: Point2) -> Scalar:
        raise NotImplementedError

    def distance(self, a: Point2, b: Point2) -> Scalar:
        return self.gauge(b - a)

    def boundary_point(self, theta: float) -> Point2:
        """The unique unit-sphere point on the ray at angle theta (binary64)."""
        c, s = math.cos(theta), math.sin(theta)
        g = self.gauge(Point2(c, s))
        return Point2(c / g, s / g)

    def boundary_on_ray(self, v: Point2) -> Point2:
        """The unit-sphere point on the ray spanned by v (v != 0).

        Exact when the backend and v are exact.
        """
        g = self.gauge(v)
        if g == 0:
            raise ValueError("no boundary point on a zero ray")
        return Point2(v.x / g, v.y / g)

    def sphere_segments(self) -> list[SphereSegment]:
        raise NotImplementedError


class PolygonNorm(Norm):
    """Norm whose unit ball is a centrally symmetric convex polygon.

    Vertices must have int/Fraction coordinates; they are stored in
    counterclockwise order (a clockwise input is reversed).  Gauge evaluation
    on exact vectors is exact; float vectors get the same formulas in
    binary64.
    """

    kind = "polygonal"
    exact = True

    def __init__(self, vertices: Sequence[Point2]):
        verts = [v if isinstance(v, Point2) else Point2(*v) for v in vertices]
        if len(verts) < 4:
            raise NormValidationError(
                "too-few-vertices",
                f"need at least 4 vertices, got {len(verts)}",
            )
        for v in verts:
            if not v.is_exact:
                raise NormValidationError(
                    "not-exact", f"vertex {v} must have rational coordinates"
                )
        area2 = sum(verts[i].cross(verts[(i + 1) % len(verts)]) for i in range(len(verts)))
        if area2 < 0:
            verts.reverse()
        n = len(verts)
        for i in range(n):
            a, b, c = verts[i], verts[(i + 1) % n], verts[(i + 2) % n]
            o = orientation(a, b, c)
            if o is Orientation.COLLINEAR:
                raise NormValidationError(
                    "collinear-vertices", f"vertices {a}, {b}, {c} are collinear"
                )
            if o is Orientation.NEGATIVE:
                raise NormValidationError("not-convex", "polygon is not convex")
        vset = set(verts)
        if len(vset) != n:
            raise NormValidationError("not-convex", "repeated vertex")
        for v in verts:
            if Point2(-v.x, -v.y) not in vset:
                raise NormValidationError(
                    "not-centrally-symmetric",
                    f"vertex {v} has no antipode -v; polygon is not centrally symmetric",
                )
        for i in range(n):
            if verts[i].cross(verts[(i + 1) % n]) <= 0:
                raise NormValidationError(
                    "origin-not-interior", "origin is not strictly inside the polygon"
                )
        self.vertices: tuple[Point2, ...] = tuple(verts)

    def edges(self) -> list[Segment]:
        n = len(self.vertices)
        return [Segment(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def gauge(self, v: Point2) -> Scalar:
        if v.x == 0 and v.y == 0:
            return 0
        verts = self.vertices
        n = len(verts)
        for i in range(n):
            p, q = verts[i], verts[(i + 1) % n]
            # v inside the half-open cone [ray(p), ray(q))
            if p.cross(v) >= 0 and v.cross(q) > 0:
                num = v.cross(q - p)
                den = p.cross(q)
                if v.is_exact:
                    return Fraction(num, den)
                return num / den
        raise AssertionError("gauge cone lookup failed")  # pragma: no cover

    def sphere_segments(self) -> list[SphereSegment]:
        out = []
        for seg in self.edges():
            out.append(SphereSegment(seg, self.gauge(seg.q - seg.p)))
        return out


class PNorm(Norm):
    """The p-norm (|x|^p + |y|^p)^(1/p) for finite p >= 1."""

    kind = "p"
    exact = False

    def __init__(self, p: Scalar):
        pf = float(p)
        if math.isinf(pf):
            raise NormValidationError(
                "bad-p",
                "p = inf is not supported: use the polygonal square "
                "(vertices (+-1, +-1)) so verdicts stay exact",
            )
        if not pf >= 1.0:
            raise NormValidationError("bad-p", f"p must satisfy p >= 1, got {p!r}")
        self.p = pf

    @property
    def strictly_convex(self) -> bool:
        return self.p > 1.0

    def gauge(self, v: Point2) -> float:
        return _kernels.gauge_pnorm(self.p, float(v.x), float(v.y))

    def sphere_segments(self) -> list[SphereSegment]:
        if self.p > 1.0:
            return []
        diamond = [Point2(1.0, 0.0), Point2(0.0, 1.0), Point2(-1.0, 0.0), Point2(0.0, -1.0)]
        return [
            SphereSegment(Segment(diamond[i], diamond[(i + 1) % 4]), 2.0)
            for i in range(4)
        ]

    def _circle_thetas(self, ax, ay, r1, bx, by, r2, n_scan, theta_tol,
                       t_lo=0.0, t_hi=TWO_PI, first_only=False):
        return _kernels.circle_thetas_pnorm(
            self.p, ax, ay, r1, bx, by, r2, n_scan, theta_tol, t_lo, t_hi, first_only
        )


class CustomGaugeNorm(Norm):
    """Norm given by a boundary sampler: angle -> boundary point on that ray.

    The boundary is interpolated by chords between n uniform-angle samples,
    so every gauge value (and every verdict built on it) carries the sampling
    tolerance.  Validation checks each sample sits on its ray, radii are
    positive and finite, and the curve is centrally symmetric within
    symmetry_tol.
    """

    kind = "custom"
    exact = False

    def __init__(
        self,
        sampler: Callable[[float], Union[Point2, tuple]],
        n: int = DEFAULT_CUSTOM_RESOLUTION,
        symmetry_tol: float = 1e-6,
    ):
        if n < 16 or n % 2:
            raise NormValidationError("bad-sampler", "n must be even and >= 16")
        vx = array("d")
        vy = array("d")
        radii = []
        for i in range(n):
            theta = TWO_PI * i / n
            pt = sampler(theta)
            x, y = (pt.x, pt.y) if isinstance(pt, Point2) else (pt[0], pt[1])
            x, y = float(x), float(y)
            r = math.hypot(x, y)
            if not (math.isfinite(r) and r > 0.0):
                raise NormValidationError(
                    "bad-sampler", f"sample at angle {theta} has radius {r}"
                )
            ux, uy = math.cos(theta), math.sin(theta)
            if abs(ux * y - uy * x) > 1e-7 * r or ux * x + uy * y <= 0.0:
                raise NormValidationError(
                    "bad-sampler",
                    f"sample at angle {theta} is not on its ray: ({x}, {y})",
                )
            vx.append(x)
            vy.append(y)
            radii.append(r)
        half = n // 2
        rmax = max(radii)
        for i in range(half):
            dx = vx[i] + vx[i + half]
            dy = vy[i] + vy[i + half]
            if math.hypot(dx, dy) > symmetry_tol * rmax:
                raise NormValidationError(
                    "not-centrally-symmetric",
                    f"samples at angles {TWO_PI*i/n} and {TWO_PI*(i+half)/n} "
                    "are not antipodal within tolerance",
                )
        self.n = n
        self._sampler = sampler
        self._vx = vx
        self._vy = vy
        self._radius_ratio = rmax / min(radii)

    @property
    def classification_slack(self) -> float:
        """Distance slack induced by the angular sampling grid: flat-run
        endpoints are only located to within about one chord on each side."""
        return 2.0 * (TWO_PI / self.n) * self._radius_ratio

    def gauge(self, v: Point2) -> float:
        return _kernels.gauge_polyline(self._vx, self._vy, float(v.x), float(v.y))

    def sphere_segments(self) -> list[SphereSegment]:
        n = self.n
        flat = []
        for i in range(n):
            j = (i + 1) % n
            mx = 0.5 * (self._vx[i] + self._vx[j])
            my = 0.5 * (self._vy[i] + self._vy[j])
            pt = self._sampler(math.atan2(my, mx) % TWO_PI)
            tx, ty = (pt.x, pt.y) if isinstance(pt, Point2) else (pt[0], pt[1])
            r_true = math.hypot(float(tx), float(ty))
            flat.append(math.hypot(mx, my) / r_true >= FLAT_RUN_RATIO)
        if not any(flat):
            return []

        def joined(i: int) -> bool:
            """Chord i continues into chord i+1: both flat, nearly collinear."""
            j = (i + 1) % n
            if not (flat[i] and flat[j]):
                return False
            k = (j + 1) % n
            ux, uy = self._vx[j] - self._vx[i], self._vy[j] - self._vy[i]
            wx, wy = self._vx[k] - self._vx[j], self._vy[k] - self._vy[j]
            return abs(ux * wy - uy * wx) <= _CHORD_MERGE_CROSS * math.hypot(ux, uy) * math.hypot(wx, wy)

        # Anchor on a chord that no run continues into, so runs wrapping past
        # index n-1 come out in one piece.  Flat chords are merged only while
        # nearly collinear: a polygon-like boundary is flat on every chord and
        # must still be split at its corners.
        anchor = next(
            (i for i in range(n) if not flat[i] or not joined((i - 1) % n)), None
        )
        if anchor is None:  # flat and straight everywhere: not a closed curve
            raise NormValidationError(
                "bad-sampler", "boundary looks like a single line at this resolution"
            )
        runs: list[list[int]] = []
        cur: Optional[list[int]] = None
        for k in range(n):
            idx = (anchor + k) % n
            if not flat[idx]:
                cur = None
                continue
            if cur is None:
                cur = [idx, idx]
                runs.append(cur)
            else:
                cur[1] = idx
            if not joined(idx):
                cur = None
        out = []
        for first, last in runs:
            a = Point2(self._vx[first], self._vy[first])
            b = Point2(self._vx[(last + 1) % n], self._vy[(last + 1) % n])
            out.append(SphereSegment(Segment(a, b), self.gauge(b - a), approximate=True))
        return out

    def _circle_thetas(self, ax, ay, r1, bx, by, r2, n_scan, theta_tol,
                       t_lo=0.0, t_hi=TWO_PI, first_only=False):
        return _kernels.circle_thetas_polyline(
            self._vx, self._vy, ax, ay, r1, bx, by, r2,
            n_scan, theta_tol, t_lo, t_hi, first_only,
        )


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def square_norm() -> PolygonNorm:
    """Unit ball {max(|x|,|y|) <= 1}."""
    return PolygonNorm([Point2(1, 1), Point2(-1, 1), Point2(-1, -1), Point2(1, -1)])


def diamond_norm() -> PolygonNorm:
    """Unit ball {|x|+|y| <= 1}."""
    return PolygonNorm([Point2(1, 0), Point2(0, 1), Point2(-1, 0), Point2(0, -1)])


def hexagon_norm() -> PolygonNorm:
    """Affine-regular hexagon; gauge(x, y) = max(|x|, |y|, |x-y|)."""
    return PolygonNorm(
        [Point2(1, 0), Point2(1, 1), Point2(0, 1), Point2(-1, 0), Point2(-1, -1), Point2(0, -1)]
    )


def octagon_norm() -> PolygonNorm:
    """Octagon with vertices (+-1, +-1/2) and (+-1/2, +-1)."""
    h = Fraction(1, 2)
    return PolygonNorm(
        [
            Point2(1, h), Point2(h, 1), Point2(-h, 1), Point2(-1, h),
            Point2(-1, -h), Point2(-h, -1), Point2(h, -1), Point2(1, -h),
        ]
    )


# ---------------------------------------------------------------------------
# Norm-spec file format
#
# {"kind": "polygonal", "vertices": [["1", "0"], ["1", "1"], ...]}  (rationals
# as "p/q" strings; exact round-trip) or {"kind": "p", "p": "2.5"}.
# ---------------------------------------------------------------------------


def norm_to_jsonable(norm: Norm) -> dict:
    if isinstance(norm, PolygonNorm):
        return {
            "kind": "polygonal",
            "vertices": [[str(_frac(v.x)), str(_frac(v.y))] for v in norm.vertices],
        }
    if isinstance(norm, PNorm):
        return {"kind": "p", "p": repr(norm.p)}
    raise NormValidationError(
        "not-serializable", f"{norm.kind} norms have no file representation"
    )


def norm_from_jsonable(obj) -> Norm:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise NormValidationError("bad-spec", "norm spec must be an object with a 'kind'")
    kind = obj["kind"]
    if kind == "polygonal":
        raw = obj.get("vertices")
        if not isinstance(raw, list):
            raise NormValidationError("bad-spec", "polygonal spec needs a 'vertices' list")
        verts = []
        for i, pair in enumerate(raw):
            try:
                x, y = pair
                verts.append(Point2(Fraction(str(x)), Fraction(str(y))))
            except (ValueError, ZeroDivisionError, TypeError) as exc:
                raise NormValidationError(
                    "bad-spec", f"vertex #{i} is not a rational pair: {pair!r} ({exc})"
                ) from None
        return PolygonNorm(verts)
    if kind == "p":
        if "p" not in obj:
            raise NormValidationError("bad-spec", "p-norm spec needs a 'p' value")
        try:
            p = float(Fraction(str(obj["p"])))
        except (ValueError, ZeroDivisionError) as exc:
            raise NormValidationError("bad-spec", f"bad p value {obj['p']!r} ({exc})") from None
        return PNorm(p)
    raise NormValidationError("bad-spec", f"unknown norm kind {kind!r}")


def dump_norm(norm: Norm) -> str:
    obj = norm_to_jsonable(norm)
    if obj["kind"] == "polygonal":
        rows = ",\n    ".join(json.dumps(v) for v in obj["vertices"])
        return '{\n  "kind": "polygonal",\n  "vertices": [\n    ' + rows + "\n  ]\n}\n"
    return json.dumps(obj, indent=2) + "\n"


def parse_norm(text: str) -> Norm:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NormValidationError(
            "bad-spec", f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    return norm_from_jsonable(obj)


def load_norm(path) -> Norm:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_norm(fh.read())


def save_norm(norm: Norm, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_norm(norm))
