"""Two-circle systems in an arbitrary plane norm.

``intersect_circles`` finds every x with ||a - x|| = r1 and ||b - x|| = r2.
For polygonal norms the two circle boundaries are polygons and the answer is
computed exactly (isolated points plus maximal overlap segments); float
inputs are lifted to exact rationals for the combinatorics and the answer is
rounded back.  For p-norms and custom gauges the first circle is parametrized
by angle and sign changes of ||b - z(theta)|| - r2 are bisected.

``two_radius_point`` solves the companion existence problem: one point at
prescribed distances beta from a and alpha from b, whenever
|beta - gamma| <= alpha <= beta + gamma with gamma = ||a - b||.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .geom import ORIGIN, Point2, Scalar, Segment, segment_intersection
from .norms import Norm, PNorm, PolygonNorm

TWO_PI = 2.0 * math.pi


class DegenerateCircleError(ValueError):
    """Identical centers and radii: the solution set is the whole circle."""


class TwoRadiusError(ValueError):
    """|beta - gamma| <= alpha <= beta + gamma fails (or gamma = 0)."""

    def __init__(self, alpha, beta, gamma):
        self.alpha, self.beta, self.gamma = alpha, beta, gamma
        super().__init__(
            f"no circle point at radii beta={beta}, alpha={alpha}: "
            f"need |beta-gamma| <= alpha <= beta+gamma with gamma={gamma}"
        )


@dataclass(frozen=True)
class SolverConfig:
    """Knobs for the scanned (non-polygonal) lane."""

    scan_samples: int = 4096
    theta_tol: float = 1e-12
    tangency_tol: float = 1e-9
    arc_scan_samples: int = 512


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class SolutionSet:
    """Isolated points plus maximal segments solving a two-circle system."""

    points: tuple[Point2, ...]
    segments: tuple[Segment, ...]
    exact: bool
    tolerance: Optional[float] = None

    @property
    def is_empty(self) -> bool:
        return not self.points and not self.segments

    def reflected(self, a: Point2, b: Point2) -> "SolutionSet":
        """Image under x -> a + b - x (a symmetry when r1 = r2)."""
        m = a + b
        return SolutionSet(
            tuple(m - p for p in self.points),
            tuple(Segment(m - s.p, m - s.q) for s in self.segments),
            self.exact,
            self.tolerance,
        )


def solution_residual(norm: Norm, sol: SolutionSet, a: Point2, r1, b: Point2, r2) -> float:
    """Largest circle-equation residual over all reported points, segment
    endpoints, and segment midpoints."""
    worst = 0.0
    probes = list(sol.points)
    for seg in sol.segments:
        probes += [seg.p, seg.q, seg.midpoint()]
    for x in probes:
        worst = max(
            worst,
            abs(float(norm.gauge(x - a)) - float(r1)),
            abs(float(norm.gauge(x - b)) - float(r2)),
        )
    return worst


# ---------------------------------------------------------------------------
# Polygonal lane (exact)
# ---------------------------------------------------------------------------


def _circle_edges(norm: PolygonNorm, center: Point2, r: Fraction) -> list[Segment]:
    verts = [center + r * v for v in norm.vertices]
    n = len(verts)
    return [Segment(verts[i], verts[(i + 1) % n]) for i in range(n)]


def _bbox(seg: Segment):
    lo_x, hi_x = (seg.p.x, seg.q.x) if seg.p.x <= seg.q.x else (seg.q.x, seg.p.x)
    lo_y, hi_y = (seg.p.y, seg.q.y) if seg.p.y <= seg.q.y else (seg.q.y, seg.p.y)
    return lo_x, lo_y, hi_x, hi_y


def _primitive_direction(d: Point2) -> Point2:
    """Scale an exact direction to a canonical primitive integer vector."""
    dx, dy = Fraction(d.x), Fraction(d.y)
    mul = math.lcm(dx.denominator, dy.denominator)
    ix, iy = int(dx * mul), int(dy * mul)
    g = math.gcd(ix, iy)
    ix, iy = ix // g, iy // g
    if ix < 0 or (ix == 0 and iy < 0):
        ix, iy = -ix, -iy
    return Point2(ix, iy)


def _merge_collinear(segments: list[Segment]) -> list[Segment]:
    """Merge exact segments into maximal ones along each supporting line."""
    groups: dict[tuple, list[tuple]] = {}
    for seg in segments:
        u = _primitive_direction(seg.direction)
        key = (u.x, u.y, u.cross(seg.p))
        t0, t1 = u.dot(seg.p), u.dot(seg.q)
        if t0 > t1:
            entry = (t1, t0, seg.q, seg.p)
        else:
            entry = (t0, t1, seg.p, seg.q)
        groups.setdefault(key, []).append(entry)
    merged = []
    for entries in groups.values():
        entries.sort(key=lambda e: (e[0], e[1]))
        lo, hi, p_lo, p_hi = entries[0]
        for t0, t1, p0, p1 in entries[1:]:
            if t0 <= hi:
                if t1 > hi:
                    hi, p_hi = t1, p1
            else:
                merged.append(Segment(p_lo, p_hi))
                lo, hi, p_lo, p_hi = t0, t1, p0, p1
        merged.append(Segment(p_lo, p_hi))
    return merged


def _point_on_exact_segment(p: Point2, seg: Segment) -> bool:
    d = seg.direction
    if d.cross(p - seg.p) != 0:
        return False
    t = d.dot(p - seg.p)
    return 0 <= t <= d.dot(d)


def _intersect_polygonal(norm: PolygonNorm, a, r1, b, r2) -> SolutionSet:
    want_exact = (
        a.is_exact and b.is_exact
        and not isinstance(r1, float) and not isinstance(r2, float)
    )
    ae, be = a.as_exact(), b.as_exact()
    r1e, r2e = Fraction(r1), Fraction(r2)
    edges1 = _circle_edges(norm, ae, r1e)
    edges2 = _circle_edges(norm, be, r2e)
    boxes2 = [_bbox(e) for e in edges2]
    points: set[Point2] = set()
    raw_segments: list[Segment] = []
    for e1 in edges1:
        lx, ly, hx, hy = _bbox(e1)
        for e2, (lx2, ly2, hx2, hy2) in zip(edges2, boxes2):
            if lx2 > hx or hx2 < lx or ly2 > hy or hy2 < ly:
                continue
            hit = segment_intersection(e1, e2)
            if hit is None:
                continue
            if isinstance(hit, Point2):
                points.add(hit)
            elif hit.is_degenerate:
                points.add(hit.p)
            else:
                raw_segments.append(hit)
    segments = _merge_collinear(raw_segments)
    isolated = [
        p for p in points
        if not any(_point_on_exact_segment(p, s) for s in segments)
    ]
    isolated.sort(key=lambda p: (p.x, p.y))
    segments = [s.canonical() for s in segments]
    segments.sort(key=lambda s: (s.p.x, s.p.y, s.q.x, s.q.y))
    if want_exact:
        return SolutionSet(tuple(isolated), tuple(segments), exact=True)
    return SolutionSet(
        tuple(p.as_float() for p in isolated),
        tuple(Segment(s.p.as_float(), s.q.as_float()) for s in segments),
        exact=False,
        tolerance=1e-12,
    )


# ---------------------------------------------------------------------------
# Scanned lane (p-norms and custom gauges)
# ---------------------------------------------------------------------------


def _scan_points(norm, af, r1f, thetas) -> list[Point2]:
    pts = []
    for t in thetas:
        u = norm.boundary_point(t)
        pts.append(Point2(af.x + r1f * u.x, af.y + r1f * u.y))
    return pts


def _dedupe_close(thetas: list[float], span: float) -> list[float]:
    if not thetas:
        return thetas
    eps = 1e-9
    out = [thetas[0]]
    for t in thetas[1:]:
        if t - out[-1] > eps:
            out.append(t)
    # wrap-around duplicate on a full circle
    if len(out) > 1 and abs(span - TWO_PI) < 1e-12 and (out[0] + TWO_PI) - out[-1] <= eps:
        out.pop()
    return out


def _intersect_scanned(norm: Norm, a, r1, b, r2, config: SolverConfig) -> SolutionSet:
    af, bf = a.as_float(), b.as_float()
    r1f, r2f = float(r1), float(r2)
    gamma = float(norm.gauge(bf - af))
    tol = config.tangency_tol
    if gamma > r1f + r2f + tol or gamma < abs(r1f - r2f) - tol:
        return SolutionSet((), (), exact=False, tolerance=tol)
    direction = (bf - af) / gamma
    if abs(gamma - (r1f + r2f)) <= tol:
        return SolutionSet(
            (af + r1f * direction,), (), exact=False, tolerance=tol
        )
    if abs(gamma - abs(r1f - r2f)) <= tol:
        x = af + (r1f if r1f >= r2f else -r1f) * direction
        return SolutionSet((x,), (), exact=False, tolerance=tol)
    thetas = norm._circle_thetas(
        af.x, af.y, r1f, bf.x, bf.y, r2f, config.scan_samples, config.theta_tol
    )
    thetas = _dedupe_close(sorted(thetas), TWO_PI)
    return SolutionSet(
        tuple(_scan_points(norm, af, r1f, thetas)),
        (),
        exact=False,
        tolerance=1e-9,
    )


def intersect_circles(
    norm: Norm,
    a: Point2,
    r1: Scalar,
    b: Point2,
    r2: Scalar,
    config: SolverConfig = DEFAULT_CONFIG,
) -> SolutionSet:
    """All solutions of ||a - x|| = r1, ||b - x|| = r2 in the given norm.

    Polygonal norms give exact answers for exact inputs (float inputs are
    rationalized for the combinatorics and rounded back).  Scanned backends
    return isolated points only; truly segment-valued intersections cannot be
    represented there, so use a polygonal norm when segments matter (for
    p = 1, the diamond polygon).
    """
    if not (r1 > 0 and r2 > 0):
        raise ValueError("radii must be positive")
    if a == b:
        if r1 == r2:
            raise DegenerateCircleError(
                "degenerate: full circle (identical centers and radii)"
            )
        return SolutionSet((), (), exact=norm.exact and a.is_exact)
    if isinstance(norm, PolygonNorm):
        return _intersect_polygonal(norm, a, r1, b, r2)
    return _intersect_scanned(norm, a, r1, b, r2, config)


# ---------------------------------------------------------------------------
# Two-radius existence construction
# ---------------------------------------------------------------------------


def _first_root_on_arc(norm, af, beta, bf, alpha, t_lo, t_hi, n_scan, theta_tol):
    """Reference scan-and-bisect for norms without a compiled scanner."""

    def f(t):
        z = norm.boundary_point(t)
        return float(norm.gauge(bf - (af + beta * z))) - alpha

    prev_t, prev_f = t_lo, f(t_lo)
    if prev_f == 0.0:
        return prev_t
    step = (t_hi - t_lo) / n_scan
    for i in range(1, n_scan + 1):
        cur_t = t_lo + i * step
        cur_f = f(cur_t)
        if cur_f == 0.0:
            return cur_t
        if (prev_f < 0.0) != (cur_f < 0.0):
            lo, hi, flo = prev_t, cur_t, prev_f
            for _ in range(200):
                if hi - lo <= theta_tol:
                    break
                mid = 0.5 * (lo + hi)
                fm = f(mid)
                if fm == 0.0:
                    return mid
                if (fm < 0.0) == (flo < 0.0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            return 0.5 * (lo + hi)
        prev_t, prev_f = cur_t, cur_f
    return None


def two_radius_point(
    norm: Norm,
    a: Point2,
    b: Point2,
    beta: Scalar,
    alpha: Scalar,
    config: SolverConfig = DEFAULT_CONFIG,
) -> Point2:
    """One point c with ||a - c|| = beta and ||b - c|| = alpha.

    Requires gamma = ||a - b|| > 0 and |beta - gamma| <= alpha <= beta + gamma.
    Deterministic: the boundary cases return the collinear anchor points
    a +- (beta/gamma)(b - a); otherwise the root with the smallest parameter
    angle, scanning the circle around a counterclockwise from the anchor
    toward its antipode.
    """
    gamma = norm.gauge(b - a)
    if gamma == 0 or not (abs(beta - gamma) <= alpha <= beta + gamma):
        raise TwoRadiusError(alpha, beta, gamma)
    # Boundary cases are collinear and solved in closed form (exact when the
    # inputs and the norm are).  The float comparisons get a whisker of slack
    # so a mathematically tight hypothesis does not fall into the scanner.
    slack = config.tangency_tol * max(1.0, float(beta), float(gamma))
    if alpha == abs(beta - gamma) or abs(float(alpha) - abs(float(beta) - float(gamma))) <= slack:
        return a + (b - a) * _ratio(beta, gamma)
    if alpha == beta + gamma or abs(float(alpha) - (float(beta) + float(gamma))) <= slack:
        return a - (b - a) * _ratio(beta, gamma)
    af, bf = a.as_float(), b.as_float()
    betaf, alphaf = float(beta), float(alpha)
    t0 = math.atan2(bf.y - af.y, bf.x - af.x)
    if hasattr(norm, "_circle_thetas"):
        roots = norm._circle_thetas(
            af.x, af.y, betaf, bf.x, bf.y, alphaf,
            config.arc_scan_samples, config.theta_tol,
            t0, t0 + math.pi, True,
        )
        root = roots[0] if roots else None
    else:
        root = _first_root_on_arc(
            norm, af, betaf, bf, alphaf, t0, t0 + math.pi,
            config.arc_scan_samples, config.theta_tol,
        )
    if root is None:  # pragma: no cover - continuity guarantees a sign change
        raise TwoRadiusError(alpha, beta, gamma)
    u = norm.boundary_point(root)
    c = Point2(af.x + betaf * u.x, af.y + betaf * u.y)
    return c


def _ratio(beta, gamma) -> Scalar:
    if isinstance(beta, float) or isinstance(gamma, float):
        return float(beta) / float(gamma)
    return Fraction(beta, gamma)
