"""URTC classification: does every unit-distance pair of centers admit
exactly two points at unit distance from both?

The segment criterion decides this: the property fails exactly when the unit
sphere contains a line segment whose endpoints are more than distance 1
apart.  Polygonal norms get an exact verdict, p-norms a closed-form one, and
custom gauges a tolerance-qualified verdict that may come back inconclusive
near the deciding threshold.  ``sampling_check`` is an independent oracle
that counts solutions over random unit pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .circles import DEFAULT_CONFIG, SolverConfig, intersect_circles
from .geom import Point2
from .norms import CustomGaugeNorm, Norm, PNorm, PolygonNorm, SphereSegment

SEGMENT_CRITERION = "segment-criterion"
SAMPLING = "sampling"


class Verdict(Enum):
    URTC = "urtc"
    NOT_URTC = "not-urtc"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class UrtcVerdict:
    verdict: Verdict
    witness: Optional[SphereSegment]
    method: str
    exact: bool
    tolerance: Optional[float] = None

    def __str__(self):
        parts = [self.verdict.value, f"method={self.method}"]
        parts.append("exact" if self.exact else f"approx(tol={self.tolerance:g})")
        if self.witness is not None:
            w = self.witness
            parts.append(
                f"witness=({w.seg.p.x}, {w.seg.p.y})--({w.seg.q.x}, {w.seg.q.y})"
                f" distance {w.endpoint_gauge_distance}"
            )
        return " ".join(parts)


def classify(norm: Norm) -> UrtcVerdict:
    """Segment-criterion verdict for a norm.  Cached per norm instance."""
    cached = getattr(norm, "_urtc_verdict", None)
    if cached is not None:
        return cached
    verdict = _classify(norm)
    try:
        norm._urtc_verdict = verdict
    except AttributeError:  # pragma: no cover - all concrete norms allow it
        pass
    return verdict


def _classify(norm: Norm) -> UrtcVerdict:
    if isinstance(norm, PolygonNorm):
        for seg in norm.sphere_segments():
            if seg.endpoint_gauge_distance > 1:  # exact, strict
                return UrtcVerdict(Verdict.NOT_URTC, seg, SEGMENT_CRITERION, exact=True)
        return UrtcVerdict(Verdict.URTC, None, SEGMENT_CRITERION, exact=True)
    if isinstance(norm, PNorm):
        if norm.p > 1.0:
            # Strictly convex: the sphere carries no segment at all.
            return UrtcVerdict(Verdict.URTC, None, SEGMENT_CRITERION, exact=True)
        return UrtcVerdict(
            Verdict.NOT_URTC, norm.sphere_segments()[0], SEGMENT_CRITERION, exact=True
        )
    if isinstance(norm, CustomGaugeNorm):
        slack = norm.classification_slack
        runs = norm.sphere_segments()
        worst = None
        for seg in runs:
            if worst is None or seg.endpoint_gauge_distance > worst.endpoint_gauge_distance:
                worst = seg
        if worst is None or worst.endpoint_gauge_distance < 1 - slack:
            return UrtcVerdict(Verdict.URTC, None, SEGMENT_CRITERION, exact=False, tolerance=slack)
        if worst.endpoint_gauge_distance > 1 + slack:
            return UrtcVerdict(Verdict.NOT_URTC, worst, SEGMENT_CRITERION, exact=False, tolerance=slack)
        return UrtcVerdict(Verdict.INCONCLUSIVE, None, SEGMENT_CRITERION, exact=False, tolerance=slack)
    raise TypeError(f"unknown norm backend {type(norm).__name__}")


def counterexample_pair(norm: Norm, witness: SphereSegment) -> tuple[Point2, Point2]:
    """A unit-distance pair whose two-circle system contains a segment.

    Given a sphere segment [c, d] with ||c - d|| > 1, centers a = 0 and
    b = (d - c)/||d - c|| admit the segment [c + b, d] of solutions.
    """
    dist = witness.endpoint_gauge_distance
    if not dist > 1:
        raise ValueError(
            f"witness endpoint distance must exceed 1, got {dist}"
        )
    c, d = witness.seg.p, witness.seg.q
    b = (d - c) / dist
    return Point2(0, 0), b


@dataclass(frozen=True)
class SamplingReport:
    max_solution_count: int
    found_segment: bool
    pairs_checked: int


def sampling_check(
    norm: Norm,
    n_pairs: int = 1000,
    seed: int = 0,
    extra_pairs: Sequence[tuple[Point2, Point2]] = (),
    config: SolverConfig = DEFAULT_CONFIG,
) -> SamplingReport:
    """Count solutions of the two-circle system over random unit pairs.

    Pairs are (a, a + u) with a on the unit sphere and u a unit vector at a
    random boundary position, so ||a - b|| = 1 by construction -- exactly, on
    the polygonal backend, where boundary positions are drawn at rational
    parameters.  Deterministic for a fixed seed.
    """
    if n_pairs < 1:
        raise ValueError("n_pairs must be >= 1")
    rng = random.Random(seed)
    if isinstance(norm, PolygonNorm):
        verts = norm.vertices
        m = len(verts)

        def boundary():
            i = rng.randrange(m)
            t = Fraction(rng.randrange(64), 64)
            p, q = verts[i], verts[(i + 1) % m]
            return p + t * (q - p)

    else:
        def boundary():
            return norm.boundary_point(rng.uniform(0.0, 6.283185307179586))

    pairs = []
    for _ in range(n_pairs):
        a = boundary()
        b = a + boundary()
        pairs.append((a, b))
    pairs.extend(extra_pairs)

    max_count = 0
    found_segment = False
    for a, b in pairs:
        sol = intersect_circles(norm, a, 1, b, 1, config)
        max_count = max(max_count, len(sol.points))
        if sol.segments:
            found_segment = True
    return SamplingReport(max_count, found_segment, len(pairs))
