"""Hand-rolled SVG 1.1 emission for unit circles and probes.

Drawings use mathematical (y-up) coordinates; emission flips y.  The default
viewBox is [-2.5, -2.5] x [2.5, 2.5]; probes are drawn in units of their d so
every probe fits the same frame.
"""

from __future__ import annotations

import math
from typing import Optional

from .geom import Point2
from .norms import Norm, PolygonNorm
from .probe import PROBE_EDGES, DProbe, validate_probe

VIEWBOX = (-2.5, -2.5, 5.0, 5.0)

RESIDUAL_LABEL_THRESHOLD = 1e-10

_SMOOTH_SAMPLES = 512


def _fmt(v: float) -> str:
    return format(v, ".6g")


class SvgCanvas:
    """Tiny element collector; geometry in y-up coordinates."""

    def __init__(self, viewbox=VIEWBOX):
        self.viewbox = viewbox
        self.elements: list[str] = []

    def line(self, a, b, stroke="#333333", width=0.015, dash: Optional[str] = None):
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.elements.append(
            f'<line x1="{_fmt(a[0])}" y1="{_fmt(-a[1])}" x2="{_fmt(b[0])}" '
            f'y2="{_fmt(-b[1])}" stroke="{stroke}" stroke-width="{width}"{dash_attr}/>'
        )

    def polyline(self, points, stroke="#000000", width=0.02, closed=False):
        coords = " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in points)
        tag = "polygon" if closed else "polyline"
        self.elements.append(
            f'<{tag} points="{coords}" fill="none" stroke="{stroke}" '
            f'stroke-width="{width}"/>'
        )

    def dot(self, p, r=0.04, fill="#000000"):
        self.elements.append(
            f'<circle cx="{_fmt(p[0])}" cy="{_fmt(-p[1])}" r="{_fmt(r)}" fill="{fill}"/>'
        )

    def text(self, p, s, size=0.14, fill="#000000", anchor="middle"):
        self.elements.append(
            f'<text x="{_fmt(p[0])}" y="{_fmt(-p[1])}" font-size="{_fmt(size)}" '
            f'fill="{fill}" text-anchor="{anchor}" '
            f'font-family="sans-serif">{s}</text>'
        )

    def to_svg(self) -> str:
        x, y, w, h = self.viewbox
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'viewBox="{_fmt(x)} {_fmt(y)} {_fmt(w)} {_fmt(h)}" '
            'width="480" height="480">\n'
        )
        body = "\n".join("  " + el for el in self.elements)
        return head + body + "\n</svg>\n"


def _axes(canvas: SvgCanvas):
    x, y, w, h = canvas.viewbox
    canvas.line((x, 0), (x + w, 0), stroke="#cccccc", width=0.01)
    canvas.line((0, y), (0, y + h), stroke="#cccccc", width=0.01)


def _sphere_points(norm: Norm, scale: float = 1.0) -> list[tuple[float, float]]:
    if isinstance(norm, PolygonNorm):
        return [(float(v.x) * scale, float(v.y) * scale) for v in norm.vertices]
    pts = []
    for i in range(_SMOOTH_SAMPLES):
        b = norm.boundary_point(2 * math.pi * i / _SMOOTH_SAMPLES)
        pts.append((float(b.x) * scale, float(b.y) * scale))
    return pts


def render_norm(norm: Norm, highlight_segments: bool = True) -> str:
    """Unit circle of the norm; sphere segments drawn thicker (red when their
    endpoint distance exceeds 1)."""
    canvas = SvgCanvas()
    _axes(canvas)
    canvas.polyline(_sphere_points(norm), closed=True)
    if highlight_segments:
        for seg in norm.sphere_segments():
            color = "#cc2222" if seg.endpoint_gauge_distance > 1 else "#2255cc"
            p, q = seg.seg.p, seg.seg.q
            canvas.line((float(p.x), float(p.y)), (float(q.x), float(q.y)),
                        stroke=color, width=0.035)
    canvas.text((0, -2.3), f"unit circle ({norm.kind})", size=0.16)
    return canvas.to_svg()


_LABEL_OFFSETS = {
    "a": (-0.12, -0.12), "b1": (0.12, -0.10), "b2": (0.0, 0.14),
    "b3": (0.14, 0.10), "c1": (0.14, -0.06), "c2": (-0.14, 0.08),
    "c3": (0.0, 0.15),
}


def render_probe(norm: Norm, probe: DProbe) -> str:
    """A probe diagram: the radius-d circle about a, the seven points, and
    the eleven prescribed edges (labeled with residuals when above
    RESIDUAL_LABEL_THRESHOLD).  Drawn in units of d."""
    d = float(probe.d)
    ax, ay = float(probe.a.x), float(probe.a.y)

    def u(p: Point2) -> tuple[float, float]:
        return ((float(p.x) - ax) / d, (float(p.y) - ay) / d)

    report = validate_probe(norm, probe)
    canvas = SvgCanvas()
    _axes(canvas)
    circle = [(x + u(probe.a)[0], y + u(probe.a)[1]) for x, y in _sphere_points(norm)]
    canvas.polyline(circle, stroke="#bbbbbb", width=0.012, closed=True)
    names = ("a", "b1", "b2", "b3", "c1", "c2", "c3")
    pos = {n: u(probe.point(n)) for n in names}
    for n1, n2 in PROBE_EDGES:
        canvas.line(pos[n1], pos[n2], stroke="#444444", width=0.02)
        res = report.residuals[f"{n1}-{n2}"]
        if res > RESIDUAL_LABEL_THRESHOLD:
            mx = (pos[n1][0] + pos[n2][0]) / 2
            my = (pos[n1][1] + pos[n2][1]) / 2
            canvas.text((mx, my), f"{res:.1e}", size=0.10, fill="#cc2222")
    for n in names:
        canvas.dot(pos[n], fill="#111111")
        dx, dy = _LABEL_OFFSETS[n]
        canvas.text((pos[n][0] + dx, pos[n][1] + dy), n, size=0.13)
    canvas.text((0, -2.3), f"probe, d = {probe.d}", size=0.16)
    return canvas.to_svg()
