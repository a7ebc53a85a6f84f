"""Pure-Python reference kernels.

Same contract as the compiled ``_speedups`` extension: scalar gauge
evaluation for p-norms and uniform-angle boundary polylines, plus the
scan-and-bisect driver that locates the parameter angles where a norm circle
around ``a`` meets a norm circle around ``b``.  Keep the two implementations
in lockstep; ``tests/test_kernels.py`` checks parity.
"""

from __future__ import annotations

import math

TWO_PI = 2.0 * math.pi

_MAX_BISECT = 200


def gauge_pnorm(p: float, x: float, y: float) -> float:
    """p-norm of (x, y), scaled to dodge overflow for large exponents."""
    if p == 2.0:
        return math.hypot(x, y)
    ax, ay = abs(x), abs(y)
    if p == 1.0:
        return ax + ay
    m = ax if ax > ay else ay
    if m == 0.0:
        return 0.0
    return m * (math.pow(ax / m, p) + math.pow(ay / m, p)) ** (1.0 / p)


def gauge_polyline(vx, vy, x: float, y: float) -> float:
    """Gauge of (x, y) for the body bounded by chords between successive
    boundary samples at uniform angles 2*pi*i/n (sample i lies on ray i)."""
    if x == 0.0 and y == 0.0:
        return 0.0
    n = len(vx)
    phi = math.atan2(y, x)
    if phi < 0.0:
        phi += TWO_PI
    i = int(phi * n / TWO_PI)
    if i >= n:
        i = n - 1
    j = (i + 1) % n
    px, py = vx[i], vy[i]
    qx, qy = vx[j], vy[j]
    # Ray {t*(x,y)} meets chord [pq] at gauge g with (x,y)/g on the chord.
    denom = px * qy - py * qx
    return (x * (qy - py) - y * (qx - px)) / denom


def _boundary_pnorm(p: float, theta: float) -> tuple[float, float]:
    cx, cy = math.cos(theta), math.sin(theta)
    g = gauge_pnorm(p, cx, cy)
    return cx / g, cy / g


def _boundary_polyline(vx, vy, theta: float) -> tuple[float, float]:
    cx, cy = math.cos(theta), math.sin(theta)
    g = gauge_polyline(vx, vy, cx, cy)
    return cx / g, cy / g


def _circle_thetas(gauge, boundary, ax, ay, r1, bx, by, r2,
                   n_scan, theta_tol, t_lo, t_hi, first_only):
    """Roots of F(t) = ||b - (a + r1*B(t))|| - r2 on [t_lo, t_hi].

    Scans n_scan+1 uniform samples, bisects every sign change to theta_tol.
    Exact zeros at samples are taken as roots directly.  Returns the root
    parameters in increasing order (just the first when first_only).
    """

    def f(t):
        ux, uy = boundary(t)
        return gauge(bx - (ax + r1 * ux), by - (ay + r1 * uy)) - r2

    full_circle = abs((t_hi - t_lo) - TWO_PI) < 1e-12
    roots = []
    step = (t_hi - t_lo) / n_scan
    prev_t = t_lo
    prev_f = f(prev_t)
    if prev_f == 0.0:
        roots.append(prev_t)
    for i in range(1, n_scan + 1):
        cur_t = t_lo + i * step
        cur_f = f(cur_t)
        if cur_f == 0.0:
            if not (full_circle and i == n_scan):  # t_hi aliases t_lo
                roots.append(cur_t)
        elif prev_f != 0.0 and (prev_f < 0.0) != (cur_f < 0.0):
            lo, hi, flo = prev_t, cur_t, prev_f
            for _ in range(_MAX_BISECT):
                if hi - lo <= theta_tol:
                    break
                mid = 0.5 * (lo + hi)
                fm = f(mid)
                if fm == 0.0:
                    lo = hi = mid
                    break
                if (fm < 0.0) == (flo < 0.0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
        if first_only and roots:
            return roots[:1]
        prev_t, prev_f = cur_t, cur_f
    return roots


def circle_thetas_pnorm(p, ax, ay, r1, bx, by, r2, n_scan, theta_tol,
                        t_lo=0.0, t_hi=TWO_PI, first_only=False):
    return _circle_thetas(
        lambda x, y: gauge_pnorm(p, x, y),
        lambda t: _boundary_pnorm(p, t),
        ax, ay, r1, bx, by, r2, n_scan, theta_tol, t_lo, t_hi, first_only,
    )


def circle_thetas_polyline(vx, vy, ax, ay, r1, bx, by, r2, n_scan, theta_tol,
                           t_lo=0.0, t_hi=TWO_PI, first_only=False):
    return _circle_thetas(
        lambda x, y: gauge_polyline(vx, vy, x, y),
        lambda t: _boundary_polyline(vx, vy, t),
        ax, ay, r1, bx, by, r2, n_scan, theta_tol, t_lo, t_hi, first_only,
    )
