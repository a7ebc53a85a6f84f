"""Benchmark: compiled kernels vs the pure-Python fallback.

Times the scalar gauge evaluations and the circle root scan that dominate
the numeric lane, plus one end-to-end solver call routed through whichever
kernel implementation is active in this process.

Usage:
    python benchmarks/bench_kernels.py [--scan 4096] [--repeat 5]

Run again with MINKPLANE_PURE=1 to see end-to-end numbers on the fallback.
"""

from __future__ import annotations

import argparse
import math
import time
from array import array

from minkplane import _kernels
from minkplane._kernels import _pure

try:
    from minkplane._kernels import _speedups
except ImportError:
    _speedups = None

from minkplane.circles import SolverConfig, intersect_circles
from minkplane.geom import Point2
from minkplane.norms import PNorm


def polyline_samples(n=4096):
    vx, vy = array("d"), array("d")
    for i in range(n):
        t = 2 * math.pi * i / n
        r = 1.0 / math.hypot(math.cos(t) / 1.5, math.sin(t) / 0.8)
        vx.append(r * math.cos(t))
        vy.append(r * math.sin(t))
    return vx, vy


def best_of(fn, repeat, inner):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn()
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def row(label, pure_s, fast_s):
    if fast_s is None:
        print(f"{label:<38} {pure_s*1e6:>12.2f}          (not built)")
    else:
        print(f"{label:<38} {pure_s*1e6:>12.2f} {fast_s*1e6:>12.2f} {pure_s/fast_s:>9.1f}x")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--scan", type=int, default=4096, help="scan samples per circle solve")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    print(f"active kernel implementation: {_kernels.IMPLEMENTATION}")
    print(f"{'kernel':<38} {'pure (us)':>12} {'compiled (us)':>12} {'speedup':>9}")

    vx, vy = polyline_samples()
    cases = [
        ("gauge_pnorm(p=1.5)", lambda k: (lambda: k.gauge_pnorm(1.5, 0.3, -0.7)), 20000),
        ("gauge_pnorm(p=2)", lambda k: (lambda: k.gauge_pnorm(2.0, 0.3, -0.7)), 20000),
        ("gauge_polyline(n=4096)", lambda k: (lambda: k.gauge_polyline(vx, vy, 0.3, -0.7)), 20000),
        (f"circle_thetas_pnorm(p=3, n={args.scan})",
         lambda k: (lambda: k.circle_thetas_pnorm(3.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0,
                                                  args.scan, 1e-12)), 20),
        (f"circle_thetas_polyline(n={args.scan})",
         lambda k: (lambda: k.circle_thetas_polyline(vx, vy, 0.0, 0.0, 1.0, 1.0, 0.2, 1.0,
                                                     args.scan, 1e-12)), 20),
    ]
    for label, make, inner in cases:
        pure_t = best_of(make(_pure), args.repeat, inner)
        fast_t = best_of(make(_speedups), args.repeat, inner) if _speedups else None
        row(label, pure_t, fast_t)

    norm = PNorm(3)
    cfg = SolverConfig(scan_samples=args.scan)
    a, b = Point2(0.0, 0.0), Point2(1.0, 0.0)
    solve = lambda: intersect_circles(norm, a, 1, b, 1, cfg)
    t = best_of(solve, args.repeat, 20)
    print(f"\nend-to-end intersect_circles(PNorm(3)) via '{_kernels.IMPLEMENTATION}': "
          f"{t*1e3:.3f} ms/solve")


if __name__ == "__main__":
    main()
