# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels; mirror of ``_pure`` (see its docstring)."""

from cpython cimport array
import array

from libc.math cimport atan2, cos, fabs, hypot, pow, sin

cdef double TWO_PI = 6.283185307179586476925287
cdef int _MAX_BISECT = 200

cdef array.array _EMPTY = array.array("d", [])


cdef inline double _gauge_pnorm(double p, double x, double y):
    cdef double ax = fabs(x), ay = fabs(y), m
    if p == 2.0:
        return hypot(x, y)
    if p == 1.0:
        return ax + ay
    m = ax if ax > ay else ay
    if m == 0.0:
        return 0.0
    return m * pow(pow(ax / m, p) + pow(ay / m, p), 1.0 / p)


cdef inline double _gauge_polyline(double[::1] vx, double[::1] vy, double x, double y):
    cdef Py_ssize_t n = vx.shape[0], i, j
    cdef double phi, px, py, qx, qy
    if x == 0.0 and y == 0.0:
        return 0.0
    phi = atan2(y, x)
    if phi < 0.0:
        phi += TWO_PI
    i = <Py_ssize_t>(phi * n / TWO_PI)
    if i >= n:
        i = n - 1
    j = i + 1
    if j == n:
        j = 0
    px = vx[i]; py = vy[i]
    qx = vx[j]; qy = vy[j]
    return (x * (qy - py) - y * (qx - px)) / (px * qy - py * qx)


def gauge_pnorm(double p, double x, double y):
    return _gauge_pnorm(p, x, y)


def gauge_polyline(double[::1] vx, double[::1] vy, double x, double y):
    return _gauge_polyline(vx, vy, x, y)


cdef inline double _dispatch(int kind, double p, double[::1] vx, double[::1] vy,
                             double x, double y):
    if kind == 0:
        return _gauge_pnorm(p, x, y)
    return _gauge_polyline(vx, vy, x, y)


cdef inline double _circle_f(int kind, double p, double[::1] vx, double[::1] vy,
                             double ax, double ay, double r1,
                             double bx, double by, double r2, double t):
    cdef double c = cos(t), s = sin(t), g
    g = _dispatch(kind, p, vx, vy, c, s)
    return _dispatch(kind, p, vx, vy,
                     bx - (ax + r1 * c / g), by - (ay + r1 * s / g)) - r2


cdef list _circle_thetas(int kind, double p, double[::1] vx, double[::1] vy,
                         double ax, double ay, double r1,
                         double bx, double by, double r2,
                         int n_scan, double theta_tol,
                         double t_lo, double t_hi, bint first_only):
    cdef bint full_circle = fabs((t_hi - t_lo) - TWO_PI) < 1e-12
    cdef list roots = []
    cdef double step = (t_hi - t_lo) / n_scan
    cdef double prev_t = t_lo, cur_t, cur_f, lo, hi, flo, mid, fm
    cdef double prev_f = _circle_f(kind, p, vx, vy, ax, ay, r1, bx, by, r2, t_lo)
    cdef int i, it
    if prev_f == 0.0:
        roots.append(prev_t)
    for i in range(1, n_scan + 1):
        cur_t = t_lo + i * step
        cur_f = _circle_f(kind, p, vx, vy, ax, ay, r1, bx, by, r2, cur_t)
        if cur_f == 0.0:
            if not (full_circle and i == n_scan):  # t_hi aliases t_lo
                roots.append(cur_t)
        elif prev_f != 0.0 and (prev_f < 0.0) != (cur_f < 0.0):
            lo = prev_t; hi = cur_t; flo = prev_f
            for it in range(_MAX_BISECT):
                if hi - lo <= theta_tol:
                    break
                mid = 0.5 * (lo + hi)
                fm = _circle_f(kind, p, vx, vy, ax, ay, r1, bx, by, r2, mid)
                if fm == 0.0:
                    lo = mid; hi = mid
                    break
                if (fm < 0.0) == (flo < 0.0):
                    lo = mid; flo = fm
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
        if first_only and roots:
            return roots[:1]
        prev_t = cur_t
        prev_f = cur_f
    return roots


def circle_thetas_pnorm(double p, double ax, double ay, double r1,
                        double bx, double by, double r2,
                        int n_scan, double theta_tol,
                        double t_lo=0.0, double t_hi=TWO_PI, bint first_only=False):
    return _circle_thetas(0, p, _EMPTY, _EMPTY, ax, ay, r1, bx, by, r2,
                          n_scan, theta_tol, t_lo, t_hi, first_only)


def circle_thetas_polyline(double[::1] vx, double[::1] vy,
                           double ax, double ay, double r1,
                           double bx, double by, double r2,
                           int n_scan, double theta_tol,
                           double t_lo=0.0, double t_hi=TWO_PI, bint first_only=False):
    return _circle_thetas(1, 0.0, vx, vy, ax, ay, r1, bx, by, r2,
                          n_scan, theta_tol, t_lo, t_hi, first_only)
