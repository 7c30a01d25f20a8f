# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled numeric core.

Statement-for-statement mirror of ``frach._corepy``; both backends must
produce identical bits (compile without floating-point contraction).
"""

import numpy as np

from libc.math cimport exp, fabs, floor, fmod, isfinite, log, pow, sin

from frach.errors import DomainError, IndeterminateError, PoleError

backend_name = "compiled"

POLE_TOL = 1e-9

cdef double _POLE_TOL = 1e-9
cdef double _HALF_LOG_TWO_PI = 0.9189385332046727
cdef double _LOG_PI = 1.1447298858494002
cdef double _PI = 3.141592653589793

cdef double _S1 = 0.08333333333333333
cdef double _S2 = -0.002777777777777778
cdef double _S3 = 0.0007936507936507937
cdef double _S4 = -0.0005952380952380953
cdef double _S5 = 0.0008417508417508417
cdef double _S6 = -0.0019175269175269176
cdef double _S7 = 0.00641025641025641
cdef double _S8 = -0.029550653594771242


cdef inline bint _is_pole_c(double z):
    cdef double n = floor(z + 0.5)
    return n <= 0.0 and fabs(z - n) <= _POLE_TOL


def is_pole(double z):
    """True when ``z`` is within tolerance of a nonpositive integer."""
    return bool(_is_pole_c(z))


cdef double _lgamma_pos(double x):
    cdef double shift, z, r, r2, s, lg
    if x == 1.0 or x == 2.0:
        return 0.0
    shift = 1.0
    z = x
    while z < 10.0:
        shift *= z
        z += 1.0
    r = 1.0 / z
    r2 = r * r
    s = _S8
    s = s * r2 + _S7
    s = s * r2 + _S6
    s = s * r2 + _S5
    s = s * r2 + _S4
    s = s * r2 + _S3
    s = s * r2 + _S2
    s = s * r2 + _S1
    s = s * r
    lg = (z - 0.5) * log(z) - z + _HALF_LOG_TWO_PI + s
    if shift != 1.0:
        lg -= log(shift)
    return lg


cdef double _sinpi(double x):
    cdef double n = floor(x + 0.5)
    cdef double s = sin(_PI * (x - n))
    if fmod(n, 2.0) != 0.0:
        s = -s
    return s


cdef int _siglg_c(double x, double *logmag):
    cdef double s
    if x > 0.0:
        logmag[0] = _lgamma_pos(x)
        return 1
    s = _sinpi(x)
    logmag[0] = _LOG_PI - log(fabs(s)) - _lgamma_pos(1.0 - x)
    return 1 if s > 0.0 else -1


def signed_lgamma(double x):
    """Sign and log magnitude of gamma(x)."""
    cdef double logmag
    cdef int sign
    if not isfinite(x):
        raise DomainError(f"gamma argument must be finite, got {x!r}")
    if _is_pole_c(x):
        raise PoleError(f"gamma pole at x = {x!r}")
    sign = _siglg_c(x, &logmag)
    return sign, logmag


cdef double _hfact_c(double x, double y, double h) except? -1.7e308:
    cdef double p, q, mag, lp, lq
    cdef long long m, n
    cdef int sp, sq
    cdef bint p_pole, q_pole
    if not (isfinite(x) and isfinite(y) and isfinite(h)):
        raise DomainError("factorial power needs finite arguments")
    if h <= 0.0:
        raise DomainError(f"step must be positive, got {h!r}")
    if y == 0.0:
        return 1.0
    p = x / h + 1.0
    q = p - y
    p_pole = _is_pole_c(p)
    q_pole = _is_pole_c(q)
    if p_pole and q_pole:
        m = -(<long long> floor(p + 0.5))
        n = -(<long long> floor(q + 0.5))
        mag = exp(_lgamma_pos(n + 1.0) - _lgamma_pos(m + 1.0)) * pow(h, y)
        return -mag if (n - m) % 2 != 0 else mag
    if q_pole:
        return 0.0
    if p_pole:
        raise IndeterminateError(
            f"factorial power is infinite: numerator gamma pole at {p!r}"
        )
    if y == 1.0:
        return x
    sp = _siglg_c(p, &lp)
    sq = _siglg_c(q, &lq)
    mag = exp(lp - lq) * pow(h, y)
    return mag if sp == sq else -mag


def hfact(double x, double y, double h):
    """Factorial power of step h: h**y * gamma(x/h+1) / gamma(x/h+1-y)."""
    return _hfact_c(x, y, h)


def left_frac_sum_values(const double[::1] values, double nu, double h):
    """Left fractional sum of the sample vector; caller guarantees nu > 0."""
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t m, i, j
    cdef double acc, g
    w_arr = np.empty(n)
    out_arr = np.empty(n)
    cdef double[::1] w = w_arr
    cdef double[::1] out = out_arr
    for m in range(n):
        if not (nu + m > 0.0):
            raise AssertionError("fractional-sum kernel reached a gamma pole")
        w[m] = _hfact_c((nu - 1.0 + m) * h, nu - 1.0, h)
    g = exp(_lgamma_pos(nu))
    for i in range(n):
        acc = 0.0
        for j in range(i + 1):
            acc += w[i - j] * values[j]
        out[i] = acc * h / g
    return out_arr


def right_frac_sum_values(const double[::1] values, double nu, double h):
    """Right fractional sum of the sample vector; mirror of the left one."""
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t m, i, j
    cdef double acc, g
    w_arr = np.empty(n)
    out_arr = np.empty(n)
    cdef double[::1] w = w_arr
    cdef double[::1] out = out_arr
    for m in range(n):
        if not (nu + m > 0.0):
            raise AssertionError("fractional-sum kernel reached a gamma pole")
        w[m] = _hfact_c((nu - 1.0 + m) * h, nu - 1.0, h)
    g = exp(_lgamma_pos(nu))
    for i in range(n):
        acc = 0.0
        for j in range(i, n):
            acc += w[j - i] * values[j]
        out[i] = acc * h / g
    return out_arr
