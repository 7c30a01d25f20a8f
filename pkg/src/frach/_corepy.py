"""Pure-Python numeric core.

This module and the compiled twin ``_corec`` implement the same functions
with the same floating-point operation order; ``frach._core`` picks one of
them at import time.  Any change here must be mirrored statement for
statement in ``_corec.pyx`` so the two backends keep producing identical
bits (the benchmark and the backend tests compare them exactly).
"""

from __future__ import annotations

import math

import numpy as np

from frach.errors import DomainError, IndeterminateError, PoleError

backend_name = "pure"

# An argument this close to a nonpositive integer counts as a gamma pole.
POLE_TOL = 1e-9

_HALF_LOG_TWO_PI = 0.9189385332046727
_LOG_PI = 1.1447298858494002

# Coefficients B(2n) / (2n (2n-1)) of the asymptotic log-gamma series.
_S1 = 0.08333333333333333
_S2 = -0.002777777777777778
_S3 = 0.0007936507936507937
_S4 = -0.0005952380952380953
_S5 = 0.0008417508417508417
_S6 = -0.0019175269175269176
_S7 = 0.00641025641025641
_S8 = -0.029550653594771242


def is_pole(z: float) -> bool:
    """True when ``z`` is within tolerance of a nonpositive integer."""
    n = math.floor(z + 0.5)
    return n <= 0.0 and abs(z - n) <= POLE_TOL


def _lgamma_pos(x: float) -> float:
    # log gamma for x > 0: recurrence shift into x >= 10, then the
    # asymptotic series.  Exact at the two zeros of log gamma.
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
    lg = (z - 0.5) * math.log(z) - z + _HALF_LOG_TWO_PI + s
    if shift != 1.0:
        lg -= math.log(shift)
    return lg


def _sinpi(x: float) -> float:
    # sin(pi x) with the argument reduced exactly, so accuracy survives
    # near the zeros where the reflection formula needs it most.
    n = math.floor(x + 0.5)
    s = math.sin(3.141592653589793 * (x - n))
    if n % 2 != 0:
        s = -s
    return s


def _siglg(x: float) -> tuple[int, float]:
    # (sign of gamma(x), log |gamma(x)|); caller guarantees x off poles.
    if x > 0.0:
        return 1, _lgamma_pos(x)
    s = _sinpi(x)
    logmag = _LOG_PI - math.log(abs(s)) - _lgamma_pos(1.0 - x)
    return (1, logmag) if s > 0.0 else (-1, logmag)


def signed_lgamma(x: float) -> tuple[int, float]:
    """Sign and log magnitude of gamma(x)."""
    if not math.isfinite(x):
        raise DomainError(f"gamma argument must be finite, got {x!r}")
    if is_pole(x):
        raise PoleError(f"gamma pole at x = {x!r}")
    return _siglg(x)


def hfact(x: float, y: float, h: float) -> float:
    """Factorial power of step h: h**y * gamma(x/h+1) / gamma(x/h+1-y).

    Pole handling: zero when only the denominator gamma is at a pole,
    the residue-ratio limit when both are, an error when only the
    numerator is.  y = 0 gives exactly 1, y = 1 exactly x (off poles).
    """
    if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(h)):
        raise DomainError("factorial power needs finite arguments")
    if h <= 0.0:
        raise DomainError(f"step must be positive, got {h!r}")
    if y == 0.0:
        return 1.0
    p = x / h + 1.0
    q = p - y
    p_pole = is_pole(p)
    q_pole = is_pole(q)
    if p_pole and q_pole:
        m = -int(math.floor(p + 0.5))
        n = -int(math.floor(q + 0.5))
        mag = math.exp(_lgamma_pos(n + 1.0) - _lgamma_pos(m + 1.0)) * h ** y
        return -mag if (n - m) % 2 != 0 else mag
    if q_pole:
        return 0.0
    if p_pole:
        raise IndeterminateError(
            f"factorial power is infinite: numerator gamma pole at {p!r}"
        )
    if y == 1.0:
        return x
    sp, lp = _siglg(p)
    sq, lq = _siglg(q)
    mag = math.exp(lp - lq) * h ** y
    return mag if sp == sq else -mag


def left_frac_sum_values(values, nu: float, h: float) -> np.ndarray:
    """Left fractional sum of the sample vector; caller guarantees nu > 0.

    The kernel weight depends only on the index distance m, so it is
    tabulated once per call; each entry is the same float the direct
    per-pair evaluation of ``hfact`` would produce.
    """
    f = [float(v) for v in values]
    n = len(f)
    w = [0.0] * n
    for m in range(n):
        if not (nu + m > 0.0):
            raise AssertionError("fractional-sum kernel reached a gamma pole")
        w[m] = hfact((nu - 1.0 + m) * h, nu - 1.0, h)
    g = math.exp(_lgamma_pos(nu))
    out = np.empty(n)
    for i in range(n):
        acc = 0.0
        for j in range(i + 1):
            acc += w[i - j] * f[j]
        out[i] = acc * h / g
    return out


def right_frac_sum_values(values, nu: float, h: float) -> np.ndarray:
    """Right fractional sum of the sample vector; mirror of the left one."""
    f = [float(v) for v in values]
    n = len(f)
    w = [0.0] * n
    for m in range(n):
        if not (nu + m > 0.0):
            raise AssertionError("fractional-sum kernel reached a gamma pole")
        w[m] = hfact((nu - 1.0 + m) * h, nu - 1.0, h)
    g = math.exp(_lgamma_pos(nu))
    out = np.empty(n)
    for i in range(n):
        acc = 0.0
        for j in range(i, n):
            acc += w[j - i] * f[j]
        out[i] = acc * h / g
    return out
