"""Closed forms: power rules for fractional sums and the solution
families of constant-coefficient fractional difference equations.

The kernel solutions play the role of integration constants: they are
exactly the functions annihilated by the corresponding fractional
difference operator.
"""

from __future__ import annotations

import math

from frach import _core
from frach.errors import DomainError
from frach.fracops import _as_diff_order, _as_sum_order
from frach.grid import GridFunction, HGrid, sample
from frach.specfun import gamma_value, h_factorial, log_gamma_signed

__all__ = [
    "power_rule_left",
    "power_rule_right",
    "left_kernel_solution",
    "right_kernel_solution",
    "right_constant_solution",
]


def _is_excluded(z: float) -> bool:
    # The power rules exclude {-1, -2, ...} for the gamma-ratio arguments.
    n = math.floor(z + 0.5)
    return n <= -1.0 and abs(z - n) <= _core.POLE_TOL


def _index_on(t: float, start: float, step: float, direction: float) -> int:
    j = round((t - start) / (direction * step))
    if j < 0 or abs(t - (start + direction * j * step)) > 1e-8 * step:
        raise DomainError(f"abscissa {t!r} is not on the admissible grid")
    return j


def power_rule_left(mu: float, nu, grid: HGrid, t: float) -> float:
    """Exact left fractional sum, order nu, of s -> (s - a + mu) to the
    falling mu/h, evaluated at ``t`` in {a + nu*h, a + nu*h + h, ...}."""
    nu = _as_sum_order(nu)
    r = mu / grid.h
    if _is_excluded(r) or _is_excluded(r + nu):
        raise DomainError(f"power rule undefined for mu/h = {r!r}, nu = {nu!r}")
    _index_on(t, grid.a + nu * grid.h, grid.h, +1.0)
    ratio = log_gamma_signed(r + 1.0) / log_gamma_signed(r + nu + 1.0)
    return ratio.to_real() * h_factorial(t - grid.a + mu, r + nu, grid.h)


def power_rule_right(mu: float, nu, grid: HGrid, t: float) -> float:
    """Exact right fractional sum, order nu, of s -> (b - mu - s) to the
    falling -mu/h, evaluated at ``t`` in {b - nu*h, b - nu*h - h, ...}."""
    nu = _as_sum_order(nu)
    r = -mu / grid.h
    if _is_excluded(r) or _is_excluded(r + nu):
        raise DomainError(f"power rule undefined for -mu/h = {r!r}, nu = {nu!r}")
    _index_on(t, grid.b - nu * grid.h, grid.h, -1.0)
    ratio = log_gamma_signed(r + 1.0) / log_gamma_signed(r + nu + 1.0)
    return ratio.to_real() * h_factorial(grid.b - mu - t, r + nu, grid.h)


def right_kernel_solution(grid: HGrid, alpha, c: float) -> GridFunction:
    """The one-parameter family annihilated by the right fractional
    difference of order alpha, sampled on the whole grid."""
    alpha = _as_diff_order(alpha)
    coef = c / gamma_value(alpha)
    shifted_end = grid.b - (1.0 - alpha) * grid.h

    def kernel(t: float) -> float:
        return coef * h_factorial(shifted_end - t, alpha - 1.0, grid.h)

    return sample(kernel, grid.a, grid.h, grid.n_points)


def left_kernel_solution(grid: HGrid, alpha, c: float) -> GridFunction:
    """Mirror of :func:`right_kernel_solution` for the left difference."""
    alpha = _as_diff_order(alpha)
    coef = c / gamma_value(alpha)
    shifted_start = grid.a + (1.0 - alpha) * grid.h

    def kernel(t: float) -> float:
        return coef * h_factorial(t - shifted_start, alpha - 1.0, grid.h)

    return sample(kernel, grid.a, grid.h, grid.n_points)


def right_constant_solution(grid: HGrid, alpha, c: float, d: float) -> GridFunction:
    """The family whose right fractional difference is the constant c, with
    free constant d multiplying the kernel part."""
    alpha = _as_diff_order(alpha)
    b = grid.b
    affine_top = b + alpha * grid.h - b * alpha - alpha * alpha * grid.h
    inv_gamma = 1.0 / gamma_value(alpha + 1.0)
    shifted_end = b - (1.0 - alpha) * grid.h

    def solution(t: float) -> float:
        coef = (c * (affine_top - t) + d * alpha) * inv_gamma
        return coef * h_factorial(shifted_end - t, alpha - 1.0, grid.h)

    return sample(solution, grid.a, grid.h, grid.n_points)
