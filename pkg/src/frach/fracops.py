"""Differences, running sums, and fractional-order sums and differences.

The left fractional sum of order nu maps a function on {a, ..., b} to one
on {a + nu*h, ..., b + nu*h}; the right sum shifts the other way.  A
fractional difference of order alpha in (0, 1] is the one-step difference
of the sum of order 1 - alpha, and at alpha = 1 collapses exactly to the
plain difference.  The aligned variants report the same values back on
the unshifted abscissae {a, ..., b-h}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from frach import _core
from frach.errors import DomainError, TooShortError
from frach.grid import GridFunction
from frach.specfun import gamma_value, h_factorial

__all__ = [
    "FracOrder",
    "forward_diff",
    "h_sum",
    "left_frac_sum",
    "right_frac_sum",
    "left_frac_diff",
    "right_frac_diff",
    "left_frac_diff_aligned",
    "right_frac_diff_aligned",
    "sum_of_difference_residual",
    "exponent_law_residual",
]


@dataclass(frozen=True)
class FracOrder:
    """A fractional order: nonnegative for sums, in (0, 1] for differences."""

    value: float
    is_difference: bool = False

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise DomainError("fractional order must be finite")
        if self.is_difference:
            if not 0.0 < self.value <= 1.0:
                raise DomainError(
                    f"difference order must lie in (0, 1], got {self.value!r}"
                )
        elif self.value < 0.0:
            raise DomainError(f"sum order must be nonnegative, got {self.value!r}")

    @property
    def gamma(self) -> float:
        """The complementary order 1 - alpha of a difference."""
        if not self.is_difference:
            raise DomainError("gamma is defined only for difference orders")
        return 1.0 - self.value


def _as_sum_order(nu) -> float:
    if isinstance(nu, FracOrder):
        if nu.is_difference:
            raise DomainError("expected a sum order, got a difference order")
        return nu.value
    return FracOrder(float(nu)).value


def _as_diff_order(alpha) -> float:
    if isinstance(alpha, FracOrder):
        if not alpha.is_difference:
            raise DomainError("expected a difference order, got a sum order")
        return alpha.value
    return FracOrder(float(alpha), is_difference=True).value


def forward_diff(f: GridFunction) -> GridFunction:
    """One-step forward difference, one point shorter than the input."""
    if f.n < 2:
        raise TooShortError("forward difference needs at least two points")
    vals = (f.values[1:] - f.values[:-1]) / f.h
    return GridFunction(f.origin, f.h, vals)


def h_sum(f: GridFunction) -> GridFunction:
    """Running sum scaled by the step, one point longer than the input.

    The value at the first abscissa is the empty sum, zero.
    """
    out = np.empty(f.n + 1)
    out[0] = 0.0
    acc = 0.0
    for j in range(f.n):
        acc = acc + float(f.values[j]) * f.h
        out[j + 1] = acc
    return GridFunction(f.origin, f.h, out)


def left_frac_sum(f: GridFunction, nu) -> GridFunction:
    """Left fractional sum of order nu >= 0; order zero is the identity."""
    nu = _as_sum_order(nu)
    if nu == 0.0:
        return f
    vals = _core.left_frac_sum_values(
        np.ascontiguousarray(f.values, dtype=np.float64), nu, f.h
    )
    return GridFunction(f.origin + nu * f.h, f.h, vals)


def right_frac_sum(f: GridFunction, nu) -> GridFunction:
    """Right fractional sum of order nu >= 0, stored in ascending order."""
    nu = _as_sum_order(nu)
    if nu == 0.0:
        return f
    vals = _core.right_frac_sum_values(
        np.ascontiguousarray(f.values, dtype=np.float64), nu, f.h
    )
    return GridFunction(f.origin - nu * f.h, f.h, vals)


def left_frac_diff(f: GridFunction, alpha) -> GridFunction:
    """Left fractional difference of order alpha in (0, 1]."""
    alpha = _as_diff_order(alpha)
    if f.n < 2:
        raise TooShortError("fractional difference needs at least two points")
    return forward_diff(left_frac_sum(f, 1.0 - alpha))


def right_frac_diff(f: GridFunction, alpha) -> GridFunction:
    """Right fractional difference of order alpha in (0, 1].

    Carries the leading minus sign; at alpha = 1 it is the negated
    forward difference.
    """
    alpha = _as_diff_order(alpha)
    if f.n < 2:
        raise TooShortError("fractional difference needs at least two points")
    d = forward_diff(right_frac_sum(f, 1.0 - alpha))
    return GridFunction(d.origin, d.h, -d.values)


def left_frac_diff_aligned(f: GridFunction, alpha) -> GridFunction:
    """Left fractional difference reported on the unshifted abscissae."""
    return left_frac_diff(f, alpha).with_origin(f.origin)


def right_frac_diff_aligned(f: GridFunction, alpha) -> GridFunction:
    """Right fractional difference reported on the unshifted abscissae."""
    return right_frac_diff(f, alpha).with_origin(f.origin)


def sum_of_difference_residual(f: GridFunction, nu) -> float:
    """Largest defect in the identity moving a difference through a sum.

    Summing the differenced function equals differencing the summed one
    minus a boundary correction proportional to the first value.
    """
    nu = _as_sum_order(nu)
    if f.n < 3:
        raise TooShortError("the transfer identity needs at least three points")
    lhs = left_frac_sum(forward_diff(f), nu)
    rhs = forward_diff(left_frac_sum(f, nu))
    coef = nu / gamma_value(nu + 1.0)
    f_a = float(f.values[0])
    worst = 0.0
    for i in range(lhs.n):
        corr = coef * h_factorial((nu + i) * f.h, nu - 1.0, f.h) * f_a
        worst = max(worst, abs(float(lhs.values[i]) - (float(rhs.values[i]) - corr)))
    return worst


def exponent_law_residual(f: GridFunction, mu, nu, side: str) -> float:
    """Largest defect of composing two fractional sums against one sum.

    The orders add: summing of order mu after order nu must match the
    single sum of order mu + nu on the common shifted domain.
    """
    mu = _as_sum_order(mu)
    nu = _as_sum_order(nu)
    if side == "left":
        composed = left_frac_sum(left_frac_sum(f, nu), mu)
        single = left_frac_sum(f, mu + nu)
    elif side == "right":
        composed = right_frac_sum(right_frac_sum(f, nu), mu)
        single = right_frac_sum(f, mu + nu)
    else:
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    return float(np.max(np.abs(composed.values - single.values)))
