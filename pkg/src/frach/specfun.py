"""Overflow-safe gamma machinery and the step-h factorial power.

The factorial power ``x`` to the falling ``y`` with step ``h`` is

    h**y * gamma(x/h + 1) / gamma(x/h + 1 - y)

with the convention that a denominator gamma pole makes the whole ratio
zero.  All gamma arithmetic happens in sign/log space so that ratios of
huge gamma values never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from frach import _core
from frach.errors import DomainError

__all__ = [
    "SignedLogValue",
    "log_gamma_signed",
    "gamma_value",
    "h_factorial",
    "h_factorial_limit_error",
]

POLE_TOL = _core.POLE_TOL


@dataclass(frozen=True)
class SignedLogValue:
    """A real number carried as (sign, log magnitude).

    ``sign`` is 0 exactly when the value is zero, in which case
    ``log_magnitude`` is ignored.
    """

    sign: int
    log_magnitude: float

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise DomainError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if self.sign != 0 and not math.isfinite(self.log_magnitude):
            raise DomainError("log magnitude must be finite for nonzero values")

    @classmethod
    def from_real(cls, value: float) -> "SignedLogValue":
        if not math.isfinite(value):
            raise DomainError(f"cannot encode non-finite value {value!r}")
        if value == 0.0:
            return cls(0, 0.0)
        return cls(1 if value > 0.0 else -1, math.log(abs(value)))

    def to_real(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)

    def __mul__(self, other: "SignedLogValue") -> "SignedLogValue":
        if self.sign == 0 or other.sign == 0:
            return SignedLogValue(0, 0.0)
        return SignedLogValue(
            self.sign * other.sign, self.log_magnitude + other.log_magnitude
        )

    def __truediv__(self, other: "SignedLogValue") -> "SignedLogValue":
        if other.sign == 0:
            raise ZeroDivisionError("division by an exact zero SignedLogValue")
        if self.sign == 0:
            return SignedLogValue(0, 0.0)
        return SignedLogValue(
            self.sign * other.sign, self.log_magnitude - other.log_magnitude
        )


def log_gamma_signed(x: float) -> SignedLogValue:
    """Sign and log magnitude of gamma(x).

    Raises PoleError within tolerance of a nonpositive integer and
    DomainError for non-finite arguments.  Negative non-integer arguments
    go through the reflection identity.
    """
    sign, logmag = _core.signed_lgamma(float(x))
    return SignedLogValue(sign, logmag)


def gamma_value(x: float) -> float:
    """gamma(x) materialized from the signed-log representation."""
    return log_gamma_signed(x).to_real()


def h_factorial(x: float, y: float, h: float) -> float:
    """Factorial power of ``x``, order ``y``, on a grid of step ``h``.

    Pole conventions: a denominator-only gamma pole yields exactly 0, a
    double pole yields the residue-ratio limit, and a numerator-only pole
    raises IndeterminateError.  ``y = 0`` returns exactly 1.
    """
    return _core.hfact(float(x), float(y), float(h))


def h_factorial_limit_error(x: float, y: float, h: float) -> float:
    """Distance between the factorial power and its small-step limit x**y."""
    x = float(x)
    y = float(y)
    if x < 0.0 or (x == 0.0 and y < 0.0):
        raise DomainError(f"x**y is not defined for x={x!r}, y={y!r}")
    return abs(h_factorial(x, y, h) - x**y)
