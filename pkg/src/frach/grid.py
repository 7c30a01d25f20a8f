"""Uniform step grids, grid-sampled functions, and their CSV form.

Abscissae are always derived as ``origin + j*h`` from an (origin, step,
index) triple, never accumulated, so long grids do not drift.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from frach.errors import DomainError, StepMismatchError

__all__ = [
    "HGrid",
    "GridFunction",
    "Overlap",
    "sigma",
    "rho",
    "sample",
    "align",
    "write_csv",
    "read_csv",
]

# Two origins are the same grid point when they differ by less than this
# fraction of a step.
ORIGIN_TOL = 1e-12


def sigma(t: float, h: float) -> float:
    """Forward shift by one step."""
    return t + h


def rho(t: float, h: float) -> float:
    """Backward shift by one step."""
    return t - h


@dataclass(frozen=True)
class HGrid:
    """The uniform grid {a, a+h, ..., a+k*h} with k >= 2 steps."""

    a: float
    h: float
    k: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.h)):
            raise DomainError("grid endpoints must be finite")
        if self.h <= 0.0:
            raise DomainError(f"step must be positive, got {self.h!r}")
        if not isinstance(self.k, (int, np.integer)) or self.k < 2:
            raise DomainError(f"step count must be an integer >= 2, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))

    @property
    def b(self) -> float:
        return self.a + self.k * self.h

    @property
    def n_points(self) -> int:
        return self.k + 1

    def point(self, j: int) -> float:
        return self.a + j * self.h

    def points(self) -> np.ndarray:
        return self.a + self.h * np.arange(self.k + 1)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Real values attached to a uniform grid.

    The origin may sit off the base grid by any real multiple of the
    step, which is how the shifted domains of the fractional operators
    are represented.
    """

    origin: float
    h: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.origin) and math.isfinite(self.h)):
            raise DomainError("grid-function origin and step must be finite")
        if self.h <= 0.0:
            raise DomainError(f"step must be positive, got {self.h!r}")
        vals = np.array(self.values, dtype=float, copy=True)
        if vals.ndim != 1 or vals.size < 1:
            raise DomainError("values must be a nonempty one-dimensional sequence")
        if not np.all(np.isfinite(vals)):
            raise DomainError("grid-function values must be finite")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def abscissa(self, j: int) -> float:
        return self.origin + j * self.h

    def abscissae(self) -> np.ndarray:
        return self.origin + self.h * np.arange(self.n)

    def with_origin(self, origin: float) -> "GridFunction":
        """The same values reported at shifted abscissae."""
        return GridFunction(origin, self.h, self.values)


def sample(
    f: Callable[[float], float], origin: float, h: float, n: int
) -> GridFunction:
    """Evaluate ``f`` at origin, origin+h, ..., origin+(n-1)h."""
    if n < 1:
        raise DomainError(f"need at least one sample point, got n={n!r}")
    vals = np.empty(n)
    for j in range(n):
        v = float(f(origin + j * h))
        if not math.isfinite(v):
            raise DomainError(f"sample at t={origin + j * h!r} is not finite")
        vals[j] = v
    return GridFunction(origin, h, vals)


@dataclass(frozen=True)
class Overlap:
    """Index ranges on which two grid functions share abscissae."""

    f_start: int
    g_start: int
    count: int

    @property
    def is_empty(self) -> bool:
        return self.count == 0


def align(f: GridFunction, g: GridFunction) -> Overlap:
    """Where the abscissae of ``f`` and ``g`` coincide.

    The overlap is empty unless the two origins differ by an integer
    number of steps (within tolerance).
    """
    if abs(f.h - g.h) > ORIGIN_TOL * max(abs(f.h), abs(g.h)):
        raise StepMismatchError(f"steps differ: {f.h!r} vs {g.h!r}")
    offset = (g.origin - f.origin) / f.h
    d = round(offset)
    if abs(g.origin - (f.origin + d * f.h)) > ORIGIN_TOL * f.h:
        return Overlap(0, 0, 0)
    f_start = max(0, d)
    g_start = max(0, -d)
    count = min(f.n - f_start, g.n - g_start)
    if count <= 0:
        return Overlap(0, 0, 0)
    return Overlap(f_start, g_start, count)


def _fmt(x: float) -> str:
    if x == 0.0:
        return "0"
    return f"{x:.17g}"


def write_csv(f: GridFunction, path) -> None:
    """Write ``t,value`` rows at 17 significant digits with LF endings."""
    with open(path, "w", newline="\n") as fh:
        fh.write("t,value\n")
        for j in range(f.n):
            fh.write(f"{_fmt(f.abscissa(j))},{_fmt(float(f.values[j]))}\n")


def read_csv(path) -> GridFunction:
    """Read a grid function written by :func:`write_csv`.

    The step is inferred from the abscissa column, which must be uniform
    to relative 1e-10; at least two rows are required.
    """
    with open(path, "r") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0].strip() != "t,value":
        raise DomainError("malformed CSV: expected header 't,value'")
    ts: list[float] = []
    vs: list[float] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise DomainError(f"malformed CSV at line {lineno}: {line!r}")
        try:
            t = float(parts[0])
            v = float(parts[1])
        except ValueError as exc:
            raise DomainError(f"malformed CSV at line {lineno}: {line!r}") from exc
        if not (math.isfinite(t) and math.isfinite(v)):
            raise DomainError(f"non-finite entry at line {lineno}")
        ts.append(t)
        vs.append(v)
    if len(ts) < 2:
        raise DomainError("need at least two rows to infer the grid step")
    h = ts[1] - ts[0]
    if h <= 0.0:
        raise DomainError("abscissae must be strictly increasing")
    for j in range(1, len(ts)):
        expected = ts[0] + j * h
        if abs(ts[j] - expected) > 1e-10 * max(1.0, abs(expected)):
            raise DomainError(f"non-uniform step at row {j + 1}")
    return GridFunction(ts[0], h, np.asarray(vs))
