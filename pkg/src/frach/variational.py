"""Discrete variational problems driven by the left fractional difference.

The objective sums L(t, y(t+h), v(t)) * h over the base grid, where v is
the aligned left fractional difference of y.  Stationary points satisfy a
first-order condition that pairs the u-derivative of L with a right
fractional difference (based one point early) of the v-derivative, and
joint convexity of L upgrades stationarity to global minimality.

Two problems are solved in closed form: the pure quadratic L = v**2 and
the forced quadratic L = v**2/2 - u.  Both solvers are checked elsewhere
against a brute-force normal-equations minimizer that knows nothing about
the closed forms.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from frach.errors import (
    DomainError,
    NonConvergenceError,
    SingularProblemError,
    SingularSystemError,
)
from frach.fracops import (
    _as_diff_order,
    left_frac_diff_aligned,
    left_frac_sum,
    right_frac_diff_aligned,
)
from frach.grid import GridFunction, HGrid, rho
from frach.specfun import gamma_value, h_factorial

__all__ = [
    "Lagrangian",
    "quadratic_v2",
    "quadratic_minus_u",
    "VariationalProblem",
    "Solution",
    "objective",
    "el_residual",
    "solve_example1",
    "solve_example2",
    "summation_by_parts_residual",
    "ConvexityReport",
    "joint_convexity_check",
    "brute_force_minimizer",
    "global_minimality_margin",
    "gaussian_solve",
]

Evaluator = Callable[[float, float, float], float]


@dataclass(frozen=True)
class Lagrangian:
    """Integrand L(t, u, v) together with its two partial derivatives."""

    L: Evaluator
    L_u: Evaluator
    L_v: Evaluator
    tag: str = "custom"

    def __post_init__(self) -> None:
        if self.tag not in ("quadratic_v2", "quadratic_minus_u", "custom"):
            raise DomainError(f"unknown Lagrangian tag {self.tag!r}")


def quadratic_v2() -> Lagrangian:
    """L = v**2, the pure quadratic in the fractional difference."""
    return Lagrangian(
        L=lambda t, u, v: v * v,
        L_u=lambda t, u, v: 0.0,
        L_v=lambda t, u, v: 2.0 * v,
        tag="quadratic_v2",
    )


def quadratic_minus_u() -> Lagrangian:
    """L = v**2/2 - u, quadratic in v with a unit forcing through u."""
    return Lagrangian(
        L=lambda t, u, v: 0.5 * v * v - u,
        L_u=lambda t, u, v: -1.0,
        L_v=lambda t, u, v: v,
        tag="quadratic_minus_u",
    )


@dataclass(frozen=True)
class VariationalProblem:
    """Boundary-value problem: minimize the summed Lagrangian subject to
    y(a) = A and y(b) = B on the given grid."""

    grid: HGrid
    alpha: float
    A: float
    B: float
    lagrangian: Lagrangian

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", _as_diff_order(self.alpha))
        if not (math.isfinite(self.A) and math.isfinite(self.B)):
            raise DomainError("boundary values must be finite")


@dataclass(frozen=True)
class Solution:
    """Minimizer with its determined constant and diagnostic norms."""

    y: GridFunction
    constant: float
    objective_value: float
    el_residual_norm: float


def _check_on_grid(grid: HGrid, y: GridFunction) -> None:
    if y.n != grid.n_points:
        raise DomainError(
            f"expected {grid.n_points} values on the grid, got {y.n}"
        )
    if abs(y.h - grid.h) > 1e-12 * grid.h or abs(y.origin - grid.a) > 1e-12 * grid.h:
        raise DomainError("grid function does not live on the problem grid")


def _trajectory(problem: VariationalProblem, y: GridFunction):
    # t, u = y(t+h) and v = aligned fractional difference, on {a, ..., b-h}.
    grid = problem.grid
    v = left_frac_diff_aligned(y, problem.alpha).values
    u = y.values[1:]
    ts = grid.a + grid.h * np.arange(grid.k)
    return ts, u, v


def objective(problem: VariationalProblem, y: GridFunction) -> float:
    """Value of the summed Lagrangian along ``y``."""
    _check_on_grid(problem.grid, y)
    ts, u, v = _trajectory(problem, y)
    lag = problem.lagrangian
    total = 0.0
    for j in range(problem.grid.k):
        total += lag.L(float(ts[j]), float(u[j]), float(v[j])) * problem.grid.h
    return total


def el_residual(problem: VariationalProblem, y: GridFunction) -> GridFunction:
    """Pointwise defect of the first-order optimality condition.

    Returns L_u along ``y`` plus the aligned right fractional difference,
    based one grid point early, of L_v along ``y``; zero at stationary
    points.
    """
    _check_on_grid(problem.grid, y)
    grid = problem.grid
    ts, u, v = _trajectory(problem, y)
    lag = problem.lagrangian
    lu = np.array(
        [lag.L_u(float(ts[j]), float(u[j]), float(v[j])) for j in range(grid.k)]
    )
    lv = np.array(
        [lag.L_v(float(ts[j]), float(u[j]), float(v[j])) for j in range(grid.k)]
    )
    transposed = right_frac_diff_aligned(
        GridFunction(grid.a, grid.h, lv), problem.alpha
    )
    return GridFunction(grid.a, grid.h, lu[:-1] + transposed.values)


def _residual_norm(problem: VariationalProblem, y: GridFunction) -> float:
    return float(np.max(np.abs(el_residual(problem, y).values)))


def _solution_bases(grid: HGrid, alpha: float):
    # Basis pair of the explicit solutions on {a+h, ..., b}: phi comes from
    # fractionally summing the annihilated kernel of the transposed
    # operator, psi from the kernel of the forward operator itself.
    gamma_shift = 1.0 - alpha
    base = grid.a + gamma_shift * grid.h
    end = rho(grid.b, grid.h)
    kernel = np.array(
        [
            h_factorial(end - (base + j * grid.h), alpha - 1.0, grid.h)
            for j in range(grid.k)
        ]
    )
    inv_gamma = 1.0 / gamma_value(alpha)
    summed = left_frac_sum(GridFunction(base, grid.h, kernel), alpha)
    phi = summed.values * inv_gamma
    psi = np.array(
        [
            h_factorial(grid.a + j * grid.h - base, alpha - 1.0, grid.h)
            for j in range(1, grid.k + 1)
        ]
    ) * inv_gamma
    return phi, psi, kernel, base


def _determine_constant(target: float, basis_end: float, scale: float) -> float:
    if abs(basis_end) <= 1e-12 * max(1.0, scale):
        raise SingularProblemError(
            "end condition cannot determine the constant: basis vanishes at b"
        )
    return target / basis_end


def solve_example1(grid: HGrid, alpha, A: float, B: float) -> Solution:
    """Exact minimizer of the pure quadratic problem L = v**2.

    At alpha = 1 this is the straight line from (a, A) to (b, B).
    """
    alpha = _as_diff_order(alpha)
    problem = VariationalProblem(grid, alpha, A, B, quadratic_v2())
    phi, psi, _, _ = _solution_bases(grid, alpha)
    # The first-value term carries the step to the power 1 - alpha: the
    # order-(1-alpha) sum of y starts at exactly h**(1-alpha) * y(a).
    h_pow = grid.h ** (1.0 - alpha)
    c = _determine_constant(
        B - A * h_pow * psi[-1], phi[-1], float(np.max(np.abs(phi)))
    )
    vals = np.empty(grid.n_points)
    vals[0] = A
    vals[1:] = c * phi + A * h_pow * psi
    y = GridFunction(grid.a, grid.h, vals)
    return Solution(y, c, objective(problem, y), _residual_norm(problem, y))


def _solve_example2_candidate(
    grid: HGrid, alpha: float, A: float, B: float, coefficient_offset: float
) -> Solution:
    problem = VariationalProblem(grid, alpha, A, B, quadratic_minus_u())
    phi, psi, kernel, base = _solution_bases(grid, alpha)
    # Forcing coefficient of the particular part, written against the
    # operator's own shifted abscissae s: b - rho(b)*alpha - alpha**2*h - s.
    # Offsetting it by (1-alpha)*h, the aligned-notation reading, only
    # shifts the reported constant, never the minimizer: the offset adds a
    # kernel multiple that the end condition reabsorbs into d (pinned by
    # the paired candidate test).
    end = rho(grid.b, grid.h)
    top = grid.b - end * alpha - alpha * alpha * grid.h + coefficient_offset
    inv_gamma1 = 1.0 / gamma_value(alpha + 1.0)
    particular = np.array(
        [
            (top - (base + j * grid.h)) * inv_gamma1 * kernel[j]
            for j in range(grid.k)
        ]
    )
    chi = left_frac_sum(GridFunction(base, grid.h, particular), alpha).values
    h_pow = grid.h ** (1.0 - alpha)
    d = _determine_constant(
        B - chi[-1] - A * h_pow * psi[-1], phi[-1], float(np.max(np.abs(phi)))
    )
    vals = np.empty(grid.n_points)
    vals[0] = A
    vals[1:] = chi + d * phi + A * h_pow * psi
    y = GridFunction(grid.a, grid.h, vals)
    return Solution(y, d, objective(problem, y), _residual_norm(problem, y))


def solve_example2(grid: HGrid, alpha, A: float, B: float) -> Solution:
    """Exact minimizer of the forced quadratic problem L = v**2/2 - u."""
    return _solve_example2_candidate(grid, _as_diff_order(alpha), A, B, 0.0)


def summation_by_parts_residual(f: GridFunction, g: GridFunction, alpha) -> float:
    """Defect of the identity trading a left fractional difference on ``g``
    for a right one on ``f`` plus boundary and memory-correction terms.

    ``f`` lives on {a, ..., b-h} and ``g`` on {a, ..., b}.
    """
    alpha = _as_diff_order(alpha)
    if abs(f.h - g.h) > 1e-12 * g.h or abs(f.origin - g.origin) > 1e-12 * g.h:
        raise DomainError("f and g must share origin and step")
    if f.n != g.n - 1 or f.n < 2:
        raise DomainError("f must be exactly one point shorter than g")
    h = g.h
    k = f.n
    gamma_ord = 1.0 - alpha
    fv = f.values
    gv = g.values
    lhs = 0.0
    left_g = left_frac_diff_aligned(g, alpha).values
    for j in range(k):
        lhs += float(fv[j]) * float(left_g[j]) * h
    h_pow = h**gamma_ord
    boundary = h_pow * float(fv[k - 1]) * float(gv[k]) - h_pow * float(fv[0]) * float(
        gv[0]
    )
    transposed = right_frac_diff_aligned(f, alpha).values
    middle = 0.0
    for j in range(k - 1):
        middle += float(transposed[j]) * float(gv[j + 1]) * h
    first = 0.0
    for j in range(k):
        first += h_factorial((j + gamma_ord) * h, gamma_ord - 1.0, h) * float(fv[j]) * h
    second = 0.0
    for j in range(1, k):
        second += (
            h_factorial((j - 1 + gamma_ord) * h, gamma_ord - 1.0, h) * float(fv[j]) * h
        )
    correction = (
        gamma_ord * float(gv[0]) / gamma_value(gamma_ord + 1.0) * (first - second)
    )
    return abs(lhs - (boundary + middle + correction))


@dataclass(frozen=True)
class ConvexityReport:
    passed: bool
    worst_violation: float


def joint_convexity_check(
    lagrangian: Lagrangian,
    trials: int,
    seed: int,
    grid: HGrid | None = None,
) -> ConvexityReport:
    """Sampled first-order convexity test of L in (u, v).

    Draws (u, v, u', v') uniformly from [-10, 10]**4 at abscissae of the
    given grid (a default unit grid when omitted) and reports the largest
    violation of the supporting-plane inequality.
    """
    if trials < 1:
        raise DomainError("need at least one trial")
    if grid is None:
        grid = HGrid(0.0, 1.0, 10)
    rng = np.random.default_rng(seed)
    worst = -math.inf
    passed = True
    for _ in range(trials):
        t = grid.point(int(rng.integers(0, grid.k + 1)))
        u, v, u2, v2 = rng.uniform(-10.0, 10.0, size=4)
        lhs = lagrangian.L(t, u, v) - lagrangian.L(t, u2, v2)
        rhs = (u - u2) * lagrangian.L_u(t, u2, v2) + (v - v2) * lagrangian.L_v(
            t, u2, v2
        )
        violation = rhs - lhs
        worst = max(worst, violation)
        scale = max(1.0, abs(lagrangian.L(t, u, v)), abs(lagrangian.L(t, u2, v2)))
        if violation > 1e-9 * scale:
            passed = False
    return ConvexityReport(passed, worst)


def gaussian_solve(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve a dense linear system by elimination with partial pivoting."""
    a = np.array(matrix, dtype=float, copy=True)
    b = np.array(rhs, dtype=float, copy=True)
    n = a.shape[0]
    if a.shape != (n, n) or b.shape != (n,):
        raise DomainError("need a square matrix and a matching right-hand side")
    scale = float(np.max(np.abs(a))) if n else 0.0
    for col in range(n):
        pivot_row = col + int(np.argmax(np.abs(a[col:, col])))
        pivot = a[pivot_row, col]
        if abs(pivot) <= 1e-12 * max(1.0, scale):
            raise SingularSystemError(f"pivot too small in column {col}")
        if pivot_row != col:
            a[[col, pivot_row]] = a[[pivot_row, col]]
            b[[col, pivot_row]] = b[[pivot_row, col]]
        for row in range(col + 1, n):
            factor = a[row, col] / a[col, col]
            if factor != 0.0:
                a[row, col:] -= factor * a[col, col:]
                b[row] -= factor * b[col]
    x = np.zeros(n)
    for row in range(n - 1, -1, -1):
        x[row] = (b[row] - float(a[row, row + 1 :] @ x[row + 1 :])) / a[row, row]
    return x


def _interior_objective(problem: VariationalProblem):
    grid = problem.grid

    def evaluate(interior: np.ndarray) -> float:
        vals = np.empty(grid.n_points)
        vals[0] = problem.A
        vals[1:-1] = interior
        vals[-1] = problem.B
        return objective(problem, GridFunction(grid.a, grid.h, vals))

    return evaluate


def _gradient(evaluate, interior: np.ndarray) -> np.ndarray:
    m = interior.size
    grad = np.empty(m)
    for i in range(m):
        step = 1e-6 * max(1.0, abs(interior[i]))
        bumped = interior.copy()
        bumped[i] = interior[i] + step
        up = evaluate(bumped)
        bumped[i] = interior[i] - step
        down = evaluate(bumped)
        grad[i] = (up - down) / (2.0 * step)
    return grad


def brute_force_minimizer(problem: VariationalProblem) -> GridFunction:
    """Minimize the objective directly over the interior values.

    For the quadratic Lagrangian tags the (linear) finite-difference
    gradient map is probed with basis vectors and the resulting normal
    equations are solved by elimination; the custom tag falls back to
    gradient descent with backtracking.
    """
    grid = problem.grid
    m = grid.k - 1
    evaluate = _interior_objective(problem)
    if problem.lagrangian.tag in ("quadratic_v2", "quadratic_minus_u"):
        origin = np.zeros(m)
        g0 = _gradient(evaluate, origin)
        system = np.empty((m, m))
        for i in range(m):
            basis = np.zeros(m)
            basis[i] = 1.0
            system[:, i] = _gradient(evaluate, basis) - g0
        interior = gaussian_solve(system, -g0)
    else:
        interior = _descend(evaluate, np.zeros(m))
    vals = np.empty(grid.n_points)
    vals[0] = problem.A
    vals[1:-1] = interior
    vals[-1] = problem.B
    return GridFunction(grid.a, grid.h, vals)


def _descend(
    evaluate, x: np.ndarray, tol: float = 1e-10, max_iters: int = 10**6
) -> np.ndarray:
    current = evaluate(x)
    step = 1.0
    for _ in range(max_iters):
        grad = _gradient(evaluate, x)
        gnorm = float(np.max(np.abs(grad))) if grad.size else 0.0
        if gnorm < tol:
            return x
        gsq = float(grad @ grad)
        # a decrease smaller than the double-precision resolution of the
        # objective is indistinguishable from rounding noise
        floor = 64.0 * 2.220446049250313e-16 * (1.0 + abs(current))
        step = min(1.0, step * 4.0)
        while step > 1e-18:
            candidate = x - step * grad
            value = evaluate(candidate)
            if value <= current - max(0.5 * step * gsq, floor):
                x = candidate
                current = value
                break
            step *= 0.5
        else:
            # the objective no longer decreases measurably; the
            # finite-difference gradient cannot resolve below its noise
            # level, so a small gradient here means stationarity
            if gnorm < 1e-6:
                return x
            raise NonConvergenceError("line search stalled away from optimum")
    raise NonConvergenceError("iteration budget exhausted")


def global_minimality_margin(
    problem: VariationalProblem, y: GridFunction, trials: int, seed: int
) -> float:
    """Smallest objective change over random admissible perturbations.

    Perturbations vanish at both ends and are bounded by one in the sup
    norm; a value at or above a small negative rounding allowance
    certifies the candidate as a global minimum in practice.
    """
    if trials < 1:
        raise DomainError("need at least one trial")
    rng = np.random.default_rng(seed)
    base = objective(problem, y)
    grid = problem.grid
    margin = math.inf
    for _ in range(trials):
        z = np.zeros(grid.n_points)
        z[1:-1] = rng.uniform(-1.0, 1.0, size=grid.k - 1)
        perturbed = GridFunction(grid.a, grid.h, y.values + z)
        margin = min(margin, objective(problem, perturbed) - base)
    return margin
