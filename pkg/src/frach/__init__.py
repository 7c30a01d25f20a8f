"""Fractional calculus on uniform step grids.

Factorial powers with overflow-safe gamma arithmetic, left and right
fractional sums and differences on shifted grids, their closed forms, and
exact solvers for two discrete variational problems, each cross-checked
against a brute-force minimizer.
"""

from frach._core import backend_name
from frach.closedform import (
    left_kernel_solution,
    power_rule_left,
    power_rule_right,
    right_constant_solution,
    right_kernel_solution,
)
from frach.errors import (
    DomainError,
    FrachError,
    IndeterminateError,
    NonConvergenceError,
    PoleError,
    SingularProblemError,
    SingularSystemError,
    StepMismatchError,
    TooShortError,
)
from frach.fracops import (
    FracOrder,
    exponent_law_residual,
    forward_diff,
    h_sum,
    left_frac_diff,
    left_frac_diff_aligned,
    left_frac_sum,
    right_frac_diff,
    right_frac_diff_aligned,
    right_frac_sum,
    sum_of_difference_residual,
)
from frach.grid import (
    GridFunction,
    HGrid,
    Overlap,
    align,
    read_csv,
    rho,
    sample,
    sigma,
    write_csv,
)
from frach.specfun import (
    SignedLogValue,
    h_factorial,
    h_factorial_limit_error,
    log_gamma_signed,
)
from frach.variational import (
    ConvexityReport,
    Lagrangian,
    Solution,
    VariationalProblem,
    brute_force_minimizer,
    el_residual,
    gaussian_solve,
    global_minimality_margin,
    joint_convexity_check,
    objective,
    quadratic_minus_u,
    quadratic_v2,
    solve_example1,
    solve_example2,
    summation_by_parts_residual,
)

__version__ = "0.1.0"
