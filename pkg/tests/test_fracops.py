"""Operator tests: plain differences and sums, fractional sums and
differences, shifted domains, and the composition identities."""

import numpy as np
import pytest

from conftest import random_gridfunction, rel_scale
from frach.closedform import (
    left_kernel_solution,
    power_rule_left,
    right_constant_solution,
    right_kernel_solution,
)
from frach.errors import DomainError, TooShortError
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
from frach.grid import GridFunction, HGrid
from frach.specfun import gamma_value, h_factorial

DIFF_ORDERS = (0.1, 0.3, 0.5, 0.7, 0.9, 1.0)


class TestFracOrder:
    def test_sum_order_validation(self):
        assert FracOrder(0.0).value == 0.0
        with pytest.raises(DomainError):
            FracOrder(-0.1)

    def test_diff_order_validation(self):
        order = FracOrder(0.3, is_difference=True)
        assert order.gamma == 0.7
        with pytest.raises(DomainError):
            FracOrder(0.0, is_difference=True)
        with pytest.raises(DomainError):
            FracOrder(1.5, is_difference=True)
        with pytest.raises(DomainError):
            FracOrder(0.5).gamma

    def test_orders_are_not_interchangeable(self):
        f = GridFunction(0.0, 1.0, np.ones(4))
        with pytest.raises(DomainError):
            left_frac_sum(f, FracOrder(0.5, is_difference=True))
        with pytest.raises(DomainError):
            left_frac_diff(f, FracOrder(0.5))


class TestForwardDiff:
    def test_constant_gives_zeros(self):
        f = GridFunction(0.0, 0.5, np.full(5, 3.25))
        d = forward_diff(f)
        assert d.n == 4
        assert d.origin == f.origin
        assert np.array_equal(d.values, np.zeros(4))

    def test_identity_slope(self):
        f = GridFunction(0.0, 1.0, np.array([0.0, 1.0, 2.0]))
        assert np.array_equal(forward_diff(f).values, [1.0, 1.0])

    def test_recovers_summand(self, rng):
        g = random_gridfunction(rng, 0.25, 0.5, 9)
        rec = forward_diff(h_sum(g))
        assert np.max(np.abs(rec.values - g.values)) <= 1e-12 * rel_scale(g.values)

    def test_too_short(self):
        with pytest.raises(TooShortError):
            forward_diff(GridFunction(0.0, 1.0, np.array([1.0])))


class TestHSum:
    def test_empty_sum_at_start(self, rng):
        f = random_gridfunction(rng, -2.0, 0.5, 6)
        assert h_sum(f).values[0] == 0.0

    def test_counting(self):
        f = GridFunction(0.0, 1.0, np.ones(3))
        s = h_sum(f)
        assert s.n == 4
        assert np.array_equal(s.values, [0.0, 1.0, 2.0, 3.0])
        assert np.allclose(s.abscissae(), [0.0, 1.0, 2.0, 3.0])


class TestFracSums:
    def test_order_zero_is_identity(self, rng):
        f = random_gridfunction(rng, 1.0, 0.5, 5)
        assert left_frac_sum(f, 0.0) is f
        assert right_frac_sum(f, 0.0) is f

    def test_order_one_matches_running_sum(self):
        f = GridFunction(0.0, 1.0, np.array([1.0, 1.0, 1.0]))
        s = left_frac_sum(f, 1.0)
        assert s.origin == 1.0
        hs = h_sum(f)
        assert np.array_equal(s.values, hs.values[1:])
        assert s.values[0] == f.values[0] * f.h

    def test_constant_against_power_rule(self):
        # summing the constant one is the mu = 0 power rule
        grid = HGrid(0.0, 1.0, 4)
        nu = 0.5
        f = GridFunction(grid.a, grid.h, np.ones(grid.n_points))
        s = left_frac_sum(f, nu)
        for i in range(s.n):
            t = s.abscissa(i)
            expect = power_rule_left(0.0, nu, grid, t)
            assert abs(s.values[i] - expect) <= 1e-10 * max(1.0, abs(expect))

    def test_domains_shift_and_preserve_count(self, rng):
        f = random_gridfunction(rng, 2.0, 0.25, 7)
        for nu in (0.5, 1.0, 2.5):
            left = left_frac_sum(f, nu)
            right = right_frac_sum(f, nu)
            assert left.n == f.n == right.n
            assert left.origin == pytest.approx(f.origin + nu * f.h, abs=1e-12)
            assert right.origin == pytest.approx(f.origin - nu * f.h, abs=1e-12)

    def test_reversal_symmetry(self, rng):
        f = random_gridfunction(rng, 0.0, 0.5, 6)
        nu = 0.7
        r = right_frac_sum(f, nu)
        l = left_frac_sum(GridFunction(f.origin, f.h, f.values[::-1]), nu)
        assert np.max(np.abs(r.values - l.values[::-1])) <= 1e-12 * rel_scale(r.values)

    def test_rescaling_to_unit_step(self, rng):
        # order-nu sum on step h equals h**nu times the unit-step sum of
        # the stretched samples
        for nu in (0.25, 0.5, 1.5):
            for h in (0.25, 1.0, 3.0):
                vals = rng.uniform(-2.0, 2.0, 8)
                on_h = left_frac_sum(GridFunction(1.0, h, vals), nu)
                on_unit = left_frac_sum(GridFunction(1.0 / h, 1.0, vals), nu)
                resid = np.max(np.abs(on_h.values - h**nu * on_unit.values))
                assert resid <= 1e-11 * rel_scale(on_h.values)

    def test_linearity(self, rng):
        f = random_gridfunction(rng, 0.0, 0.5, 8)
        g = random_gridfunction(rng, 0.0, 0.5, 8)
        combo = GridFunction(0.0, 0.5, 2.5 * f.values - 1.25 * g.values)
        for op, order in [
            (left_frac_sum, 0.7),
            (right_frac_sum, 1.3),
            (left_frac_diff, 0.4),
            (right_frac_diff, 0.4),
            (left_frac_diff_aligned, 1.0),
            (right_frac_diff_aligned, 0.8),
        ]:
            direct = op(combo, order).values
            split = 2.5 * op(f, order).values - 1.25 * op(g, order).values
            assert np.max(np.abs(direct - split)) <= 1e-12 * rel_scale(direct, split)


class TestFracDiffs:
    def test_alpha_one_is_forward_diff(self, rng):
        f = random_gridfunction(rng, 0.0, 0.5, 7)
        d = left_frac_diff(f, 1.0)
        expect = forward_diff(f)
        assert d.origin == expect.origin
        assert np.array_equal(d.values, expect.values)
        neg = right_frac_diff(f, 1.0)
        assert np.array_equal(neg.values, -expect.values)

    def test_counts_drop_by_one(self, rng):
        f = random_gridfunction(rng, 1.0, 0.25, 9)
        for alpha in DIFF_ORDERS:
            assert left_frac_diff(f, alpha).n == f.n - 1
            assert right_frac_diff(f, alpha).n == f.n - 1

    def test_left_kernel_is_annihilated(self):
        for alpha in DIFF_ORDERS:
            for k in range(2, 33):
                grid = HGrid(0.0, 0.5, k)
                f = left_kernel_solution(grid, alpha, 1.0)
                out = left_frac_diff(f, alpha)
                assert np.max(np.abs(out.values)) <= 1e-10 * rel_scale(f.values)

    def test_right_kernel_is_annihilated(self):
        for alpha in DIFF_ORDERS:
            for k in range(2, 33):
                grid = HGrid(-1.0, 0.5, k)
                f = right_kernel_solution(grid, alpha, 1.0)
                out = right_frac_diff(f, alpha)
                assert np.max(np.abs(out.values)) <= 1e-10 * rel_scale(f.values)

    def test_right_constant_solution_gives_constant(self):
        grid = HGrid(0.0, 1.0, 6)
        alpha = 0.5
        f = right_constant_solution(grid, alpha, 1.0, 0.0)
        out = right_frac_diff(f, alpha)
        assert np.max(np.abs(out.values - 1.0)) <= 1e-9

    def test_constant_input_left_diff_matches_power_rule_chain(self):
        # differencing the constant one: forward difference of the mu = 0
        # power rule of order gamma
        grid = HGrid(0.0, 1.0, 4)
        alpha = 0.5
        gamma = 1.0 - alpha
        f = GridFunction(grid.a, grid.h, np.ones(grid.n_points))
        d = left_frac_diff(f, alpha)
        for i in range(d.n):
            t = d.abscissa(i)
            lo = power_rule_left(0.0, gamma, grid, t)
            hi = power_rule_left(0.0, gamma, grid, t + grid.h)
            expect = (hi - lo) / grid.h
            assert abs(d.values[i] - expect) <= 1e-10 * max(1.0, abs(expect))

    def test_domains(self, rng):
        f = random_gridfunction(rng, 0.0, 0.5, 5)
        alpha = 0.3
        gamma = 1.0 - alpha
        d = left_frac_diff(f, alpha)
        assert d.origin == pytest.approx(f.origin + gamma * f.h, abs=1e-12)
        r = right_frac_diff(f, alpha)
        assert r.origin == pytest.approx(f.origin - gamma * f.h, abs=1e-12)

    def test_too_short(self):
        with pytest.raises(TooShortError):
            left_frac_diff(GridFunction(0.0, 1.0, np.array([1.0])), 0.5)
        with pytest.raises(TooShortError):
            right_frac_diff(GridFunction(0.0, 1.0, np.array([1.0])), 0.5)


class TestAligned:
    def test_pure_relabeling(self, rng):
        f = random_gridfunction(rng, 1.0, 0.5, 6)
        for alpha in DIFF_ORDERS:
            la = left_frac_diff_aligned(f, alpha)
            ra = right_frac_diff_aligned(f, alpha)
            assert np.array_equal(la.values, left_frac_diff(f, alpha).values)
            assert np.array_equal(ra.values, right_frac_diff(f, alpha).values)
            assert la.origin == f.origin
            assert ra.origin == f.origin
            assert la.abscissa(la.n - 1) == pytest.approx(
                f.abscissa(f.n - 2), abs=1e-12
            )

    def test_alpha_one_identical(self, rng):
        f = random_gridfunction(rng, 0.0, 1.0, 5)
        plain = left_frac_diff(f, 1.0)
        aligned = left_frac_diff_aligned(f, 1.0)
        assert plain.origin == aligned.origin
        assert np.array_equal(plain.values, aligned.values)


class TestTransferIdentity:
    def test_order_zero_is_exact(self, rng):
        f = random_gridfunction(rng, 0.0, 0.5, 6)
        assert sum_of_difference_residual(f, 0.0) == 0.0

    def test_constant_function(self):
        f = GridFunction(0.0, 1.0, np.full(6, 4.0))
        assert sum_of_difference_residual(f, 0.8) <= 1e-12 * 4.0

    def test_random_orders(self, rng):
        for nu in (0.3, 0.7, 1.0, 2.0):
            f = random_gridfunction(rng, -1.0, 0.5, 9)
            scale = rel_scale(f.values / f.h)
            assert sum_of_difference_residual(f, nu) <= 1e-10 * scale

    def test_too_short(self):
        with pytest.raises(TooShortError):
            sum_of_difference_residual(GridFunction(0.0, 1.0, np.ones(2)), 0.5)


class TestExponentLaw:
    def test_both_orders_zero_exact(self, rng):
        f = random_gridfunction(rng, 0.0, 1.0, 5)
        assert exponent_law_residual(f, 0.0, 0.0, "left") == 0.0
        assert exponent_law_residual(f, 0.0, 0.0, "right") == 0.0

    def test_outer_zero_is_identity(self, rng):
        f = random_gridfunction(rng, 0.0, 1.0, 5)
        for side in ("left", "right"):
            assert exponent_law_residual(f, 0.0, 0.9, side) <= 1e-12

    def test_random_orders(self, rng):
        f = random_gridfunction(rng, 2.0, 0.25, 10)
        for side in ("left", "right"):
            single = (
                left_frac_sum(f, 1.5) if side == "left" else right_frac_sum(f, 1.5)
            )
            scale = rel_scale(single.values)
            assert exponent_law_residual(f, 0.3, 1.2, side) <= 1e-10 * scale

    def test_bad_side(self, rng):
        f = random_gridfunction(rng, 0.0, 1.0, 4)
        with pytest.raises(DomainError):
            exponent_law_residual(f, 0.5, 0.5, "up")


class TestIdentitySweep:
    def test_identities_across_grid_sizes(self, rng):
        # the composition identities hold on every grid size up to 32
        for k in range(2, 33):
            f = random_gridfunction(rng, 0.0, 0.5, k + 1)
            scale = rel_scale(f.values / f.h)
            assert sum_of_difference_residual(f, 0.7) <= 1e-10 * scale
            for side in ("left", "right"):
                one = left_frac_sum if side == "left" else right_frac_sum
                single_scale = rel_scale(one(f, 0.75).values)
                resid = exponent_law_residual(f, 0.25, 0.5, side)
                assert resid <= 1e-10 * single_scale

    def test_alpha_sweep_diff_of_sum_inverts(self, rng):
        # differencing the order-(1) sum of the gamma-complement order
        # reproduces the one-step difference chain at every listed order
        for alpha in DIFF_ORDERS:
            for k in (2, 9, 17, 32):
                f = random_gridfunction(rng, -1.0, 0.25, k + 1)
                via_ops = left_frac_diff(f, alpha)
                manual = forward_diff(left_frac_sum(f, 1.0 - alpha))
                assert np.array_equal(via_ops.values, manual.values)


class TestKernelWeightTable:
    def test_table_matches_direct_per_pair_evaluation(self, rng):
        # the cached weight table must be bit-identical to evaluating the
        # factorial-power weight for every (output, input) index pair
        for nu in (0.25, 0.7, 1.0, 1.8):
            for h in (0.25, 1.0, 2.0):
                f = random_gridfunction(rng, 0.5, h, 9)
                got = left_frac_sum(f, nu)
                g = gamma_value(nu)
                for i in range(f.n):
                    acc = 0.0
                    for j in range(i + 1):
                        w = h_factorial((nu - 1.0 + (i - j)) * h, nu - 1.0, h)
                        acc += w * float(f.values[j])
                    assert got.values[i] == acc * h / g
