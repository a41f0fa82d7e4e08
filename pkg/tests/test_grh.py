import math

import numpy as np
import pytest

from conftest import UD_EXACT, W_RATE_EXACT, sample_delta_pairs
from suliciu import (
    GrhTrajectory,
    State,
    bracket,
    check_entropy,
    default_times,
    delta_speed_roots,
    flux,
    solve_delta,
    trajectory_from_solution,
    verify_derivatives,
    verify_integrated,
)
from suliciu.errors import SingularAtOrigin


def rejected_root_trajectory(Ul, Ur, p, times):
    """Trajectory of the negative-weight quadratic root, built directly from
    the jump brackets without the solver."""
    bru = bracket(Ul.rho * Ul.u, Ur.rho * Ur.u)
    br = bracket(Ul.rho, Ur.rho)
    brf = bracket(flux(Ul, p)[1], flux(Ur, p)[1])
    brv = bracket(Ul.rho * Ul.v, Ur.rho * Ur.v)
    bq = bracket(flux(Ul, p)[2], flux(Ur, p)[2])
    d4 = bru * bru - br * brf
    root = math.sqrt(d4)
    u_minus = (bru + root) / br
    w_rate = -root
    g_minus = (-brv * u_minus + bq) / w_rate
    t = np.asarray(times, dtype=float)
    return (
        GrhTrajectory(t, u_minus * t, w_rate * t, w_rate * u_minus * t, w_rate * g_minus * t),
        u_minus,
    )


class TestDefaultTimes:
    def test_geometric_capped(self):
        ts = default_times(0.1)
        assert ts[0] == pytest.approx(1e-3)
        assert ts[-1] == 0.1
        assert np.all(np.diff(ts) > 0)
        assert np.all(ts <= 0.1)

    def test_long_horizon_keeps_all_levels(self):
        ts = default_times(10.0)
        assert len(ts) == 12
        assert ts[-2] == pytest.approx(1.024)


class TestTrajectoryFromSolution:
    def test_benchmark_values_at_final_time(self, p, ref_pair):
        sol = solve_delta(*ref_pair, p)
        traj = trajectory_from_solution(sol, [0.05, 0.1])
        assert traj.x[-1] == pytest.approx(UD_EXACT * 0.1, rel=1e-12)
        assert traj.w[-1] == pytest.approx(W_RATE_EXACT * 0.1, rel=1e-12)

    def test_time_zero_gives_zeros(self, p, ref_pair):
        sol = solve_delta(*ref_pair, p)
        traj = trajectory_from_solution(sol, [0.0, 0.1])
        assert traj.x[0] == 0.0
        assert traj.w[0] == 0.0
        assert traj.wu[0] == 0.0
        assert traj.wg[0] == 0.0

    def test_equal_density_example(self, p):
        sol = solve_delta(State(1.0, 2.0, 0.0), State(1.0, -2.0, 0.0), p)
        traj = trajectory_from_solution(sol, [1.0])
        assert (traj.x[0], traj.w[0], traj.wu[0], traj.wg[0]) == pytest.approx(
            (0.0, 4.0, 0.0, 4.0)
        )

    def test_validation_rejects_unordered_times(self, p, ref_pair):
        sol = solve_delta(*ref_pair, p)
        with pytest.raises(ValueError):
            trajectory_from_solution(sol, [0.2, 0.1])


class TestVerifyIntegrated:
    def test_benchmark_closed_form(self, p, ref_pair):
        sol = solve_delta(*ref_pair, p)
        traj = trajectory_from_solution(sol, default_times(0.1))
        assert verify_integrated(traj, *ref_pair, p) <= 1e-10

    def test_detects_perturbed_position(self, p, ref_pair):
        sol = solve_delta(*ref_pair, p)
        traj = trajectory_from_solution(sol, default_times(0.1))
        x = traj.x.copy()
        x[0] += 1e-3  # scaled by [rho] = 8 against a unit scale at t = 1e-3
        bad = GrhTrajectory(traj.times, x, traj.w, traj.wu, traj.wg)
        assert verify_integrated(bad, *ref_pair, p) >= 1e-4

    def test_zero_jump_zero_weight(self, p):
        U = State(1.0, 1.0, 1.0)
        t = np.array([0.1, 0.2, 0.4])
        traj = GrhTrajectory(t, 3.0 * t, 0.0 * t, 0.0 * t, 0.0 * t)
        assert verify_integrated(traj, U, U, p) == 0.0

    def test_roundtrip_for_randomized_pairs(self, p):
        rng = np.random.default_rng(20)
        for Ul, Ur in sample_delta_pairs(rng, 200, p):
            sol = solve_delta(Ul, Ur, p)
            traj = trajectory_from_solution(sol, default_times(1.0))
            assert verify_integrated(traj, Ul, Ur, p) <= 1e-10

    def test_rejected_root_also_satisfies_integrated_relations(self, p, ref_pair):
        traj, _ = rejected_root_trajectory(*ref_pair, p, default_times(1.0))
        assert verify_integrated(traj, *ref_pair, p) <= 1e-10


class TestVerifyDerivatives:
    def test_benchmark_linear_trajectory(self, p, ref_pair):
        sol = solve_delta(*ref_pair, p)
        times = np.linspace(0.01, 0.1, 19)
        traj = trajectory_from_solution(sol, times)
        assert verify_derivatives(traj, *ref_pair, p, h=1e-4) <= 1e-8

    def test_rejected_root_satisfies_rates_but_not_entropy(self, p, ref_pair):
        # the differential jump relations alone do not select the solution
        times = np.linspace(0.01, 0.1, 19)
        traj, u_minus = rejected_root_trajectory(*ref_pair, p, times)
        assert verify_derivatives(traj, *ref_pair, p, h=1e-4) <= 1e-8
        assert not check_entropy(u_minus, *ref_pair, p)[0]

    def test_zero_weight_is_singular(self, p):
        U = State(1.0, 1.0, 1.0)
        t = np.linspace(0.1, 1.0, 10)
        traj = GrhTrajectory(t, 0.0 * t, 0.0 * t, 0.0 * t, 0.0 * t)
        with pytest.raises(SingularAtOrigin):
            verify_derivatives(traj, U, U, p, h=1e-3)

    def test_randomized_pairs(self, p):
        rng = np.random.default_rng(21)
        for Ul, Ur in sample_delta_pairs(rng, 100, p):
            sol = solve_delta(Ul, Ur, p)
            traj = trajectory_from_solution(sol, default_times(1.0))
            assert verify_derivatives(traj, Ul, Ur, p, h=1e-4) <= 1e-8
