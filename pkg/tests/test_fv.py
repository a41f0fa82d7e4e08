import numpy as np
import pytest

from suliciu import Field, Grid, Params, SimConfig, State, cfl_dt, init_riemann, lxf_step, run
from suliciu.errors import DomainExcludesOrigin, VacuumProduced
from suliciu.fv import max_wave_speed, step_boundary_flux


@pytest.fixture
def ref_config():
    return SimConfig(grid=Grid(-1.0, 1.0, 1780), cfl=0.1969889, t_final=0.1, s=1.0)


class TestGrid:
    def test_spacing_and_centers(self):
        g = Grid(-1.0, 1.0, 4)
        assert g.dx == 0.5
        assert g.centers() == pytest.approx([-0.75, -0.25, 0.25, 0.75])

    def test_rejects_empty_domain(self):
        with pytest.raises(ValueError):
            Grid(1.0, 1.0, 10)


class TestInitRiemann:
    def test_benchmark_split(self, ref_pair):
        g = Grid(-1.0, 1.0, 1780)
        f = init_riemann(g, *ref_pair)
        left = g.centers() < 0
        assert int(left.sum()) == 890
        assert int((~left).sum()) == 890
        assert np.all(f.U[0][left] == 9.0)
        assert np.all(f.U[0][~left] == 1.0)
        assert f.time == 0.0

    def test_equal_states_give_constant_field(self):
        U = State(2.0, 1.0, -1.0)
        f = init_riemann(Grid(-1.0, 1.0, 10), U, U)
        assert np.all(f.U[0] == 2.0)
        assert np.all(f.U[1] == 2.0)
        assert np.all(f.U[2] == -2.0)

    def test_domain_must_contain_origin(self, ref_pair):
        with pytest.raises(DomainExcludesOrigin):
            init_riemann(Grid(0.5, 1.0, 10), *ref_pair)


class TestCflDt:
    def test_benchmark_initial_step(self, p, ref_pair):
        g = Grid(-1.0, 1.0, 1780)
        f = init_riemann(g, *ref_pair)
        # largest speed over both plateaus is 46/9 from the left state
        assert max_wave_speed(f, p) == pytest.approx(46.0 / 9.0, rel=1e-14)
        assert cfl_dt(f, g.dx, 0.1969889, p) == pytest.approx(
            0.1969889 * (2.0 / 1780.0) / (46.0 / 9.0), rel=1e-14
        )

    def test_constant_field(self, p):
        f = init_riemann(Grid(-0.5, 0.5, 10), State(1.0, 0.0, 0.0), State(1.0, 0.0, 0.0))
        assert cfl_dt(f, 0.1, 0.5, p) == pytest.approx(0.05)

    def test_doubling_cfl_doubles_dt(self, p, ref_pair):
        g = Grid(-1.0, 1.0, 100)
        f = init_riemann(g, *ref_pair)
        assert cfl_dt(f, g.dx, 0.4, p) == pytest.approx(2.0 * cfl_dt(f, g.dx, 0.2, p))


class TestLxfStep:
    def test_constant_field_unchanged(self, p):
        U = State(2.0, 1.5, -0.5)
        f = init_riemann(Grid(-1.0, 1.0, 16), U, U)
        g = lxf_step(f, 0.125, 0.01, p)
        assert np.array_equal(g.U, f.U)
        assert g.time == pytest.approx(0.01)

    def test_one_step_toy_grid_by_hand(self, p, ref_pair):
        # 6 cells on [-0.3, 0.3]: only the two cells adjacent to the interface
        # change, and their values match the scheme formula evaluated by hand
        Ul, Ur = ref_pair
        g = Grid(-0.3, 0.3, 6)
        f = init_riemann(g, Ul, Ur)
        dx, dt = g.dx, 0.001
        out = lxf_step(f, dx, dt, p)

        cl = np.array([9.0, 45.0, 25.2])        # conserved left state
        cr = np.array([1.0, 3.0, 2.0])          # conserved right state
        fl = np.array([45.0, 227.8, 131.0])     # flux left
        fr = np.array([3.0, 11.0, 9.0])         # flux right
        r = dt / (2.0 * dx)
        expect_2 = 0.5 * (cl + cr) - r * (fr - fl)
        expect_3 = 0.5 * (cl + cr) - r * (fr - fl)
        for j in (0, 1):
            assert out.U[:, j] == pytest.approx(cl, rel=1e-15)
        for j in (4, 5):
            assert out.U[:, j] == pytest.approx(cr, rel=1e-15)
        assert out.U[:, 2] == pytest.approx(expect_2, rel=1e-14)
        assert out.U[:, 3] == pytest.approx(expect_3, rel=1e-14)

    def test_per_step_conservation_identity(self, p, ref_pair):
        g = Grid(-1.0, 1.0, 200)
        f = init_riemann(g, *ref_pair)
        for _ in range(25):
            dt = cfl_dt(f, g.dx, 0.4, p)
            before = f.totals(g.dx)
            inflow = step_boundary_flux(f, p)
            f = lxf_step(f, g.dx, dt, p)
            after = f.totals(g.dx)
            scale = np.maximum(1.0, np.abs(before))
            assert np.all(np.abs(after - before - dt * inflow) <= 1e-12 * scale)

    def test_vacuum_from_oversized_step(self, p):
        # strong two-sided expansion plus a deliberately unstable dt
        f = init_riemann(Grid(-0.5, 0.5, 10), State(1.0, -5.0, 0.0), State(1.0, 5.0, 0.0))
        with pytest.raises(VacuumProduced):
            lxf_step(f, 0.1, 0.03, p)


class TestRun:
    def test_benchmark_run_shows_spike(self, ref_config, ref_pair):
        result = run(ref_config, *ref_pair)
        t, f = result.snapshots[-1]
        assert t == 0.1
        rho = f.U[0]
        assert float(np.max(rho)) > 9.5
        x_peak = ref_config.grid.centers()[int(np.argmax(rho))]
        assert abs(x_peak - 0.457) < 0.05
        assert float(np.min(rho)) >= Params().eps_rho

    def test_zero_final_time_returns_initial_field(self, ref_pair):
        config = SimConfig(grid=Grid(-1.0, 1.0, 50), cfl=0.5, t_final=0.0)
        result = run(config, *ref_pair)
        assert len(result.snapshots) == 1
        t, f = result.snapshots[0]
        assert t == 0.0
        assert result.steps == 0

    def test_constant_data_stays_constant(self):
        U = State(1.5, 0.7, -0.3)
        config = SimConfig(
            grid=Grid(-1.0, 1.0, 40), cfl=0.5, t_final=0.2, snapshot_times=(0.1,)
        )
        result = run(config, U, U)
        assert [t for t, _ in result.snapshots] == [0.1, 0.2]
        for _, f in result.snapshots:
            assert np.all(f.U[0] == 1.5)
            assert np.allclose(f.U[1], 1.5 * 0.7, rtol=1e-15)

    def test_snapshots_land_exactly(self, ref_pair):
        config = SimConfig(
            grid=Grid(-1.0, 1.0, 64), cfl=0.45, t_final=0.1, snapshot_times=(0.03, 0.07)
        )
        result = run(config, *ref_pair)
        assert [t for t, _ in result.snapshots] == [0.03, 0.07, 0.1]
        for t, f in result.snapshots:
            assert f.time == t

    def test_full_run_conservation_drift(self, ref_config, ref_pair):
        result = run(ref_config, *ref_pair)
        first = init_riemann(ref_config.grid, *ref_pair)
        final = result.snapshots[-1][1]
        dx = ref_config.grid.dx
        change = final.totals(dx) - first.totals(dx)
        drift = change - result.boundary_flux_integral
        scale = np.maximum(1.0, np.abs(first.totals(dx)))
        assert np.all(np.abs(drift) <= 1e-12 * scale)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SimConfig(grid=Grid(-1, 1, 10), cfl=1.5, t_final=0.1)
        with pytest.raises(ValueError):
            SimConfig(grid=Grid(-1, 1, 10), cfl=0.5, t_final=0.1, snapshot_times=(0.2,))
