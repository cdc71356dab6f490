import numpy as np
import pytest

from breather_bench import (
    BreatherParams,
    EvolutionConfig,
    Field,
    NumericalFaultError,
    SolitonParams,
    TailError,
    breather,
    breather_dt,
    conservation_drift,
    derivative,
    evolve,
    make_grid,
    rhs,
    sample_profile,
    sobolev_norm,
    soliton,
    zero_field,
)


class TestRhs:
    def test_breather_satisfies_equation(self, grid):
        p = BreatherParams(1.0, 1.0)
        u = breather(p, 0.37, grid)
        assert (rhs(u) - breather_dt(p, 0.37, grid)).sup_norm() <= 1e-6

    def test_zero(self, grid):
        assert rhs(zero_field(grid)).sup_norm() == 0.0

    def test_soliton_travels(self, grid):
        q = soliton(SolitonParams(1.0), 0.0, grid)
        expected = (-1.0) * derivative(q, 1)
        assert (rhs(q) - expected).sup_norm() <= 1e-8


class TestEvolve:
    def test_config_validation(self):
        with pytest.raises(ValueError):
            EvolutionConfig(dt=-1e-3, t_end=1.0)
        with pytest.raises(ValueError):
            EvolutionConfig(dt=1e-3, t_end=1.0, output_stride=0)

    def test_zero_initial_data(self, grid_1024):
        cfg = EvolutionConfig(dt=1e-3, t_end=0.05, output_stride=10)
        traj = evolve(zero_field(grid_1024), cfg)
        assert all(s.sup_norm() == 0.0 for s in traj.snapshots)

    def test_snapshot_count(self, grid_1024):
        cfg = EvolutionConfig(dt=1e-3, t_end=0.05, output_stride=10)
        traj = evolve(zero_field(grid_1024), cfg)
        assert len(traj.snapshots) == 50 // 10 + 1
        assert np.all(np.diff(traj.times) > 0)

    def test_short_breather_tracking(self, grid):
        p = BreatherParams(1.0, 1.0)
        cfg = EvolutionConfig(dt=2e-4, t_end=0.2, output_stride=1000)
        traj = evolve(breather(p, 0.0, grid), cfg)
        exact = breather(p, float(traj.times[-1]), grid)
        assert sobolev_norm(traj.final - exact, 2) <= 1e-7

    def test_short_run_conservation(self, grid):
        p = BreatherParams(1.0, 1.0)
        cfg = EvolutionConfig(dt=2e-4, t_end=0.2, output_stride=500)
        traj = evolve(breather(p, 0.0, grid), cfg)
        drift = conservation_drift(traj, 1.0, 1.0)
        assert drift["M"] <= 1e-10
        assert max(drift.values()) <= 1e-9

    def test_odd_symmetry(self, grid_1024):
        p = BreatherParams(1.0, 1.0)
        u0 = breather(p, 0.0, grid_1024)
        cfg = EvolutionConfig(dt=5e-4, t_end=0.05, output_stride=100)
        plus = evolve(u0, cfg)
        minus = evolve(-1.0 * u0, cfg)
        for a, b in zip(plus.snapshots, minus.snapshots):
            assert (a + b).sup_norm() <= 1e-12

    def test_translation_equivariance(self, grid_1024):
        p = BreatherParams(1.0, 1.0)
        u0 = breather(p, 0.0, grid_1024)
        steps = 37
        rolled = Field(grid_1024, np.roll(u0.samples, steps))
        cfg = EvolutionConfig(dt=5e-4, t_end=0.05, output_stride=100)
        direct = evolve(rolled, cfg).final
        shifted = np.roll(evolve(u0, cfg).final.samples, steps)
        assert np.abs(direct.samples - shifted).max() <= 1e-10

    def test_blowup_aborts_with_partial_trajectory(self, grid_1024):
        # wildly under-resolved time step on large data goes non-finite;
        # that is a numerical fault, not physics
        u0 = Field(grid_1024, 50.0 * np.sin(np.pi / 30.0 * grid_1024.points))
        cfg = EvolutionConfig(dt=0.5, t_end=50.0, output_stride=1)
        with pytest.raises(NumericalFaultError) as info:
            evolve(u0, cfg)
        assert info.value.trajectory.times.size >= 1
        assert info.value.last_time < 50.0

    def test_strict_tails_breach(self):
        g = make_grid(10.0, 256)
        wide = sample_profile(lambda x: 1.0 / np.cosh(0.1 * x), g)
        cfg = EvolutionConfig(dt=1e-3, t_end=0.01, output_stride=1, strict_tails=True)
        with pytest.raises(TailError):
            evolve(wide, cfg)

    def test_soliton_run_conservation(self, grid):
        q = soliton(SolitonParams(1.0), 0.0, grid)
        cfg = EvolutionConfig(dt=2e-4, t_end=0.2, output_stride=500)
        drift = conservation_drift(evolve(q, cfg), 1.0, 1.0)
        assert max(drift.values()) <= 1e-9
