import math

import numpy as np
import pytest

from breather_bench import (
    BreatherParams,
    FunctionalValues,
    SolitonParams,
    breather,
    breather_xt_identity_residual,
    derivative,
    elliptic_residual,
    energy,
    lyapunov,
    make_grid,
    mass,
    sample_profile,
    second_energy,
    sobolev_norm,
    soliton,
    soliton_expansion_remainder,
    soliton_mass_derivative,
    soliton_ode_residual,
    zero_field,
)
from breather_bench.functionals import soliton_quadratic_form
from breather_bench.grids import Field


def closed_form_second_energy(p: BreatherParams) -> float:
    # frozen oracle: sum of complex-soliton values (2/5) c^{5/2} over the
    # conjugate pair sqrt(c) = beta +/- i*alpha, i.e. (4/5) Re (beta+i alpha)^5
    a, b = p.alpha, p.beta
    return 0.8 * (b**5 - 10 * a**2 * b**3 + 5 * a**4 * b)


class TestMass:
    def test_breather(self, grid):
        assert mass(breather(BreatherParams(1.0, 1.0), 0.0, grid)) == pytest.approx(
            4.0, abs=1e-10
        )

    def test_zero(self, grid):
        assert mass(zero_field(grid)) == 0.0

    def test_soliton(self, grid):
        assert mass(soliton(SolitonParams(4.0), 0.0, grid)) == pytest.approx(
            4.0, abs=1e-10
        )


class TestEnergy:
    def test_breather(self, grid):
        assert energy(breather(BreatherParams(1.0, 1.0), 0.0, grid)) == pytest.approx(
            8.0 / 3.0, abs=1e-9
        )

    def test_zero(self, grid):
        assert energy(zero_field(grid)) == 0.0

    def test_stationary_envelope_has_zero_energy(self, grid):
        p = BreatherParams(1.0, math.sqrt(3.0))
        assert energy(breather(p, 0.0, grid)) == pytest.approx(0.0, abs=1e-9)


class TestSecondEnergy:
    def test_zero(self, grid):
        assert second_energy(zero_field(grid)) == 0.0

    def test_frozen_reference_with_resolution_doubling(self):
        values = {}
        for n in (2048, 4096):
            g = make_grid(30.0, n)
            values[n] = second_energy(breather(BreatherParams(1.0, 1.0), 0.0, g))
        assert values[2048] == pytest.approx(values[4096], rel=1e-9)
        assert values[2048] == pytest.approx(-3.2, abs=1e-9)

    def test_closed_form_oracle(self, grid, standard_pairs):
        for p in standard_pairs:
            measured = second_energy(breather(p, 0.0, grid))
            assert measured == pytest.approx(closed_form_second_energy(p), abs=1e-10)

    def test_small_amplitude_limit(self, grid):
        s = sample_profile(lambda x: 1.0 / np.cosh(x), grid)
        sxx = derivative(s, 2)
        quad = 0.5 * float(
            (sxx * sxx).samples.sum() * grid.spacing
        )
        eps = 1e-3
        ratio = second_energy(eps * s) / (eps**2 * quad)
        assert ratio == pytest.approx(1.0, abs=1e-3)


class TestLyapunov:
    def test_composition_is_exact(self, grid, rng):
        u = Field(grid, rng.standard_normal(grid.n_points))
        alpha, beta = 1.3, 0.8
        expected = (
            second_energy(u)
            + 2 * (beta**2 - alpha**2) * energy(u)
            + (alpha**2 + beta**2) ** 2 * mass(u)
        )
        assert lyapunov(u, alpha, beta) == expected

    def test_conserved_between_breather_times(self, grid):
        p = BreatherParams(1.0, 1.0)
        h0 = lyapunov(breather(p, 0.0, grid), 1.0, 1.0)
        h1 = lyapunov(breather(p, 0.7, grid), 1.0, 1.0)
        assert h1 == pytest.approx(h0, rel=1e-8)

    def test_zero(self, grid):
        assert lyapunov(zero_field(grid), 1.0, 2.0) == 0.0

    def test_functional_values_snapshot(self, grid):
        p = BreatherParams(1.0, 1.0)
        vals = FunctionalValues.of(breather(p, 0.0, grid), 1.0, 1.0, at_time=0.0)
        assert vals.lyapunov == (
            vals.second_energy + 0.0 * vals.energy + 4.0 * vals.mass
        )

    def test_even_under_negation(self, grid):
        u = breather(BreatherParams(1.0, 1.0), 0.3, grid)
        for fn in (mass, energy, second_energy, lambda v: lyapunov(v, 1.0, 1.0)):
            assert fn(-1.0 * u) == pytest.approx(fn(u), rel=1e-14)

    def test_translation_invariance(self, grid):
        u = breather(BreatherParams(1.0, 1.0), 0.0, grid)
        rolled = Field(grid, np.roll(u.samples, 100))
        for fn in (mass, energy, second_energy):
            assert fn(rolled) == pytest.approx(fn(u), rel=1e-12)


class TestEllipticResidual:
    def test_breather_satisfies_equation(self, grid):
        p = BreatherParams(1.0, 1.0)
        for t in (0.0, 0.25, 1.3, 7.9):
            b = breather(p, t, grid)
            assert elliptic_residual(b, 1.0, 1.0).sup_norm() <= 1e-6

    def test_zero_field(self, grid):
        assert elliptic_residual(zero_field(grid), 1.0, 1.0).sup_norm() == 0.0

    def test_soliton_limit(self, grid):
        for c in (1.0, 4.0):
            q = soliton(SolitonParams(c), 0.0, grid)
            res = elliptic_residual(q, 0.0, math.sqrt(c))
            assert res.sup_norm() <= 1e-6

    def test_rejects_bad_parameters(self, grid):
        with pytest.raises(ValueError):
            elliptic_residual(zero_field(grid), -1.0, 1.0)


class TestXtIdentity:
    @pytest.mark.parametrize(
        "alpha,beta,t",
        [(1.0, 1.0, 0.0), (1.0, 1.0, 0.37), (1.0, math.sqrt(3.0), 1.0)],
    )
    def test_residual_small(self, grid, alpha, beta, t):
        p = BreatherParams(alpha, beta)
        res = breather_xt_identity_residual(p, t, grid)
        assert res.sup_norm() <= 1e-6


class TestSolitonOde:
    def test_residual_small(self, grid):
        q = soliton(SolitonParams(1.0), 0.0, grid)
        assert soliton_ode_residual(q, 1.0).sup_norm() <= 1e-8

    def test_zero(self, grid):
        assert soliton_ode_residual(zero_field(grid), 1.0).sup_norm() == 0.0

    def test_detects_wrong_amplitude(self, grid):
        q = 1.1 * soliton(SolitonParams(1.0), 0.0, grid)
        assert soliton_ode_residual(q, 1.0).sup_norm() >= 0.05


class TestSolitonMassDerivative:
    @pytest.mark.parametrize("c,expected", [(4.0, 0.5), (1.0, 1.0), (0.25, 2.0)])
    def test_matches_closed_form(self, grid, c, expected):
        numeric, analytic = soliton_mass_derivative(c, grid)
        assert analytic == pytest.approx(expected)
        assert numeric == pytest.approx(analytic, abs=1e-6)

    def test_rejects_nonpositive_speed(self):
        with pytest.raises(ValueError):
            soliton_mass_derivative(-1.0)


class TestSolitonExpansion:
    def test_zero_perturbation(self, grid):
        assert soliton_expansion_remainder(1.0, zero_field(grid)) == 0.0

    def test_cubic_scaling(self, grid):
        w = Field(grid, np.cos(0.7 * grid.points) / np.cosh(0.5 * grid.points))
        w = (1.0 / sobolev_norm(w, 1)) * w
        eps = [1e-2, 5e-3, 2.5e-3]
        rems = [abs(soliton_expansion_remainder(1.0, e * w)) for e in eps]
        slope = np.polyfit(np.log(eps), np.log(rems), 1)[0]
        assert slope == pytest.approx(3.0, abs=0.2)

    def test_translation_direction_is_flat(self, grid):
        q = soliton(SolitonParams(1.0), 0.0, grid)
        qprime = derivative(q, 1)
        for eps in (1e-2, 1e-3):
            val = soliton_quadratic_form(1.0, eps * qprime)
            assert abs(val) <= 1e-8 * eps**2
