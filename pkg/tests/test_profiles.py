import math

import numpy as np
import pytest

from breather_bench import (
    BreatherParams,
    Field,
    SolitonParams,
    breather,
    breather_dscale,
    breather_dshift,
    breather_dt,
    breather_scaling_mode,
    breather_shift_hessian,
    derivative,
    integrate,
    mass,
    soliton,
    velocity_params,
)

ROOT8 = 2 * math.sqrt(2)


def five_point(f, p0, h):
    return (f(p0 - 2 * h) - 8 * f(p0 - h) + 8 * f(p0 + h) - f(p0 + 2 * h)) / (12 * h)


class TestParams:
    def test_positive_scales_required(self):
        with pytest.raises(ValueError):
            BreatherParams(0.0, 1.0)
        with pytest.raises(ValueError):
            BreatherParams(1.0, -2.0)
        with pytest.raises(ValueError):
            SolitonParams(0.0)

    def test_velocity_params(self):
        assert velocity_params(BreatherParams(2.0, 1.0)) == (1.0, 11.0)
        assert velocity_params(BreatherParams(1.0, 1.0)) == (-2.0, 2.0)
        delta, gamma = velocity_params(BreatherParams(1.0, math.sqrt(3.0)))
        assert delta == pytest.approx(-8.0)
        assert gamma == pytest.approx(0.0, abs=1e-15)


class TestBreather:
    def test_origin_value(self, grid):
        b = breather(BreatherParams(1.0, 1.0), 0.0, grid)
        idx = np.argmin(np.abs(grid.points))
        assert grid.points[idx] == 0.0
        assert b.samples[idx] == pytest.approx(ROOT8, abs=1e-12)

    @pytest.mark.parametrize("beta", [1.0, 2.0])
    def test_mass(self, grid, beta):
        b = breather(BreatherParams(1.0, beta), 0.0, grid)
        assert mass(b) == pytest.approx(4 * beta, abs=1e-10)

    def test_time_enters_through_shifts(self, grid):
        p = BreatherParams(1.0, 1.0, 0.2, -0.4)
        t, s = 0.3, 0.45
        shifted = BreatherParams(
            p.alpha, p.beta, p.x1 + p.delta * s, p.x2 + p.gamma * s
        )
        d = breather(p, t + s, grid) - breather(shifted, t, grid)
        assert d.sup_norm() <= 1e-12

    def test_shift_covariance(self, grid):
        # shifting both x1 and x2 by a grid multiple translates the samples
        steps = 64
        a = steps * grid.spacing
        p = BreatherParams(1.0, 1.0)
        q = BreatherParams(1.0, 1.0, a, a)
        translated = np.roll(breather(p, 0.0, grid).samples, -steps)
        assert np.abs(breather(q, 0.0, grid).samples - translated).max() <= 1e-10

    def test_moving_frame_time_periodicity(self, grid):
        # one internal period later, the profile is the same after traveling
        # gamma * T0; the comparison shifts it back spectrally
        p = BreatherParams(1.0, 1.0)
        t0 = p.period
        later = breather(p, 0.21 + t0, grid)
        fh = np.fft.rfft(later.samples)
        # identity: later(x) = now(x + gamma*T0), so shift later back
        shifted = np.fft.irfft(
            fh * np.exp(-1j * grid.wavenumbers * p.gamma * t0), n=grid.n_points
        )
        now = breather(p, 0.21, grid)
        assert np.abs(shifted - now.samples).max() <= 1e-10

    def test_sign_symmetry(self, grid):
        p = BreatherParams(1.0, 1.0, 0.3, -0.2)
        q = BreatherParams(1.0, 1.0, 0.3 + math.pi, -0.2)
        d = breather(q, 0.37, grid) + breather(p, 0.37, grid)
        assert d.sup_norm() <= 1e-10

    def test_wave_packet_limit(self):
        from breather_bench import make_grid

        alpha, beta = 1.0, 0.05
        g = make_grid(30.0 / beta, 8192)
        p = BreatherParams(alpha, beta)
        for t in (0.0, 0.4):
            b = breather(p, t, g)
            x = g.points
            packet = (
                ROOT8 * beta * np.cos(alpha * (x + p.delta * t))
                / np.cosh(beta * (x + p.gamma * t))
            )
            assert np.abs(b.samples - packet).max() <= 10 * (beta / alpha) * beta


class TestShiftDerivatives:
    def test_sum_is_spatial_derivative(self, grid):
        p = BreatherParams(1.0, 1.0)
        b = breather(p, 0.0, grid)
        b1 = breather_dshift(p, 0.0, grid, "x1")
        b2 = breather_dshift(p, 0.0, grid, "x2")
        assert (b1 + b2 - derivative(b, 1)).sup_norm() <= 1e-10

    def test_against_parameter_stencil(self, grid):
        p = BreatherParams(1.0, 1.0, 0.1, -0.2)
        b1 = breather_dshift(p, 0.37, grid, "x1")
        fd = five_point(
            lambda v: breather(BreatherParams(1.0, 1.0, v, -0.2), 0.37, grid).samples,
            0.1,
            1e-3,
        )
        assert np.abs(b1.samples - fd).max() <= 1e-8

    def test_tail_decay(self, grid):
        p = BreatherParams(1.0, 1.0)
        mask = np.abs(grid.points) > grid.half_width - 5
        for which in ("x1", "x2"):
            f = breather_dshift(p, 0.0, grid, which)
            assert np.abs(f.samples[mask]).max() <= 1e-10

    def test_invalid_selector(self, grid):
        with pytest.raises(ValueError):
            breather_dshift(BreatherParams(1.0, 1.0), 0.0, grid, "x3")

    def test_hessian_against_stencils(self, grid):
        p = BreatherParams(1.0, 1.0, 0.1, -0.2)
        b11, b12, b22 = breather_shift_hessian(p, 0.2, grid)

        def shift1(v):
            return breather_dshift(
                BreatherParams(1.0, 1.0, v, -0.2), 0.2, grid, "x1"
            ).samples

        def shift2_of_x2(v):
            return breather_dshift(
                BreatherParams(1.0, 1.0, 0.1, v), 0.2, grid, "x2"
            ).samples

        def shift1_of_x2(v):
            return breather_dshift(
                BreatherParams(1.0, 1.0, 0.1, v), 0.2, grid, "x1"
            ).samples

        assert np.abs(five_point(shift1, 0.1, 1e-3) - b11.samples).max() <= 1e-8
        assert np.abs(five_point(shift1_of_x2, -0.2, 1e-3) - b12.samples).max() <= 1e-8
        assert np.abs(five_point(shift2_of_x2, -0.2, 1e-3) - b22.samples).max() <= 1e-8


class TestScaleDerivatives:
    def test_mass_derivative_in_beta(self, grid):
        p = BreatherParams(1.0, 1.0)
        b = breather(p, 0.0, grid)
        lb = breather_dscale(p, 0.0, grid, "beta")
        assert integrate(b * lb) == pytest.approx(4.0, abs=1e-6)

    def test_mass_derivative_in_alpha(self, grid):
        p = BreatherParams(1.0, 1.0)
        b = breather(p, 0.0, grid)
        la = breather_dscale(p, 0.0, grid, "alpha")
        assert integrate(b * la) == pytest.approx(0.0, abs=1e-6)

    def test_stencil_step_halving(self, grid):
        p = BreatherParams(1.0, 1.0)
        coarse = breather_dscale(p, 0.0, grid, "beta", method="stencil", step=2e-3)
        fine = breather_dscale(p, 0.0, grid, "beta", method="stencil", step=1e-3)
        assert (coarse - fine).sup_norm() <= 1e-9

    @pytest.mark.parametrize("which", ["alpha", "beta"])
    def test_analytic_matches_stencil(self, grid, which):
        for p, t, tol in [
            (BreatherParams(1.0, 1.0), 0.0, 1e-9),
            (BreatherParams(1.0, 2.0), 0.0, 1e-9),
            (BreatherParams(0.7, 1.3), 0.37, 1e-8),
            (BreatherParams(2.0, 1.0), 0.5, 1e-7),
        ]:
            analytic = breather_dscale(p, t, grid, which)
            stencil = breather_dscale(p, t, grid, which, method="stencil")
            assert (analytic - stencil).sup_norm() <= tol

    def test_symbolic_spot_check(self, grid):
        # independent symbolic oracle at a handful of sample points
        import sympy

        a_s, b_s, t_s, x_s = sympy.symbols("alpha beta t x", positive=True)
        delta = a_s**2 - 3 * b_s**2
        gamma = 3 * a_s**2 - b_s**2
        y1 = x_s + delta * t_s
        y2 = x_s + gamma * t_s
        expr = 2 * sympy.sqrt(2) * sympy.diff(
            sympy.atan(b_s / a_s * sympy.sin(a_s * y1) / sympy.cosh(b_s * y2)), x_s
        )
        alpha, beta, t = 1.1, 0.9, 0.23
        p = BreatherParams(alpha, beta)
        la = breather_dscale(p, t, grid, "alpha")
        lb = breather_dscale(p, t, grid, "beta")
        for idx in (824, 1024, 1100, 1210, 1350):
            subs = {a_s: alpha, b_s: beta, t_s: t, x_s: float(grid.points[idx])}
            want_a = float(sympy.diff(expr, a_s).evalf(30, subs=subs))
            want_b = float(sympy.diff(expr, b_s).evalf(30, subs=subs))
            assert la.samples[idx] == pytest.approx(want_a, abs=1e-10)
            assert lb.samples[idx] == pytest.approx(want_b, abs=1e-10)

    def test_stencil_needs_room(self, grid):
        with pytest.raises(ValueError):
            breather_dscale(
                BreatherParams(1e-3, 1.0), 0.0, grid, "alpha", method="stencil"
            )


class TestScalingMode:
    def test_is_the_stated_combination(self, grid):
        p = BreatherParams(1.0, 2.0)
        la = breather_dscale(p, 0.0, grid, "alpha")
        lb = breather_dscale(p, 0.0, grid, "beta")
        expected = (1.0 / (8 * p.alpha * p.beta * (p.alpha**2 + p.beta**2))) * (
            p.alpha * lb + p.beta * la
        )
        mode = breather_scaling_mode(p, 0.0, grid)
        assert (mode - expected).sup_norm() <= 1e-14

    @pytest.mark.parametrize(
        "alpha,beta", [(1.0, 1.0), (1.0, 2.0)]
    )
    def test_inner_product_with_breather(self, grid, alpha, beta):
        p = BreatherParams(alpha, beta)
        b = breather(p, 0.0, grid)
        mode = breather_scaling_mode(p, 0.0, grid)
        expected = 1.0 / (2 * beta * (alpha**2 + beta**2))
        assert integrate(mode * b) == pytest.approx(expected, abs=1e-6)


class TestTimeDerivative:
    def test_against_time_stencil(self, grid):
        for p, t in [
            (BreatherParams(1.0, 1.0), 0.0),
            (BreatherParams(2.0, 1.0), 0.2),
        ]:
            bt = breather_dt(p, t, grid)
            fd = Field(
                grid,
                five_point(lambda v: breather(p, v, grid).samples, t, 1e-4),
            )
            assert (bt - fd).sup_norm() <= 1e-7

    def test_stationary_envelope(self, grid):
        p = BreatherParams(1.0, math.sqrt(3.0))
        bt = breather_dt(p, 1.0, grid)
        b1 = breather_dshift(p, 1.0, grid, "x1")
        assert (bt - p.delta * b1).sup_norm() <= 1e-12

    def test_tail_decay(self, grid):
        bt = breather_dt(BreatherParams(1.0, 1.0), 0.0, grid)
        assert abs(bt.samples[0]) <= 1e-10 and abs(bt.samples[-1]) <= 1e-10


class TestSoliton:
    def test_crest_value(self, grid):
        q = soliton(SolitonParams(2.0), 0.0, grid)
        assert q.samples.max() == pytest.approx(2.0, abs=1e-12)

    def test_mass(self, grid):
        q = soliton(SolitonParams(4.0), 0.0, grid)
        assert mass(q) == pytest.approx(4.0, abs=1e-10)

    def test_travels(self, grid):
        # crest sits at x = c*t + x0
        q = soliton(SolitonParams(1.0, 0.5), 1.25, grid)
        crest = grid.points[np.argmax(q.samples)]
        assert abs(crest - (1.25 + 0.5)) <= grid.spacing
