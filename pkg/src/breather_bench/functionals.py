"""Conserved quantities and pointwise residuals of the nonlinear identities.

Mass, energy, the second energy (the H^2-level conserved quantity) and the
Lyapunov combination are plain quadratures.  The residual operations return
full fields rather than norms so that reports can show where an identity
breaks down spatially.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .grids import Field, GridSpec, cumulative_integral, derivative, integrate
from .profiles import BreatherParams, SolitonParams, breather, breather_dt, soliton


def mass(u: Field, strict: bool = False) -> float:
    """(1/2) int u^2."""
    return 0.5 * integrate(u * u, strict=strict)


def energy(u: Field, strict: bool = False) -> float:
    """(1/2) int u_x^2 - (1/4) int u^4."""
    ux = derivative(u, 1)
    return 0.5 * integrate(ux * ux, strict=strict) - 0.25 * integrate(u**4, strict=strict)


def second_energy(u: Field, strict: bool = False) -> float:
    """(1/2) int u_xx^2 - (5/2) int u^2 u_x^2 + (1/4) int u^6."""
    ux = derivative(u, 1)
    uxx = derivative(u, 2)
    return (
        0.5 * integrate(uxx * uxx, strict=strict)
        - 2.5 * integrate(u * u * ux * ux, strict=strict)
        + 0.25 * integrate(u**6, strict=strict)
    )


def lyapunov(u: Field, alpha: float, beta: float, strict: bool = False) -> float:
    """Second energy + 2(beta^2-alpha^2) * energy + (alpha^2+beta^2)^2 * mass."""
    return (
        second_energy(u, strict=strict)
        + 2 * (beta**2 - alpha**2) * energy(u, strict=strict)
        + (alpha**2 + beta**2) ** 2 * mass(u, strict=strict)
    )


@dataclass(frozen=True)
class FunctionalValues:
    """Snapshot of the four functionals of a field at one time."""

    mass: float
    energy: float
    second_energy: float
    lyapunov: float
    at_time: float

    @classmethod
    def of(
        cls, u: Field, alpha: float, beta: float, at_time: float = 0.0
    ) -> "FunctionalValues":
        m = mass(u)
        e = energy(u)
        f = second_energy(u)
        h = f + 2 * (beta**2 - alpha**2) * e + (alpha**2 + beta**2) ** 2 * m
        return cls(m, e, f, h, at_time)


def breather_mass_value(p: BreatherParams) -> float:
    """Closed-form breather mass, 4*beta."""
    return 4.0 * p.beta

def breather_energy_value(p: BreatherParams) -> float:
    """Closed-form breather energy, (4/3)*beta*gamma."""
    return (4.0 / 3.0) * p.beta * p.gamma


def soliton_mass_value(sp: SolitonParams) -> float:
    """Closed-form soliton mass, 2*sqrt(c)."""
    return 2.0 * math.sqrt(sp.c)


def elliptic_residual(B: Field, alpha: float, beta: float) -> Field:
    """Residual of the fourth-order elliptic equation satisfied by breathers.

    ``B_4x - 2(beta^2-alpha^2)(B_xx + B^3) + (alpha^2+beta^2)^2 B
    + 5 B B_x^2 + 5 B^2 B_xx + (3/2) B^5``

    ``alpha = 0`` with ``beta = sqrt(c)`` is admitted: the equation is then
    annihilated by the soliton profile, which is the degenerate limit check.
    """
    if alpha < 0 or beta <= 0:
        raise ValueError(f"need alpha >= 0 and beta > 0, got ({alpha}, {beta})")
    mu = beta**2 - alpha**2
    s2 = (alpha**2 + beta**2) ** 2
    bx = derivative(B, 1)
    bxx = derivative(B, 2)
    b4 = derivative(B, 4)
    return (
        b4 - 2 * mu * (bxx + B**3) + s2 * B
        + 5 * B * bx * bx + 5 * B * B * bxx + 1.5 * B**5
    )


def breather_xt_identity_residual(
    p: BreatherParams, t: float, grid: GridSpec, strict: bool = False
) -> Field:
    """Residual of the mixed x-t identity linking B_xt to running integrals:

    ``B_xt + 2B int_{-L}^x B B_t - (alpha^2+beta^2)^2 B
    - 2(beta^2-alpha^2) int_{-L}^x B_t``

    with the left window edge standing in for -infinity.
    """
    B = breather(p, t, grid, strict=strict)
    Bt = breather_dt(p, t, grid)
    Bxt = derivative(Bt, 1)
    mu = p.beta**2 - p.alpha**2
    s2 = (p.alpha**2 + p.beta**2) ** 2
    lhs = Bxt + 2 * B * cumulative_integral(B * Bt, strict=strict)
    rhs = s2 * B + 2 * mu * cumulative_integral(Bt, strict=strict)
    return lhs - rhs


def soliton_ode_residual(Q: Field, c: float) -> Field:
    """Pointwise residual of ``Q'' - c Q + Q^3``."""
    return derivative(Q, 2) - c * Q + Q**3


def soliton_mass_derivative(
    c: float, grid: GridSpec | None = None, step: float | None = None
) -> tuple[float, float]:
    """Numeric d(mass)/dc of the soliton family versus the closed form 1/sqrt(c).

    Centered difference in c; the default step keeps the stencil inside c > 0
    and the truncation error below 1e-8.
    """
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    from .grids import DEFAULT_HALF_WIDTH, DEFAULT_N_POINTS, make_grid

    if grid is None:
        grid = make_grid(DEFAULT_HALF_WIDTH, DEFAULT_N_POINTS)
    if step is None:
        step = 1e-4 * min(1.0, c)
    if c - step <= 0:
        raise ValueError(f"step {step} too large for c={c}")
    m_plus = mass(soliton(SolitonParams(c + step), 0.0, grid))
    m_minus = mass(soliton(SolitonParams(c - step), 0.0, grid))
    numeric = (m_plus - m_minus) / (2 * step)
    return numeric, 1.0 / math.sqrt(c)


def soliton_quadratic_form(c: float, z: Field) -> float:
    """(1/2) int [z_x^2 + (c - 3 Q_c^2) z^2], the soliton Hessian form."""
    Q = soliton(SolitonParams(c), 0.0, z.grid)
    zx = derivative(z, 1)
    return 0.5 * (integrate(zx * zx) + integrate((c * z - 3.0 * Q * Q * z) * z))


def soliton_expansion_remainder(c: float, z: Field) -> float:
    """Cubic remainder of the soliton Lyapunov expansion.

    ``(E + cM)[Q_c + z] - (E + cM)[Q_c] - Q_sol[z]`` where ``Q_sol`` is the
    soliton Hessian form above.  At the exact profile the linear term
    vanishes through the soliton ODE, so this is O(||z||^3).
    """
    Q = soliton(SolitonParams(c), 0.0, z.grid)
    perturbed = Q + z

    def h(u: Field) -> float:
        return energy(u) + c * mass(u)

    return h(perturbed) - h(Q) - soliton_quadratic_form(c, z)
