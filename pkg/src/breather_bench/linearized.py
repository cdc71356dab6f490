"""The linearized operator around a breather: application, assembly, spectrum.

The operator is the Hessian of the Lyapunov functional at the breather,

    z -> z_4x - 2(beta^2-alpha^2) z_xx + (alpha^2+beta^2)^2 z
         + 5 B^2 z_xx + 10 B B_x z_x
         + [5 B_x^2 + 10 B B_xx + (15/2) B^4 - 6(beta^2-alpha^2) B^2] z.

The middle block ``5 B^2 d_xx + 10 B B_x d_x`` is ``d_x(5 B^2 d_x .)``, so the
dense discretization uses the factored form ``D1 @ diag(5 B^2) @ D1`` with the
antisymmetric spectral first-derivative matrix, which keeps the assembled
matrix symmetric to rounding (a final explicit symmetrization removes even
that).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .functionals import lyapunov
from .grids import Field, GridSpec, derivative, integrate
from .profiles import (
    BreatherParams,
    breather,
    breather_dscale,
    breather_dshift,
    breather_scaling_mode,
)

#: Dense-assembly budget; beyond this the O(N^2) matrix and O(N^3) solves
#: stop being desk scale.
MAX_DENSE_N = 4096


def apply_linearized(z: Field, B: Field, alpha: float, beta: float) -> Field:
    """Apply the linearized operator pointwise using spectral derivatives."""
    if z.grid != B.grid:
        raise ValueError("z and B live on different grids")
    mu = beta**2 - alpha**2
    s2 = (alpha**2 + beta**2) ** 2
    bx = derivative(B, 1)
    bxx = derivative(B, 2)
    potential = 5 * bx * bx + 10 * B * bxx + 7.5 * B**4 - 6 * mu * B * B
    return (
        derivative(z, 4)
        - 2 * mu * derivative(z, 2)
        + s2 * z
        + 5 * B * B * derivative(z, 2)
        + 10 * B * bx * derivative(z, 1)
        + potential * z
    )


def quadratic_form(z: Field, B: Field, alpha: float, beta: float) -> float:
    """int z * (operator z)."""
    return integrate(z * apply_linearized(z, B, alpha, beta))


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense symmetric discretization of the linearized operator."""

    n: int
    entries: np.ndarray
    grid: GridSpec
    params: tuple[float, float]
    built_at: float

    def __post_init__(self) -> None:
        entries = np.asarray(self.entries, dtype=np.float64)
        if entries.shape != (self.n, self.n):
            raise ValueError("entries shape does not match n")
        entries = entries.copy()
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    def symmetry_defect(self) -> float:
        return float(np.abs(self.entries - self.entries.T).max())

    def matvec(self, z: Field) -> Field:
        if z.grid != self.grid:
            raise ValueError("field grid does not match operator grid")
        return Field(self.grid, self.entries @ z.samples)


def diff_matrix(grid: GridSpec, order: int) -> np.ndarray:
    """Dense spectral differentiation matrix of the given order.

    Odd orders drop the Nyquist mode (matching :func:`grids.derivative`) and
    are returned exactly antisymmetric; even orders exactly symmetric.
    """
    n = grid.n_points
    k = grid.wavenumbers
    sym = (1j * k) ** order
    if order % 2 == 1:
        sym = sym.copy()
        sym[-1] = 0.0
    mat = np.fft.irfft(sym[:, None] * np.fft.rfft(np.eye(n), axis=0), n=n, axis=0)
    if order % 2 == 1:
        return 0.5 * (mat - mat.T)
    return 0.5 * (mat + mat.T)


def assemble_linearized(
    grid: GridSpec, B: Field, alpha: float, beta: float, built_at: float = 0.0
) -> OperatorMatrix:
    """Assemble the dense symmetric operator matrix for the background B."""
    if grid.n_points > MAX_DENSE_N:
        raise ValueError(
            f"dense assembly capped at N={MAX_DENSE_N}, got {grid.n_points}"
        )
    if B.grid != grid:
        raise ValueError("background field does not live on the given grid")
    mu = beta**2 - alpha**2
    s2 = (alpha**2 + beta**2) ** 2
    d1 = diff_matrix(grid, 1)
    d2 = diff_matrix(grid, 2)
    d4 = diff_matrix(grid, 4)
    b = B.samples
    bx = derivative(B, 1).samples
    bxx = derivative(B, 2).samples
    potential = s2 + 5 * bx**2 + 10 * b * bxx + 7.5 * b**4 - 6 * mu * b**2
    mat = d4 - 2 * mu * d2 + d1 @ ((5 * b**2)[:, None] * d1) + np.diag(potential)
    mat = 0.5 * (mat + mat.T)
    return OperatorMatrix(grid.n_points, mat, grid, (alpha, beta), built_at)


def operator_identity_residuals(
    p: BreatherParams, t: float, grid: GridSpec
) -> dict[str, float]:
    """Sup-norms of the five operator identities at (p, t).

    Keys: ``kernel_x1``, ``kernel_x2`` (the two kernel fields map to zero),
    ``scale_alpha``, ``scale_beta`` (images of the scaling derivatives), and
    ``scaling_mode`` (the normalized combination maps to minus the profile).
    """
    B = breather(p, t, grid)
    alpha, beta = p.alpha, p.beta
    s2 = alpha**2 + beta**2
    bxx = derivative(B, 2)
    b1 = breather_dshift(p, t, grid, "x1")
    b2 = breather_dshift(p, t, grid, "x2")
    la = breather_dscale(p, t, grid, "alpha")
    lb = breather_dscale(p, t, grid, "beta")
    mode = breather_scaling_mode(p, t, grid)
    rhs_alpha = -4 * alpha * (bxx + B**3 + s2 * B)
    rhs_beta = 4 * beta * (bxx + B**3 - s2 * B)
    return {
        "kernel_x1": apply_linearized(b1, B, alpha, beta).sup_norm(),
        "kernel_x2": apply_linearized(b2, B, alpha, beta).sup_norm(),
        "scale_alpha": (apply_linearized(la, B, alpha, beta) - rhs_alpha).sup_norm(),
        "scale_beta": (apply_linearized(lb, B, alpha, beta) - rhs_beta).sup_norm(),
        "scaling_mode": (apply_linearized(mode, B, alpha, beta) + B).sup_norm(),
    }


def essential_edge(alpha: float, beta: float) -> float:
    """Bottom of the continuous spectrum: (alpha^2+beta^2)^2 if beta >= alpha,
    else 4 alpha^2 beta^2 (the symbol minimum moves off k = 0)."""
    if beta >= alpha:
        return (alpha**2 + beta**2) ** 2
    return 4.0 * alpha**2 * beta**2


def free_symbol_minimum(grid: GridSpec, alpha: float, beta: float) -> float:
    """Minimum of the constant-coefficient symbol over the grid's wavenumbers."""
    k = grid.wavenumbers
    sym = k**4 + 2 * (beta**2 - alpha**2) * k**2 + (alpha**2 + beta**2) ** 2
    return float(sym.min())


@dataclass(frozen=True)
class SpectrumReport:
    """Lowest eigenvalues of the discretized operator, classified."""

    eigenvalues: np.ndarray
    n_negative: int
    kernel_count: int
    essential_edge_theory: float
    lowest_eigenvalue: float
    tol_negative: float
    tol_kernel: float


def spectrum(
    m: OperatorMatrix,
    k: int,
    tol_negative: float | None = None,
    tol_kernel: float | None = None,
) -> SpectrumReport:
    """Lowest k eigenvalues by a full dense symmetric eigensolve.

    Classification tolerances default to 1e-3 (negative) and 1e-6 (kernel)
    times (alpha^2+beta^2)^2, so parameter sweeps share one rule.
    """
    if k > m.n:
        raise ValueError(f"requested {k} eigenvalues from an {m.n}-point operator")
    alpha, beta = m.params
    scale = (alpha**2 + beta**2) ** 2
    if tol_negative is None:
        tol_negative = 1e-3 * scale
    if tol_kernel is None:
        tol_kernel = 1e-6 * scale
    try:
        eigs = np.linalg.eigvalsh(m.entries)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise RuntimeError(f"symmetric eigensolve failed: {exc}") from exc
    lowest = eigs[:k].copy()
    n_negative = int(np.sum(eigs < -tol_negative))
    kernel_count = int(np.sum(np.abs(eigs) <= tol_kernel))
    return SpectrumReport(
        eigenvalues=lowest,
        n_negative=n_negative,
        kernel_count=kernel_count,
        essential_edge_theory=essential_edge(alpha, beta),
        lowest_eigenvalue=float(eigs[0]),
        tol_negative=float(tol_negative),
        tol_kernel=float(tol_kernel),
    )


def sobolev_gram(grid: GridSpec, metric: str) -> np.ndarray:
    """Gram matrix of the L2 or H2 inner product on grid samples.

    The quadrature weight h cancels in every Rayleigh quotient against the
    operator matrix, so it is omitted from both sides; the unconstrained L2
    minimum then coincides with the lowest matrix eigenvalue.
    """
    if metric == "L2":
        return np.eye(grid.n_points)
    if metric == "H2":
        d1 = diff_matrix(grid, 1)
        d2 = diff_matrix(grid, 2)
        g = np.eye(grid.n_points) + d1.T @ d1 + d2.T @ d2
        return 0.5 * (g + g.T)
    raise ValueError(f"metric must be 'L2' or 'H2', got {metric!r}")


def coercivity_estimate(
    m: OperatorMatrix, constraints: list[Field], metric: str = "H2"
) -> float:
    """Minimum generalized Rayleigh quotient of the operator over the
    subspace orthogonal to the constraint fields.

    Orthogonality is the discrete L2 pairing; the quotient denominator is the
    chosen metric's quadratic form.  Raises on rank-deficient constraints.
    """
    gram = sobolev_gram(m.grid, metric)
    if constraints:
        rows = np.vstack([c.samples for c in constraints])
        sv = np.linalg.svd(rows, compute_uv=False)
        if sv[-1] < 1e-10 * sv[0]:
            raise ValueError("constraint fields are numerically rank-deficient")
        basis = scipy.linalg.null_space(rows)
    else:
        basis = np.eye(m.n)
    a_proj = basis.T @ m.entries @ basis
    g_proj = basis.T @ gram @ basis
    a_proj = 0.5 * (a_proj + a_proj.T)
    g_proj = 0.5 * (g_proj + g_proj.T)
    eigs = scipy.linalg.eigh(a_proj, g_proj, eigvals_only=True)
    return float(eigs[0])


def lyapunov_expansion_remainder(
    p: BreatherParams, t: float, z: Field
) -> float:
    """Cubic remainder of the Lyapunov expansion around the breather:

    ``H[B+z] - H[B] - (1/2) int z (operator z)``.

    The linear term vanishes through the elliptic equation, so for smooth z
    this scales with the cube of the perturbation size.
    """
    B = breather(p, t, z.grid)
    alpha, beta = p.alpha, p.beta
    return (
        lyapunov(B + z, alpha, beta)
        - lyapunov(B, alpha, beta)
        - 0.5 * quadratic_form(z, B, alpha, beta)
    )
