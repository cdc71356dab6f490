"""Numerical laboratory for mKdV breathers.

Spectral grid calculus, closed-form breather/soliton profiles with all their
parameter derivatives, conserved functionals and identity residuals, the
linearized operator with its spectrum and constrained coercivity, an
integrating-factor RK4 evolution, and orbital-stability experiments with
modulation fitting.
"""

from .evolution import (
    EvolutionConfig,
    NumericalFaultError,
    Trajectory,
    conservation_drift,
    evolve,
    rhs,
)
from .experiments import (
    ConvergenceError,
    ShiftFit,
    StabilityConfig,
    StabilityReport,
    decompose,
    fit_shifts,
    make_perturbation,
    run_identity_suite,
    run_spectrum_experiment,
    run_stability,
)
from .functionals import (
    FunctionalValues,
    breather_xt_identity_residual,
    elliptic_residual,
    energy,
    lyapunov,
    mass,
    second_energy,
    soliton_expansion_remainder,
    soliton_mass_derivative,
    soliton_ode_residual,
)
from .grids import (
    Field,
    GridSpec,
    TailError,
    cumulative_integral,
    derivative,
    integrate,
    make_grid,
    sample_profile,
    sobolev_norm,
    zero_field,
)
from .linearized import (
    OperatorMatrix,
    SpectrumReport,
    apply_linearized,
    assemble_linearized,
    coercivity_estimate,
    essential_edge,
    lyapunov_expansion_remainder,
    operator_identity_residuals,
    quadratic_form,
    spectrum,
)
from .profiles import (
    BreatherParams,
    SolitonParams,
    breather,
    breather_dscale,
    breather_dshift,
    breather_dt,
    breather_scaling_mode,
    breather_shift_hessian,
    soliton,
    velocity_params,
)

__version__ = "0.1.0"
