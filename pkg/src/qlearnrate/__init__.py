"""Maximal rate of quantum learning for unitarily driven systems.

Three evaluation routes over a truncated eigenbasis — an analytic
propagator for the driven oscillator, a first-order perturbative engine
for any finite-basis system, and a brute-force stepping oracle — feed a
common information layer (accessible-information change, speed-limit
time, learning rate) and a sweep CLI that emits deterministic CSV
datasets.
"""
from .errors import (
    ConfigurationError,
    DegenerateDynamicsError,
    DomainError,
    InvariantError,
    NegativityError,
    PerturbationRangeError,
    PreconditionError,
    QLearnRateError,
    TruncationError,
    UnsupportedDriveError,
    UnsupportedInputError,
)
from .exact_ho import (
    ORDER_INTERACTION,
    ORDER_LITERAL,
    ExactObservables,
    HusimiCoefficients,
    QuadratureSpec,
    exact_observables,
    exact_propagate,
    husimi_coefficients,
    husimi_matrix,
    husimi_matrix_elements,
)
from .hilbert import (
    Basis,
    StateVector,
    check_density,
    check_hermitian,
    check_projector,
    project,
    schatten_norm,
    von_neumann_entropy,
)
from .information import (
    NORMALIZED,
    UNNORMALIZED,
    LearningRecord,
    MeasurementSetup,
    ThermalCheck,
    bremermann_bekenstein_rate,
    delta_chi,
    delta_chi_pure_from_probs,
    e_tau,
    holevo_chi,
    omega,
    parity_projectors,
    qsl_time,
    thermal_bound_check,
)
from .oracle import StepPlan, oracle_observables, propagate
from .perturbation import (
    DysonKernel,
    DysonState,
    LinearObservables,
    OutcomeLin,
    compute_I,
    compute_N,
    compute_rho_lin,
    delta_chi_lin,
    dyson_state,
    e_tau_lin,
    linear_observables,
    omega_lin,
    probs_and_entropy_lin,
    qsl_lin,
)
from .sweep import RunConfig, figure_dataset, load_preset, run_sweep, write_sweep_csv
from .systems import (
    DriveProtocol,
    HarmonicSystem,
    PoschlTellerSystem,
    build_ho,
    build_pt,
    lambda_at,
    pt_bound_energies_analytic,
)

__version__ = "0.1.0"
