"""First-order Dyson engine for any finite-basis driven system.

The drive is separable, H(t) = H0 + lambda(t) V_op, so the first-order
kernel reduces entrywise to windowed Fourier transforms of the ramp:
I_mn(t) = (V_op)_mn * integral_0^t lambda(s) exp(i (E_m - E_n) s) ds.
The ramp amplitude is carried inside lambda(s), so all assembled formulas
below use plain 1/hbar prefactors (hbar = 1).

Everything downstream keeps only terms linear in the drive amplitude: the
renormalised free part rho_in, the correction delta_rho, linearised
outcome probabilities and entropies, the information change, the
small-angle speed-limit time, and the learning rate.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateDynamicsError,
    InvariantError,
    PerturbationRangeError,
    PreconditionError,
    UnsupportedInputError,
)
from .hilbert import Basis, StateVector, von_neumann_entropy
from .information import (
    STATUS_DEGENERATE,
    STATUS_OK,
    UNNORMALIZED,
    LearningRecord,
    MeasurementSetup,
    omega as omega_of,
    parity_projectors,
)
from .quadrature import cumulative_oscillatory_transform, gl_nodes
from .systems import DriveProtocol


class DysonKernel:
    """Evaluates I(t) profiles for one (system, protocol) pair.

    Distinct Bohr frequencies of the nonzero coupling entries are
    transformed once per time grid (cumulatively), then scattered back
    into matrix form.
    """

    def __init__(self, energies: np.ndarray, v_op: np.ndarray,
                 protocol: DriveProtocol, base_order: int = 16):
        energies = np.asarray(energies, dtype=float)
        if np.max(np.abs(v_op - v_op.conj().T)) > 1e-12:
            raise PreconditionError("coupling operator must be hermitian")
        self.energies = energies
        self.v_op = np.asarray(v_op, dtype=complex)
        self.protocol = protocol
        self.base_order = base_order
        bohr = energies[:, None] - energies[None, :]
        self._mask = np.abs(self.v_op) > 0.0
        vals = np.round(bohr[self._mask], 12)
        self._unique, self._inverse = np.unique(vals, return_inverse=True)

    def profile(self, ts) -> np.ndarray:
        """Stack of I(t) matrices for the sorted time grid ts."""
        lam = self.protocol.value
        transforms = cumulative_oscillatory_transform(lam, self._unique, ts,
                                                      self.base_order)
        n = self.energies.size
        out = np.zeros((len(ts), n, n), dtype=complex)
        for k in range(len(ts)):
            mat = np.zeros((n, n), dtype=complex)
            mat[self._mask] = self.v_op[self._mask] * transforms[k][self._inverse]
            out[k] = mat
        return out

    def at(self, t: float) -> np.ndarray:
        return self.profile(np.array([t]))[0]


def compute_I(energies, v_op, protocol: DriveProtocol, t: float,
              base_order: int = 16) -> np.ndarray:
    """One-shot first-order kernel I(t)."""
    return DysonKernel(energies, v_op, protocol, base_order).at(t)


def compute_N(i_matrix: np.ndarray, phi_t: np.ndarray) -> float:
    """Normalisation of the truncated series state.

    N = 1 + i <I^dag - I> + <I^dag I> over the free trajectory; the
    first-order term is twice the imaginary part of a diagonal
    expectation, hence real.
    """
    i_phi = i_matrix @ phi_t
    mean_i = complex(np.vdot(phi_t, i_phi))
    n_value = 1.0 + 2.0 * mean_i.imag + float(np.vdot(i_phi, i_phi).real)
    if n_value <= 0.0:
        raise PerturbationRangeError("normalisation went nonpositive; drive too strong")
    return n_value


def compute_rho_lin(i_matrix: np.ndarray, phi_t: np.ndarray,
                    n_value: float | None = None):
    """Free part and first-order correction of the density operator.

    rho_in = |phi><phi| / N and delta_rho = i (rho_in I^dag - I rho_in),
    symmetrised against round-off.  phi_t must be the freely evolved pure
    state; mixed inputs are rejected upstream.
    """
    if n_value is None:
        n_value = compute_N(i_matrix, phi_t)
    rho_in = np.outer(phi_t, phi_t.conj()) / n_value
    i_phi = i_matrix @ phi_t
    delta_rho = 1j * (np.outer(phi_t, i_phi.conj()) - np.outer(i_phi, phi_t.conj())) / n_value
    delta_rho = 0.5 * (delta_rho + delta_rho.conj().T)
    return rho_in, delta_rho


def ensure_pure_vector(state) -> np.ndarray:
    """Amplitude vector of a pure input; mixed density matrices are rejected."""
    if isinstance(state, StateVector):
        return state.amplitudes
    arr = np.asarray(state, dtype=complex)
    if arr.ndim == 1:
        return arr
    if arr.ndim == 2:
        ev, vec = np.linalg.eigh(arr)
        if abs(ev[-1] - 1.0) > 1e-10 or np.any(np.abs(ev[:-1]) > 1e-10):
            raise UnsupportedInputError("initial state must be pure")
        return vec[:, -1]
    raise UnsupportedInputError("initial state must be a vector or density matrix")


@dataclass(frozen=True)
class DysonState:
    """Assembled first-order state at one time."""

    t: float
    i_matrix: np.ndarray
    n_value: float
    rho_in: np.ndarray
    delta_rho: np.ndarray
    basis: Basis | None = None

    def __post_init__(self):
        if self.n_value <= 0:
            raise PerturbationRangeError("normalisation must be positive")
        for name, m in (("rho_in", self.rho_in), ("delta_rho", self.delta_rho)):
            if np.max(np.abs(m - m.conj().T)) > 1e-12:
                raise InvariantError(f"{name} is not hermitian")

    def trace_deviation(self) -> float:
        return abs(float(np.trace(self.rho_in + self.delta_rho).real) - 1.0)


def dyson_state(kernel: DysonKernel, t: float, psi0, basis: Basis | None = None,
                trace_tol: float | None = None) -> DysonState:
    """DysonState at time t from a pure initial state.

    trace_tol defaults to 10 * delta_lambda^2; pass an explicit value for
    strongly scaled couplings where the drive amplitude alone understates
    the perturbation strength.
    """
    psi0 = ensure_pure_vector(psi0)
    phi_t = np.exp(-1j * kernel.energies * t) * psi0
    i_matrix = kernel.at(t)
    n_value = compute_N(i_matrix, phi_t)
    rho_in, delta_rho = compute_rho_lin(i_matrix, phi_t, n_value)
    state = DysonState(t=t, i_matrix=i_matrix, n_value=n_value,
                       rho_in=rho_in, delta_rho=delta_rho, basis=basis)
    if trace_tol is None:
        # round-off alone leaves O(eps) on the trace
        trace_tol = max(10.0 * kernel.protocol.delta_lambda**2, 1e-13)
    dev = state.trace_deviation()
    if dev > trace_tol:
        raise InvariantError(
            f"trace of rho_in + delta_rho deviates by {dev:.2e} > {trace_tol:.2e}"
        )
    return state


@dataclass(frozen=True)
class OutcomeLin:
    """Per-outcome linearised measurement data."""

    label: str
    p_in: float
    tr_delta: float
    s_in: float
    ln_term: float  # tr(delta_rho_a ln rho_in_a) restricted to the support
    degenerate: bool

    @property
    def p(self) -> float:
        return self.p_in + self.tr_delta

    @property
    def s_lin(self) -> float:
        return self.s_in - self.tr_delta - self.ln_term


def probs_and_entropy_lin(rho_in: np.ndarray, delta_rho: np.ndarray,
                          setup: MeasurementSetup,
                          support_cutoff: float = 1e-12) -> list[OutcomeLin]:
    """Linearised probabilities and entropies for every outcome.

    The logarithm of the projected free part exists only on its support;
    correction components outside the support enter through the plain
    -tr(delta) term and are excluded from the logarithmic one.  Outcomes
    with vanishing free probability but nonzero correction are flagged
    degenerate rather than raised, so sweeps can record them.
    """
    out = []
    for label, pi in zip(setup.labels, setup.projectors):
        rin_a = pi @ rho_in @ pi
        dr_a = pi @ delta_rho @ pi
        p_in = float(np.trace(rin_a).real)
        tr_delta = float(np.trace(dr_a).real)
        ev, vec = np.linalg.eigh(rin_a)
        mask = ev > support_cutoff
        s_in = float(-np.sum(ev[mask] * np.log(ev[mask]))) if np.any(mask) else 0.0
        ln_term = 0.0
        for lam, v in zip(ev[mask], vec[:, mask].T):
            ln_term += float(np.log(lam) * np.real(v.conj() @ dr_a @ v))
        degenerate = p_in < support_cutoff and abs(tr_delta) > support_cutoff
        out.append(OutcomeLin(label=label, p_in=p_in, tr_delta=tr_delta,
                              s_in=s_in, ln_term=ln_term, degenerate=degenerate))
    return out


def delta_chi_lin(outcomes: list[OutcomeLin], initial: list[tuple[float, float]]) -> float:
    """Linearised information change.

    `initial` carries (p_alpha(0), S(rho_alpha(0))) per outcome from the
    measurement before the drive.
    """
    if len(outcomes) != len(initial):
        raise PreconditionError("initial-outcome data must match outcomes")
    total = 0.0
    for oc, (p0, s0) in zip(outcomes, initial):
        dchi_in = -oc.p_in * oc.s_in + p0 * s0
        total += dchi_in + oc.tr_delta * (oc.p_in - oc.s_in) + oc.p_in * oc.ln_term
    return total


def e_tau_lin(kernel: DysonKernel, psi0, tau: float, nodes: int = 96,
              delta_rho_at_final: bool = False) -> float:
    """Time-averaged Hilbert-Schmidt norm of the linearised dynamics.

    Integrand at each node: || H0 rho_in(t) + lambda(t) V rho_in(t)
    + H0 delta_rho ||_2, with delta_rho evaluated at the node time by
    default (the final-time variant is kept behind a flag).  Everything
    is assembled from rank-one outer products of the free trajectory.
    """
    psi0 = ensure_pure_vector(psi0)
    ts, ws = gl_nodes(0.0, tau, nodes)
    grid = np.append(ts, tau)
    profiles = kernel.profile(grid)
    h0d = kernel.energies
    lam = kernel.protocol.value

    if delta_rho_at_final:
        phi_tau = np.exp(-1j * h0d * tau) * psi0
        n_tau = compute_N(profiles[-1], phi_tau)
        _, dr_fixed = compute_rho_lin(profiles[-1], phi_tau, n_tau)

    total = 0.0
    for t, w, i_t in zip(ts, ws, profiles[:-1]):
        phi = np.exp(-1j * h0d * t) * psi0
        n_t = compute_N(i_t, phi)
        i_phi = i_t @ phi
        h_phi = h0d * phi
        m = np.outer(h_phi + lam(t) * (kernel.v_op @ phi), phi.conj()) / n_t
        if delta_rho_at_final:
            m = m + (h0d[:, None] * dr_fixed)
        else:
            m = m + 1j * (np.outer(h_phi, i_phi.conj())
                          - np.outer(h0d * i_phi, phi.conj())) / n_t
        total += w * float(np.sqrt(np.sum(np.abs(m) ** 2)))
    value = total / tau
    if value <= 0.0:
        raise DegenerateDynamicsError("linearised dynamics carry no energy resource")
    return value


def qsl_lin(rho_in_tau: np.ndarray, delta_rho_tau: np.ndarray, psi0,
            e_tau_value: float) -> tuple[float, float]:
    """Small-angle speed-limit time and its overlap bracket.

    Returns (tau_qsl, bracket) with
    bracket = 1 - <psi0|rho_in|psi0> - <psi0|delta_rho|psi0>.
    """
    if e_tau_value <= 0:
        raise DegenerateDynamicsError("e_tau must be positive")
    psi0 = ensure_pure_vector(psi0)
    bracket = 1.0 - float(np.real(psi0.conj() @ rho_in_tau @ psi0)) \
        - float(np.real(psi0.conj() @ delta_rho_tau @ psi0))
    return bracket / (2.0 * e_tau_value), bracket


def omega_lin(dchi: float, bracket: float, e_tau_value: float):
    """Learning rate 2 E (delta chi) / bracket with degeneracies flagged."""
    tau_qsl = bracket / (2.0 * e_tau_value)
    return omega_of(dchi, tau_qsl)


@dataclass(frozen=True)
class LinearObservables:
    """Sweep quantities of the linearised route at final time tau."""

    tau: float
    delta_chi: float
    tau_qsl: float
    omega: float | None
    status: str
    fidelity: float
    e_tau: float
    probabilities: tuple[float, ...]
    n_value: float
    trace_deviation: float

    @property
    def record(self) -> LearningRecord:
        return LearningRecord(self.tau, self.delta_chi, self.tau_qsl,
                              self.omega, "lin", self.status)


def linear_observables(basis: Basis, v_op: np.ndarray, protocol: DriveProtocol,
                       tau: float, initial_level: int = 0,
                       setup: MeasurementSetup | None = None,
                       nodes: int = 96, base_order: int = 16,
                       delta_rho_at_final: bool = False,
                       trace_tol: float | None = None) -> LinearObservables:
    """Full linearised sweep record for an eigenstate start."""
    if initial_level >= basis.dimension:
        raise PreconditionError(
            f"initial level {initial_level} outside the {basis.dimension}-state basis"
        )
    if setup is None:
        setup = parity_projectors(basis)
    if setup.convention != UNNORMALIZED:
        raise UnsupportedInputError(
            "the linearised expansion is derived for unnormalized post-measurement blocks"
        )
    psi0 = np.zeros(basis.dimension, dtype=complex)
    psi0[initial_level] = 1.0

    kernel = DysonKernel(basis.energies, v_op, protocol, base_order)
    state = dyson_state(kernel, tau, psi0, basis, trace_tol)
    outcomes = probs_and_entropy_lin(state.rho_in, state.delta_rho, setup)

    rho0 = np.outer(psi0, psi0.conj())
    initial = []
    for pi in setup.projectors:
        p0 = float(np.trace(pi @ rho0).real)
        block = pi @ rho0 @ pi
        s0 = von_neumann_entropy(block) if p0 > 1e-12 else 0.0
        initial.append((p0, s0))

    dchi = delta_chi_lin(outcomes, initial)
    e_val = e_tau_lin(kernel, psi0, tau, nodes, delta_rho_at_final)
    tau_qsl, bracket = qsl_lin(state.rho_in, state.delta_rho, psi0, e_val)
    om, status = omega_of(dchi, tau_qsl)
    if any(oc.degenerate for oc in outcomes) and status == STATUS_OK:
        status = STATUS_DEGENERATE

    ovl_in = float(np.real(psi0.conj() @ state.rho_in @ psi0))
    fidelity = float(np.sqrt(ovl_in)
                     + 0.5 * np.real(psi0.conj() @ state.delta_rho @ psi0) / np.sqrt(ovl_in))
    return LinearObservables(tau=tau, delta_chi=dchi, tau_qsl=tau_qsl, omega=om,
                             status=status, fidelity=fidelity, e_tau=e_val,
                             probabilities=tuple(oc.p for oc in outcomes),
                             n_value=state.n_value,
                             trace_deviation=state.trace_deviation())
