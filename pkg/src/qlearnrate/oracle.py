"""Brute-force reference propagator.

Piecewise-constant stepping: over each step the Hamiltonian is frozen at
the midpoint and its exact exponential applied through a spectral
decomposition, so every step is unitary by construction and the scheme
shares no code or failure mode with the analytic or perturbative routes
it certifies.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eig_banded

from .errors import ConfigurationError, PreconditionError
from .hilbert import Basis
from .information import LearningRecord, delta_chi, omega as omega_of, parity_projectors
from .systems import DriveProtocol

#: Step times the fastest Bohr frequency must stay below this.
MAX_PHASE_PER_STEP = 0.05


@dataclass(frozen=True)
class StepPlan:
    """Uniform stepping plan; t_end must be an integer number of steps."""

    dt: float
    t_end: float
    scheme: str = "midpoint-frozen-H"

    def __post_init__(self):
        if self.dt <= 0:
            raise ConfigurationError("dt must be positive")
        n = self.t_end / self.dt
        if abs(n - round(n)) > 1e-9:
            raise ConfigurationError("t_end must be an integer multiple of dt")
        if self.scheme != "midpoint-frozen-H":
            raise ConfigurationError(f"unknown scheme {self.scheme!r}")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))


def _check_resolution(h0: np.ndarray, dt: float) -> None:
    energies = np.real(np.diag(h0))
    bohr_max = float(np.max(energies) - np.min(energies))
    if dt * bohr_max > MAX_PHASE_PER_STEP + 1e-12:
        raise PreconditionError(
            f"dt * max Bohr frequency = {dt * bohr_max:.3f} exceeds {MAX_PHASE_PER_STEP}"
        )


def _make_stepper(h0: np.ndarray, v_op: np.ndarray, dt: float):
    """Per-step exact unitary application psi -> exp(-i H dt) psi.

    The frozen matrix is decomposed every step; real tridiagonal
    structure (the oscillator case) routes through the banded solver,
    everything else through the dense hermitian one.
    """
    is_real = float(np.max(np.abs(h0.imag)) + np.max(np.abs(v_op.imag))) == 0.0
    pattern = np.abs(h0) + np.abs(v_op)
    n = h0.shape[0]
    tridiagonal = is_real and not np.any(
        np.triu(pattern, 2)  # anything beyond the first superdiagonal
    )
    if tridiagonal:
        d0, dv = np.real(np.diag(h0)), np.real(np.diag(v_op))
        e0 = np.real(np.diag(h0, 1))
        ev_ = np.real(np.diag(v_op, 1))

        def step(lam, psi):
            band = np.vstack([np.r_[0.0, e0 + lam * ev_], d0 + lam * dv])
            w, u = eig_banded(band, check_finite=False)
            return u @ (np.exp(-1j * w * dt) * (u.T @ psi))

        return step
    if is_real:
        h0r, vr = h0.real, v_op.real

        def step(lam, psi):
            w, u = np.linalg.eigh(h0r + lam * vr)
            return u @ (np.exp(-1j * w * dt) * (u.T @ psi))

        return step

    def step(lam, psi):
        w, u = np.linalg.eigh(h0 + lam * v_op)
        return u @ (np.exp(-1j * w * dt) * (u.conj().T @ psi))

    return step


def propagate(h0: np.ndarray, v_op: np.ndarray, protocol: DriveProtocol,
              plan: StepPlan, psi0: np.ndarray,
              sample_times=()) -> tuple[np.ndarray, list[np.ndarray]]:
    """Step psi0 to plan.t_end; returns (final state, samples).

    Samples are the states at the requested times, matched to the nearest
    step boundary (within dt/2).
    """
    _check_resolution(h0, plan.dt)
    step = _make_stepper(h0, v_op, plan.dt)
    psi = np.asarray(psi0, dtype=complex).copy()
    wanted = sorted(sample_times)
    samples: list[np.ndarray] = []
    w_idx = 0
    if wanted and abs(wanted[0]) <= plan.dt / 2:
        samples.append(psi.copy())
        w_idx += 1
    for k in range(plan.n_steps):
        t_mid = (k + 0.5) * plan.dt
        psi = step(protocol.value(min(t_mid, protocol.tau)), psi)
        t = (k + 1) * plan.dt
        while w_idx < len(wanted) and wanted[w_idx] <= t + plan.dt / 2:
            samples.append(psi.copy())
            w_idx += 1
    return psi, samples


def oracle_observables(basis: Basis, h0: np.ndarray, v_op: np.ndarray,
                       protocol: DriveProtocol, tau: float, dt: float,
                       initial_level: int = 0) -> LearningRecord:
    """Sweep quantities computed entirely through brute-force stepping.

    The information change uses the generic matrix route over projected
    states; the energy-resource integral is a trapezoid over the stepped
    trajectory, consistent with the second-order stepping error.
    """
    plan = StepPlan(dt=dt, t_end=tau)
    _check_resolution(h0, plan.dt)
    step = _make_stepper(h0, v_op, plan.dt)
    psi0 = np.zeros(basis.dimension, dtype=complex)
    psi0[initial_level] = 1.0
    psi = psi0.copy()

    def resource_density(t_at, state):
        h = h0 + protocol.value(min(t_at, protocol.tau)) * v_op
        return float(np.linalg.norm(h @ state))

    acc = 0.5 * resource_density(0.0, psi)
    for k in range(plan.n_steps):
        psi = step(protocol.value(min((k + 0.5) * plan.dt, protocol.tau)), psi)
        weight = 0.5 if k == plan.n_steps - 1 else 1.0
        acc += weight * resource_density((k + 1) * plan.dt, psi)
    e_tau = acc * plan.dt / tau

    rho_tau = np.outer(psi, psi.conj())
    setup = parity_projectors(basis)
    dchi = delta_chi(np.outer(psi0, psi0.conj()), rho_tau, setup)
    overlap = float(np.abs(np.vdot(psi0, psi)) ** 2)
    tau_qsl = (1.0 - overlap) / (2.0 * e_tau)
    om, status = omega_of(dchi, tau_qsl)
    return LearningRecord(tau=tau, delta_chi=dchi, tau_qsl=tau_qsl,
                          omega=om, method="oracle", status=status)
