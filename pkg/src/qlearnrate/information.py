"""Information-theoretic layer: accessible-information change, speed-limit
time, learning rate, and the transmission-rate bounds.

Two conventions for the post-measurement state are supported:

* ``unnormalized`` (default): rho_alpha = Pi rho Pi as produced by the
  measurement back-action, no division by the outcome probability.  This
  is the reading under which pure-state sweeps produce the nonzero,
  nonpositive information change the case studies rely on.
* ``normalized``: rho_alpha / p_alpha, the textbook form, under which the
  accessible information is nonnegative for every valid state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import DegenerateDynamicsError, DomainError, InvariantError, PreconditionError
from .hilbert import (
    EVEN,
    SUPPORT_CUTOFF,
    Basis,
    project,
    schatten_norm,
    von_neumann_entropy,
)
from .quadrature import gl_nodes

UNNORMALIZED = "unnormalized"
NORMALIZED = "normalized"

#: Below this, a rate numerator/denominator counts as vanishing.
RATE_EPS = 1e-14

STATUS_OK = "ok"
STATUS_UNDEFINED = "undefined"
STATUS_DIVERGENT = "divergent"
STATUS_DEGENERATE = "warn:degenerate-outcome"


@dataclass(frozen=True)
class MeasurementSetup:
    """Complete set of orthogonal projectors with outcome labels."""

    projectors: tuple[np.ndarray, ...]
    labels: tuple[str, ...]
    convention: str = UNNORMALIZED

    def __post_init__(self):
        if self.convention not in (UNNORMALIZED, NORMALIZED):
            raise InvariantError(f"unknown convention {self.convention!r}")
        if len(self.projectors) != len(self.labels):
            raise InvariantError("labels must match projectors")
        dim = self.projectors[0].shape[0]
        total = np.zeros((dim, dim), dtype=complex)
        for i, pi in enumerate(self.projectors):
            total += pi
            for pj in self.projectors[i + 1:]:
                if np.max(np.abs(pi @ pj)) > 1e-12:
                    raise InvariantError("projectors are not pairwise orthogonal")
        if np.max(np.abs(total - np.eye(dim))) > 1e-12:
            raise InvariantError("projectors do not sum to the identity")


@dataclass(frozen=True)
class LearningRecord:
    """One sweep row: information change, speed-limit time, rate, method."""

    tau: float
    delta_chi: float
    tau_qsl: float
    omega: float | None
    method: str
    status: str = STATUS_OK

    def __post_init__(self):
        if self.omega is not None and self.tau_qsl > RATE_EPS:
            if abs(self.omega * self.tau_qsl - self.delta_chi) > 1e-9 * max(1.0, abs(self.delta_chi)):
                raise InvariantError("omega * tau_qsl does not reproduce delta_chi")


def parity_projectors(basis: Basis, convention: str = UNNORMALIZED) -> MeasurementSetup:
    """Even/odd projectors onto the alternating-parity eigenbasis."""
    flags = np.array([p == EVEN for p in basis.parity])
    pi_e = np.diag(flags.astype(complex))
    pi_o = np.diag((~flags).astype(complex))
    return MeasurementSetup(projectors=(pi_e, pi_o), labels=("even", "odd"),
                            convention=convention)


def outcome_probabilities(rho: np.ndarray, setup: MeasurementSetup) -> np.ndarray:
    return np.array([np.trace(pi @ rho).real for pi in setup.projectors])


def _outcome_entropy(rho: np.ndarray, pi: np.ndarray, p: float, convention: str,
                     support_cutoff: float) -> float:
    if p <= support_cutoff:
        return 0.0
    block = project(rho, pi)
    if convention == NORMALIZED:
        block = block / p
    return von_neumann_entropy(block, support_cutoff)


def holevo_chi(rho: np.ndarray, setup: MeasurementSetup,
               support_cutoff: float = SUPPORT_CUTOFF) -> float:
    """Total entropy minus probability-weighted post-measurement entropies."""
    probs = outcome_probabilities(rho, setup)
    chi = von_neumann_entropy(rho, support_cutoff)
    for pi, p in zip(setup.projectors, probs):
        chi -= p * _outcome_entropy(rho, pi, p, setup.convention, support_cutoff)
    return chi


def delta_chi(rho0: np.ndarray, rho_tau: np.ndarray, setup: MeasurementSetup,
              support_cutoff: float = SUPPORT_CUTOFF) -> float:
    """Change of accessible information between the two measurements."""
    out = 0.0
    for pi in setup.projectors:
        p0 = np.trace(pi @ rho0).real
        pt = np.trace(pi @ rho_tau).real
        out += -pt * _outcome_entropy(rho_tau, pi, pt, setup.convention, support_cutoff)
        out += p0 * _outcome_entropy(rho0, pi, p0, setup.convention, support_cutoff)
    return out


def delta_chi_pure_from_probs(p_tau, p0) -> float:
    """Pure-state reduction under the unnormalized convention.

    Projecting a pure state leaves a single eigenvalue p per outcome, so
    each entropy is -p ln p and the information change collapses to
    sum p_tau^2 ln p_tau - sum p0^2 ln p0.
    """
    def term(p):
        p = np.asarray(p, dtype=float)
        mask = p > SUPPORT_CUTOFF
        return float(np.sum(p[mask] ** 2 * np.log(p[mask])))

    return term(p_tau) - term(p0)


def qsl_time(psi0: np.ndarray, rho_tau: np.ndarray, e_tau: float) -> float:
    """Geometric speed-limit time (1 - <psi0|rho_tau|psi0>) / (2 E_tau).

    The squared-sine of the angle between a pure start and the evolved
    state is exactly one minus their overlap, so no arccos round trip is
    needed.
    """
    if e_tau <= 0:
        raise DegenerateDynamicsError("e_tau must be positive")
    overlap = float(np.real(psi0.conj() @ rho_tau @ psi0))
    return (1.0 - overlap) / (2.0 * e_tau)


def e_tau(trajectory, hamiltonian, tau: float, p=2, nodes: int = 96) -> float:
    """Time-averaged Schatten norm of rho(t) H(t) over [0, tau].

    `trajectory(t)` must return a density matrix and `hamiltonian(t)` the
    generator at time t; Gauss-Legendre in time.
    """
    ts, ws = gl_nodes(0.0, tau, nodes)
    total = 0.0
    for t, w in zip(ts, ws):
        total += w * schatten_norm(trajectory(t) @ hamiltonian(t), p)
    return total / tau


def omega(delta_chi_value: float, tau_qsl: float):
    """Learning rate delta_chi / tau_qsl with degenerate cases flagged.

    Returns (omega | None, status).  The sign of delta_chi is preserved.
    """
    if abs(delta_chi_value) < RATE_EPS and tau_qsl < RATE_EPS:
        return None, STATUS_UNDEFINED
    if tau_qsl < RATE_EPS:
        return None, STATUS_DIVERGENT
    return delta_chi_value / tau_qsl, STATUS_OK


def bremermann_bekenstein_rate(energy: float) -> float:
    """Transmission-rate ceiling pi E / ln 2 in bits per unit time (hbar = 1)."""
    if energy < 0:
        raise DomainError("energy must be nonnegative")
    return math.pi * energy / math.log(2.0)


@dataclass(frozen=True)
class ThermalCheck:
    delta_chi_magnitude: float
    beta_delta_e: float
    tau_qsl: float | None
    bound_value: float | None


def thermal_bound_check(beta: float, h: np.ndarray, setup: MeasurementSetup,
                        rho0: np.ndarray, rho_tau: np.ndarray,
                        h_tau: np.ndarray | None = None,
                        tau_qsl: float | None = None,
                        block_tol: float = 1e-8) -> ThermalCheck:
    """Verify the thermal form of the information change.

    Precondition: each post-measurement block of rho0 (rho_tau) equals
    exp(-beta H_alpha) built from h (h_tau, defaulting to h) on the
    support of its projector.  Returns |delta chi| evaluated through the
    entropies and through beta-weighted energy differences; the two must
    agree, and the rate bound beta |dE| / tau_qsl is attached when a
    speed-limit time is supplied.
    """
    if h_tau is None:
        h_tau = h
    for label, pi in zip(setup.labels, setup.projectors):
        idx = np.where(np.abs(np.diag(pi)) > 0.5)[0]
        for rho, ham in ((rho0, h), (rho_tau, h_tau)):
            gibbs = expm(-beta * ham[np.ix_(idx, idx)])
            block = rho[np.ix_(idx, idx)]
            if np.max(np.abs(block - gibbs)) > block_tol:
                raise PreconditionError(
                    f"outcome {label!r}: state block is not exp(-beta H_block)"
                )

    dchi = delta_chi(rho0, rho_tau, setup)
    acc = 0.0
    for pi in setup.projectors:
        for rho, ham, sign in ((rho_tau, h_tau, 1.0), (rho0, h, -1.0)):
            h_a = pi @ ham @ pi
            p = np.trace(pi @ rho).real
            mean_h = np.trace(project(rho, pi) @ h_a).real
            acc += sign * p * mean_h
    beta_de = beta * acc
    if abs(abs(dchi) - abs(beta_de)) > 1e-8 * max(1.0, abs(beta_de)):
        raise InvariantError(
            f"|delta chi| = {abs(dchi):.3e} does not match beta |dE| = {abs(beta_de):.3e}"
        )
    bound = abs(beta_de) / tau_qsl if tau_qsl else None
    return ThermalCheck(abs(dchi), beta_de, tau_qsl, bound)
