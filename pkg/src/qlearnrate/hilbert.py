"""Complex linear-algebra substrate over a truncated energy eigenbasis.

States and operators are plain complex numpy arrays; the types here carry
the basis bookkeeping (dimension, energies, parity labels) and the
validated constructors.  Natural units hbar = m = 1 throughout; entropies
are in nats.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvariantError, NegativityError, UnsupportedInputError

#: Eigenvalues with |x| below this are treated as exact zeros in logarithms.
SUPPORT_CUTOFF = 1e-12

EVEN = "even"
ODD = "odd"


@dataclass(frozen=True)
class Basis:
    """Truncated eigenbasis: energies sorted ascending, alternating parity."""

    energies: np.ndarray
    parity: tuple[str, ...]
    kind: str  # "ho-fock" | "pt-bound"

    def __post_init__(self):
        e = np.asarray(self.energies, dtype=float)
        object.__setattr__(self, "energies", e)
        if e.ndim != 1 or e.size < 2:
            raise InvariantError("basis needs at least two levels")
        if np.any(np.diff(e) <= 0):
            raise InvariantError("basis energies must be sorted strictly ascending")
        if len(self.parity) != e.size:
            raise InvariantError("parity labels must match dimension")
        expected = tuple(EVEN if n % 2 == 0 else ODD for n in range(e.size))
        if tuple(self.parity) != expected:
            raise InvariantError("parity labels must alternate starting even")

    @property
    def dimension(self) -> int:
        return int(self.energies.size)


@dataclass(frozen=True)
class StateVector:
    """Complex amplitude vector over a basis.

    `normalized=False` marks intermediate states (pre-renormalization
    Dyson output); everything else must have unit norm to 1e-10.
    """

    amplitudes: np.ndarray
    basis: Basis
    normalized: bool = True

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", a)
        if a.shape != (self.basis.dimension,):
            raise InvariantError("amplitude vector does not match basis dimension")
        if self.normalized and abs(np.vdot(a, a).real - 1.0) > 1e-10:
            raise InvariantError(
                f"state norm^2 deviates from 1 by {abs(np.vdot(a, a).real - 1.0):.2e}"
            )

    def density(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


def check_hermitian(a: np.ndarray, tol: float = 1e-12, what: str = "operator") -> None:
    dev = np.max(np.abs(a - a.conj().T))
    if dev > tol:
        raise InvariantError(f"{what} is not hermitian (max |A - A^dag| = {dev:.2e})")


def check_density(rho: np.ndarray, trace_tol: float = 1e-12,
                  neg_tol: float = 1e-10) -> None:
    """Validate a density operator: hermitian, PSD up to neg_tol, unit trace."""
    check_hermitian(rho, 1e-12, "density operator")
    ev = np.linalg.eigvalsh(rho)
    if ev[0] < -neg_tol:
        raise NegativityError(f"density operator has eigenvalue {ev[0]:.2e}")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > trace_tol:
        raise InvariantError(f"density trace deviates from 1 by {abs(tr - 1.0):.2e}")


def check_projector(pi: np.ndarray, tol: float = 1e-12) -> None:
    check_hermitian(pi, tol, "projector")
    if schatten_norm(pi @ pi - pi, 2) > tol:
        raise InvariantError("projector is not idempotent")


def von_neumann_entropy(a: np.ndarray, support_cutoff: float = SUPPORT_CUTOFF) -> float:
    """-sum lam ln lam over eigenvalues above the support cutoff (nats).

    Accepts unnormalized positive-semidefinite input: sub-unit trace simply
    weights fewer/smaller eigenvalues, which is what the post-measurement
    entropies need.  Eigenvalues in [-cutoff, cutoff] contribute zero
    (0 ln 0 = 0 convention); anything below -cutoff is an error.
    """
    check_hermitian(a, max(1e-12, 10 * support_cutoff), "entropy argument")
    ev = np.linalg.eigvalsh(a)
    if ev[0] < -support_cutoff:
        raise NegativityError(
            f"entropy argument has eigenvalue {ev[0]:.2e} < -{support_cutoff:.0e}"
        )
    lam = ev[ev > support_cutoff]
    return float(-np.sum(lam * np.log(lam)))


def schatten_norm(a: np.ndarray, p) -> float:
    """Schatten p-norm (tr |A|^p)^(1/p) for p in {1, 2, inf}."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise UnsupportedInputError("schatten_norm expects a square matrix")
    if p == 2:
        # Frobenius form; no decomposition needed.
        return float(np.sqrt(np.sum(np.abs(a) ** 2)))
    sv = np.linalg.svd(a, compute_uv=False)
    if p == 1:
        return float(np.sum(sv))
    if p in (np.inf, "inf"):
        return float(sv[0])
    raise UnsupportedInputError(f"unsupported Schatten order {p!r}")


def project(rho: np.ndarray, pi: np.ndarray) -> np.ndarray:
    """Unnormalized post-measurement block Pi rho Pi."""
    if rho.shape != pi.shape:
        raise UnsupportedInputError("projector and state dimensions differ")
    return pi @ rho @ pi
