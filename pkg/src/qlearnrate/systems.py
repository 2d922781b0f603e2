"""Case-study systems and drive schedules.

Two driven Hamiltonians H(t) = H0 + lambda(t) * V_op:

* harmonic oscillator in the number basis, V_op = -omega0^2 x
* sech^2 well diagonalised on a grid, bound states only, V_op = -eta x

and the two ramp schedules (exponential / linear) plus a tabulated variant.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import eigh_tridiagonal

from .errors import ConfigurationError, DomainError, UnsupportedDriveError
from .hilbert import EVEN, ODD, Basis

EXPONENTIAL = "exponential"
LINEAR = "linear"
TABULATED = "tabulated"


@dataclass(frozen=True)
class DriveProtocol:
    """Ramp lambda(t) with lambda(0) = 0 and lambda(tau) = delta_lambda."""

    kind: str
    delta_lambda: float
    tau: float
    samples: tuple | None = None  # (times, values) for the tabulated kind

    def __post_init__(self):
        if self.delta_lambda <= 0:
            raise ConfigurationError("delta_lambda must be positive")
        if self.tau <= 0:
            raise ConfigurationError("tau must be positive")
        if self.kind == TABULATED:
            if self.samples is None:
                raise ConfigurationError("tabulated protocol needs samples")
            t, v = (np.asarray(x, dtype=float) for x in self.samples)
            if t[0] != 0.0 or abs(t[-1] - self.tau) > 1e-12:
                raise ConfigurationError("tabulated times must span [0, tau]")
            if abs(v[0]) > 1e-12 or abs(v[-1] - self.delta_lambda) > 1e-9:
                raise ConfigurationError("tabulated endpoints must be 0 and delta_lambda")
            object.__setattr__(self, "_spline", CubicSpline(t, v))
        elif self.kind not in (EXPONENTIAL, LINEAR):
            raise UnsupportedDriveError(f"unknown protocol kind {self.kind!r}")

    def value(self, t):
        """lambda(t); domain [0, tau]."""
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr < -1e-12) or np.any(t_arr > self.tau * (1 + 1e-12)):
            raise DomainError(f"t outside [0, {self.tau}]")
        if self.kind == EXPONENTIAL:
            out = self.delta_lambda * (1.0 - np.exp(t_arr / self.tau)) / (1.0 - np.e)
        elif self.kind == LINEAR:
            out = self.delta_lambda * t_arr / self.tau
        else:
            out = self._spline(t_arr)
        return out if np.ndim(t) else float(out)

    def transform_closed(self, omega: float, t: float) -> complex:
        """Closed form of integral_0^t lambda(s) e^{i omega s} ds.

        Available for the exponential and linear ramps; used as an
        independent cross-check of the quadrature path.
        """
        if t == 0.0:
            return 0.0
        if self.kind == LINEAR:
            if abs(omega) < 1e-14:
                return self.delta_lambda * t * t / (2.0 * self.tau)
            iw = 1j * omega
            return (self.delta_lambda / self.tau) * (
                t * np.exp(iw * t) / iw - (np.exp(iw * t) - 1.0) / iw**2
            )
        if self.kind == EXPONENTIAL:
            c = self.delta_lambda / (1.0 - np.e)
            if abs(omega) < 1e-14:
                return c * (t - self.tau * np.expm1(t / self.tau))
            iw = 1j * omega
            r = 1.0 / self.tau + iw
            return c * ((np.exp(iw * t) - 1.0) / iw - (np.exp(r * t) - 1.0) / r)
        raise UnsupportedDriveError("closed form only for exponential/linear ramps")


def lambda_at(protocol: DriveProtocol, t) -> float:
    return protocol.value(t)


@dataclass(frozen=True)
class HarmonicSystem:
    """Number-basis oscillator; drive couples through -omega0^2 * x."""

    omega0: float
    n_max: int = 60
    truncation_tol: float = 1e-10
    energy_shift: float = 0.0

    def __post_init__(self):
        if self.omega0 <= 0:
            raise ConfigurationError("omega0 must be positive")
        if self.n_max < 2:
            raise ConfigurationError("n_max must be >= 2")


@dataclass(frozen=True)
class PoschlTellerSystem:
    """sech^2 well with nu bound states; grid sets the discretisation."""

    nu: int
    eta: float = 1.0
    half_width: float = 15.0
    n_grid: int = 3000

    def __post_init__(self):
        if self.nu < 1 or int(self.nu) != self.nu:
            raise ConfigurationError("nu must be a positive integer")
        if self.n_grid < 100 or self.half_width <= 1.0:
            raise ConfigurationError("grid too coarse to resolve the well")


def build_ho(system: HarmonicSystem):
    """Basis, H0, X, V_op for the oscillator.

    H0 is diagonal with E_n = omega0 (n + 1/2) + energy_shift;
    X_{n,n+1} = sqrt((n+1) / (2 omega0)); V_op = -omega0^2 X.
    """
    n = np.arange(system.n_max)
    energies = system.omega0 * (n + 0.5) + system.energy_shift
    parity = tuple(EVEN if k % 2 == 0 else ODD for k in n)
    basis = Basis(energies=energies, parity=parity, kind="ho-fock")
    h0 = np.diag(energies.astype(complex))
    x = np.zeros((system.n_max, system.n_max))
    for k in range(system.n_max - 1):
        x[k, k + 1] = x[k + 1, k] = np.sqrt((k + 1) / (2.0 * system.omega0))
    v_op = -system.omega0**2 * x
    return basis, h0, x.astype(complex), v_op.astype(complex)


def pt_bound_spectrum(system: PoschlTellerSystem):
    """Bound energies and grid eigenvectors of the discretised well."""
    L, ng = system.half_width, system.n_grid
    xg = np.linspace(-L, L, ng)
    h = xg[1] - xg[0]
    vpot = -0.5 * system.nu * (system.nu + 1) / np.cosh(xg) ** 2
    diag = 1.0 / h**2 + vpot
    off = np.full(ng - 1, -0.5 / h**2)
    energies, vecs = eigh_tridiagonal(diag, off, select="v", select_range=(-np.inf, 0.0))
    return xg, energies, vecs


def build_pt(system: PoschlTellerSystem):
    """Basis, H0, X, V_op for the sech^2 well, bound subspace only.

    Second-order central differences on a uniform grid over
    [-half_width, half_width]; only negative-energy eigenstates are kept.
    X matrix elements come from trapezoidal quadrature of the grid
    eigenfunctions; parity is read off the grid symmetry.
    """
    xg, energies, vecs = pt_bound_spectrum(system)
    nb = energies.size
    if nb < 2:
        raise ConfigurationError(
            f"only {nb} bound state(s) found; enlarge the well or the grid"
        )

    # Grid eigenvectors are orthonormal in the discrete inner product, so
    # integral x psi_m psi_n dx reduces to a plain weighted sum (the
    # trapezoid endpoint corrections vanish with the wavefunctions).
    x = np.empty((nb, nb))
    weighted = xg[:, None] * vecs
    x[:, :] = vecs.T @ weighted

    parity = []
    for k in range(nb):
        v = vecs[:, k]
        parity.append(EVEN if np.sum(np.abs(v - v[::-1])) < np.sum(np.abs(v + v[::-1])) else ODD)
    expected = tuple(EVEN if k % 2 == 0 else ODD for k in range(nb))
    if tuple(parity) != expected:
        raise ConfigurationError("grid eigenstates do not alternate in parity")

    basis = Basis(energies=energies, parity=expected, kind="pt-bound")
    h0 = np.diag(energies.astype(complex))
    v_op = -system.eta * x
    return basis, h0, x.astype(complex), v_op.astype(complex)


def pt_bound_energies_analytic(nu: int) -> np.ndarray:
    """Reference spectrum -(nu - n)^2 / 2 of the sech^2 well."""
    return np.array([-((nu - n) ** 2) / 2.0 for n in range(nu)])
