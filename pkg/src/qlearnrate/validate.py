"""Invariant suite behind the `validate` CLI subcommand.

Every module's structural invariants are exercised at pinned small sizes
with a measured margin, so a fresh checkout can be certified in seconds
to a couple of minutes.  Checks are deterministic (seeded randomness).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .exact_ho import (
    ORDER_INTERACTION,
    ORDER_LITERAL,
    QuadratureSpec,
    exact_observables,
    exact_propagate,
    husimi_coefficients,
    husimi_matrix,
)
from .hilbert import StateVector, project, schatten_norm, von_neumann_entropy
from .information import (
    NORMALIZED,
    UNNORMALIZED,
    holevo_chi,
    parity_projectors,
)
from .oracle import StepPlan, propagate
from .perturbation import DysonKernel, compute_N, dyson_state, linear_observables
from .systems import (
    EXPONENTIAL,
    LINEAR,
    DriveProtocol,
    HarmonicSystem,
    PoschlTellerSystem,
    build_ho,
    build_pt,
    pt_bound_energies_analytic,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    margin: float   # how far inside the tolerance the measurement landed
    detail: str
    passed: bool


def _result(name: str, measured: float, tol: float, detail: str = "") -> CheckResult:
    note = f"measured {measured:.3e} vs tol {tol:.0e}"
    if detail:
        note = f"{detail}; {note}"
    return CheckResult(name=name, margin=tol - measured, detail=note,
                       passed=bool(measured <= tol))


def _random_pure(rng, n):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def _small_ho():
    return HarmonicSystem(omega0=1.0, n_max=18)


def _protocol(kind=EXPONENTIAL, dl=5e-2, tau=2.0):
    return DriveProtocol(kind, dl, tau)


# -- individual checks -------------------------------------------------------

def check_projector_algebra() -> CheckResult:
    basis, _, _, _ = build_ho(HarmonicSystem(1.0, 6))
    setup = parity_projectors(basis)
    pe, po = setup.projectors
    dev = max(np.max(np.abs(pe @ po)), np.max(np.abs(pe + po - np.eye(6))))
    return _result("projector completeness/orthogonality", dev, 1e-12)


def check_entropy_unitary_invariance() -> CheckResult:
    rng = np.random.default_rng(11)
    a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    rho = a @ a.conj().T
    rho = rho / np.trace(rho).real
    q, _ = np.linalg.qr(rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)))
    dev = abs(von_neumann_entropy(q @ rho @ q.conj().T) - von_neumann_entropy(rho))
    return _result("entropy unitary invariance", dev, 1e-9)


def check_schatten_cross() -> CheckResult:
    rng = np.random.default_rng(12)
    a = rng.standard_normal((7, 7)) + 1j * rng.standard_normal((7, 7))
    ev = np.linalg.eigvalsh(a.conj().T @ a)
    dev = abs(schatten_norm(a, 2) ** 2 - float(np.sum(ev)))
    return _result("schatten-2 squared vs eigenvalue sum", dev, 1e-10,
                   "7x7 complex sample")


def check_project_psd() -> CheckResult:
    rng = np.random.default_rng(13)
    basis, _, _, _ = build_ho(HarmonicSystem(1.0, 6))
    setup = parity_projectors(basis)
    worst = 0.0
    for _ in range(25):
        psi = _random_pure(rng, 6)
        rho = np.outer(psi, psi.conj())
        for pi in setup.projectors:
            blk = project(rho, pi)
            worst = max(worst,
                        float(np.max(np.abs(blk - blk.conj().T))),
                        float(max(0.0, -np.linalg.eigvalsh(blk)[0])))
    return _result("projection preserves hermiticity/positivity", worst, 1e-12)


def check_rho_h_identity() -> CheckResult:
    rng = np.random.default_rng(14)
    _, h0, _, v = build_ho(_small_ho())
    h = (h0 + 0.3 * v).real
    worst = 0.0
    for _ in range(100):
        psi = _random_pure(rng, 18)
        rho = np.outer(psi, psi.conj())
        lhs = schatten_norm(rho @ h, 2)
        rhs = math.sqrt(float(np.real(psi.conj() @ (h @ (h @ psi)))))
        worst = max(worst, abs(lhs - rhs))
    return _result("||rho H||_2 = sqrt(<H^2>) over 100 pure states", worst, 1e-10)


def check_normalized_chi_nonnegative() -> CheckResult:
    rng = np.random.default_rng(15)
    basis, _, _, _ = build_ho(HarmonicSystem(1.0, 6))
    setup = parity_projectors(basis, NORMALIZED)
    worst = 0.0
    for _ in range(40):
        a = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        rho = a @ a.conj().T
        rho /= np.trace(rho).real
        worst = min(worst, holevo_chi(rho, setup))
    return _result("normalized-convention chi nonnegative", -worst, 1e-12,
                   "40 random mixed states")


def check_protocol_shapes() -> CheckResult:
    worst = 0.0
    for kind in (EXPONENTIAL, LINEAR):
        p = DriveProtocol(kind, 0.05, 3.0)
        ts = np.linspace(0, 3.0, 400)
        vals = p.value(ts)
        worst = max(worst, abs(vals[0]), abs(vals[-1] - 0.05),
                    float(max(0.0, -np.min(np.diff(vals)))))
    return _result("ramps monotone with exact endpoints", worst, 1e-12)


def check_ho_matrix_elements() -> CheckResult:
    basis, h0, x, _ = build_ho(HarmonicSystem(1.0, 8))
    dev = max(abs(basis.energies[0] - 0.5), abs(basis.energies[1] - 1.5),
              abs(x[0, 1] - 1.0 / math.sqrt(2.0)))
    return _result("oscillator ladder spectrum and x element", dev, 1e-14)


def check_pt_spectrum_small() -> CheckResult:
    basis, _, x, _ = build_pt(PoschlTellerSystem(nu=3, half_width=10.0, n_grid=900))
    ref = pt_bound_energies_analytic(3)
    dev = float(np.max(np.abs(basis.energies - ref)))
    same_parity = max(abs(x[m, n]) for m in range(3) for n in range(3) if (m - n) % 2 == 0)
    return _result("sech^2 well nu=3 spectrum + parity selection",
                   max(dev, same_parity), 5e-3, "second-order grid at h=0.022")


def check_pt_convergence_order() -> CheckResult:
    errs = []
    for ng in (400, 800, 1600):
        basis, _, _, _ = build_pt(PoschlTellerSystem(nu=2, half_width=10.0, n_grid=ng))
        errs.append(abs(basis.energies[0] + 2.0))
    slope = math.log(errs[0] / errs[2]) / (2.0 * math.log(2.0))
    return _result("grid eigenvalue convergence order", 1.8 - slope, 0.0,
                   f"fitted order {slope:.2f} over two halvings")


def check_exact_vs_oracle_ordering() -> CheckResult:
    system = _small_ho()
    protocol = _protocol(tau=2.0)
    _, h0, _, v = build_ho(system)
    psi0 = np.zeros(18, complex)
    psi0[0] = 1.0
    psi_or, _ = propagate(h0, v, protocol, StepPlan(dt=2e-4, t_end=2.0), psi0)
    dev_int = float(np.max(np.abs(
        exact_propagate(system, protocol, 2.0, ordering=ORDER_INTERACTION).amplitudes - psi_or)))
    dev_lit_mod = float(np.max(np.abs(np.abs(
        exact_propagate(system, protocol, 2.0, ordering=ORDER_LITERAL).amplitudes) - np.abs(psi_or))))
    return _result("interaction ordering matches oracle per amplitude",
                   max(dev_int, dev_lit_mod), 1e-6)


def check_w_equals_alpha_sq() -> CheckResult:
    system = _small_ho()
    worst = 0.0
    for kind in (EXPONENTIAL, LINEAR):
        for t in (0.7, 2.0):
            c = husimi_coefficients(system, DriveProtocol(kind, 0.05, 2.0), t)
            worst = max(worst, abs(c.w - abs(c.alpha) ** 2),
                        abs(c.sigma - 2.0 * c.beta))
    return _result("w = |alpha|^2 and sigma = 2 beta", worst, 1e-9)


def check_matrix_route_equality() -> CheckResult:
    system = _small_ho()
    protocol = _protocol(tau=1.5)
    u = husimi_matrix(system, protocol, 1.5)
    # Columns near the truncation edge legitimately leak weight upward;
    # unitarity is exact away from the edge.
    cols = np.sum(np.abs(u[:, :12]) ** 2, axis=0)
    unit = float(np.max(np.abs(cols - 1.0)))
    psi = exact_propagate(system, protocol, 1.5).amplitudes
    dev = float(np.max(np.abs(np.abs(u[:, 0]) - np.abs(psi))))
    return _result("matrix route column-unitary and equal to displacement route",
                   max(dev, unit), 1e-9)


def check_free_limit() -> CheckResult:
    system = _small_ho()
    protocol = DriveProtocol(EXPONENTIAL, 1e-15, 2.0)
    psi = exact_propagate(system, protocol, 2.0).amplitudes
    n = np.arange(18)
    free = np.zeros(18, complex)
    free[0] = np.exp(-1j * 0.5 * 2.0)
    dev = float(np.max(np.abs(psi - free)))
    return _result("vanishing drive recovers free evolution", dev, 1e-12)


def check_oracle_free_phases() -> CheckResult:
    system = _small_ho()
    _, h0, _, v = build_ho(system)
    protocol = DriveProtocol(EXPONENTIAL, 1e-30, 1.0)
    rng = np.random.default_rng(16)
    psi0 = _random_pure(rng, 18)
    psi, _ = propagate(h0, 0.0 * v, protocol, StepPlan(dt=2e-3, t_end=1.0), psi0)
    expected = np.exp(-1j * np.real(np.diag(h0))) * psi0
    return _result("oracle reproduces free phases", float(np.max(np.abs(psi - expected))), 1e-12)


def check_oracle_precondition_surfaces() -> CheckResult:
    system = _small_ho()
    _, h0, _, v = build_ho(system)
    try:
        propagate(h0, v, _protocol(tau=1.0), StepPlan(dt=0.02, t_end=1.0),
                  np.eye(18, dtype=complex)[0])
    except PreconditionError:
        return CheckResult("coarse oracle step surfaces a precondition error",
                           0.0, "raised as required", True)
    return CheckResult("coarse oracle step surfaces a precondition error",
                       -1.0, "no error raised", False)


def check_dyson_norm() -> CheckResult:
    basis, _, _, v = build_ho(_small_ho())
    protocol = _protocol(tau=1.0)
    kernel = DysonKernel(basis.energies, v, protocol)
    psi0 = np.zeros(18, complex)
    psi0[0] = 1.0
    t = 1.0
    phi = np.exp(-1j * basis.energies * t) * psi0
    i_t = kernel.at(t)
    n_val = compute_N(i_t, phi)
    assembled = (phi - 1j * (i_t @ phi)) / math.sqrt(n_val)
    dev = abs(float(np.vdot(assembled, assembled).real) - 1.0)
    return _result("renormalised series state has unit norm", dev, 1e-12)


def check_kernel_closed_form() -> CheckResult:
    basis, _, _, v = build_ho(_small_ho())
    worst = 0.0
    for kind in (EXPONENTIAL, LINEAR):
        protocol = DriveProtocol(kind, 0.05, 1.0)
        kernel = DysonKernel(basis.energies, v, protocol)
        i_t = kernel.at(1.0)
        ref = np.zeros_like(i_t)
        for m in range(18):
            for n in range(18):
                if abs(v[m, n]) > 0:
                    ref[m, n] = v[m, n] * protocol.transform_closed(
                        basis.energies[m] - basis.energies[n], 1.0)
        worst = max(worst, float(np.max(np.abs(i_t - ref))))
    return _result("kernel quadrature matches closed-form transforms", worst, 1e-10)


def check_sudden_limit() -> CheckResult:
    basis, _, _, v = build_ho(_small_ho())
    obs = linear_observables(basis, v, DriveProtocol(EXPONENTIAL, 5e-2, 1e-6), 1e-6)
    dev = max(abs(obs.probabilities[0] - 1.0), abs(obs.probabilities[1]))
    return _result("sudden limit freezes outcome probabilities", dev, 1e-6)


def check_dchi_nonpositive_scan() -> CheckResult:
    worst = -np.inf
    basis, _, _, v = build_ho(HarmonicSystem(1.0, 40))
    for tau in np.linspace(0.4, 16.0, 25):
        for kind in (EXPONENTIAL, LINEAR):
            obs = linear_observables(basis, v, DriveProtocol(kind, 5e-2, tau), tau)
            worst = max(worst, obs.delta_chi)
            ex = exact_observables(HarmonicSystem(1.0, 40), DriveProtocol(kind, 5e-2, tau), tau)
            worst = max(worst, ex.delta_chi)
    pt_basis, _, _, pt_v = build_pt(PoschlTellerSystem(nu=8, half_width=12.0, n_grid=1200))
    for tau in np.linspace(0.4, 10.0, 10):
        obs = linear_observables(pt_basis, pt_v, DriveProtocol(EXPONENTIAL, 0.1, tau), tau,
                                 initial_level=4)
        worst = max(worst, obs.delta_chi)
    return _result("information change nonpositive across sweeps", worst, 1e-12)


def check_learning_rate_roundtrip() -> CheckResult:
    system = _small_ho()
    obs = exact_observables(system, _protocol(tau=3.0), 3.0)
    dev = abs(obs.omega * obs.tau_qsl - obs.delta_chi)
    return _result("rate times speed-limit time recovers delta chi", dev, 1e-9)


ALL_CHECKS = (
    check_projector_algebra,
    check_entropy_unitary_invariance,
    check_schatten_cross,
    check_project_psd,
    check_rho_h_identity,
    check_normalized_chi_nonnegative,
    check_protocol_shapes,
    check_ho_matrix_elements,
    check_pt_spectrum_small,
    check_pt_convergence_order,
    check_exact_vs_oracle_ordering,
    check_w_equals_alpha_sq,
    check_matrix_route_equality,
    check_free_limit,
    check_oracle_free_phases,
    check_oracle_precondition_surfaces,
    check_dyson_norm,
    check_kernel_closed_form,
    check_sudden_limit,
    check_dchi_nonpositive_scan,
    check_learning_rate_roundtrip,
)


def run_all() -> list[CheckResult]:
    return [check() for check in ALL_CHECKS]
