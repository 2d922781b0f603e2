import math

import numpy as np
import pytest

from qlearnrate import (
    ConfigurationError,
    DomainError,
    DriveProtocol,
    HarmonicSystem,
    PoschlTellerSystem,
    build_ho,
    build_pt,
    lambda_at,
    pt_bound_energies_analytic,
)
from qlearnrate.hilbert import EVEN, ODD


def test_exponential_ramp_endpoints():
    p = DriveProtocol("exponential", 0.05, 2.0)
    assert lambda_at(p, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert lambda_at(p, 2.0) == pytest.approx(0.05, abs=1e-15)


def test_linear_ramp_midpoint():
    p = DriveProtocol("linear", 0.05, 2.0)
    assert lambda_at(p, 1.0) == pytest.approx(0.025, abs=1e-15)


def test_ramp_domain_error():
    p = DriveProtocol("linear", 0.05, 2.0)
    with pytest.raises(DomainError):
        p.value(2.5)
    with pytest.raises(DomainError):
        p.value(-0.1)


def test_ramps_monotone():
    ts = np.linspace(0.0, 3.0, 500)
    for kind in ("exponential", "linear"):
        vals = DriveProtocol(kind, 0.07, 3.0).value(ts)
        assert np.all(np.diff(vals) >= 0)


def test_tabulated_protocol_roundtrip():
    tau = 2.0
    ts = np.linspace(0.0, tau, 41)
    ref = DriveProtocol("exponential", 0.05, tau)
    tab = DriveProtocol("tabulated", 0.05, tau, samples=(ts, ref.value(ts)))
    probe = np.linspace(0.0, tau, 101)
    assert np.max(np.abs(tab.value(probe) - ref.value(probe))) < 1e-6


def test_ho_ladder_spectrum():
    basis, h0, x, v = build_ho(HarmonicSystem(omega0=1.0, n_max=8))
    assert basis.energies[0] == pytest.approx(0.5, abs=1e-14)
    assert basis.energies[1] == pytest.approx(1.5, abs=1e-14)
    assert x[0, 1] == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-14)
    assert np.allclose(v, -x)


def test_ho_level_spacing_heavy():
    basis, _, _, _ = build_ho(HarmonicSystem(omega0=18.65, n_max=6))
    assert basis.energies[1] - basis.energies[0] == pytest.approx(18.65, abs=1e-12)


def test_ho_x_zero_diagonal_opposite_parity():
    _, _, x, _ = build_ho(HarmonicSystem(omega0=1.0, n_max=10))
    assert np.max(np.abs(np.diag(x))) == 0.0
    same_parity = [abs(x[m, n]) for m in range(10) for n in range(10) if (m - n) % 2 == 0]
    assert max(same_parity) == 0.0


def test_pt_production_grid_spectrum(pt20_parts):
    basis, _, x, v = pt20_parts
    ref = pt_bound_energies_analytic(20)
    assert basis.dimension == 20
    rel = np.abs((basis.energies - ref) / ref)
    assert np.max(rel[:11]) < 1e-2
    assert basis.energies[0] == pytest.approx(-200.0, rel=1e-4)
    assert basis.energies[10] == pytest.approx(-50.0, rel=2e-3)
    # drive operator carries the coupling constant
    assert np.allclose(v, -x)


def test_pt_single_bound_state():
    from qlearnrate.systems import pt_bound_spectrum

    _, energies, _ = pt_bound_spectrum(PoschlTellerSystem(nu=1, half_width=15.0, n_grid=3000))
    assert energies.size == 1
    assert energies[0] == pytest.approx(-0.5, rel=1e-3)


def test_pt_parity_structure(pt20_parts):
    basis, _, x, _ = pt20_parts
    assert basis.parity == tuple(EVEN if n % 2 == 0 else ODD for n in range(20))
    assert np.max(np.abs(np.diag(x))) < 1e-10
    same_parity = [abs(x[m, n]) for m in range(20) for n in range(20) if (m - n) % 2 == 0]
    assert max(same_parity) < 1e-10
    assert np.max(np.abs(x - x.T)) < 1e-12


def test_pt_grid_convergence_order():
    errs = []
    for ng in (400, 800, 1600):
        basis, _, _, _ = build_pt(PoschlTellerSystem(nu=2, half_width=10.0, n_grid=ng))
        errs.append(abs(basis.energies[0] + 2.0))
    order = math.log(errs[0] / errs[2]) / (2.0 * math.log(2.0))
    assert order > 1.8


def test_pt_rejects_coarse_grid():
    with pytest.raises(ConfigurationError):
        PoschlTellerSystem(nu=2, half_width=0.5, n_grid=3000)
    with pytest.raises(ConfigurationError):
        PoschlTellerSystem(nu=2, half_width=10.0, n_grid=50)
