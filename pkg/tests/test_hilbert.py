import math

import numpy as np
import pytest

from qlearnrate import (
    Basis,
    InvariantError,
    NegativityError,
    StateVector,
    project,
    schatten_norm,
    von_neumann_entropy,
)
from qlearnrate.hilbert import EVEN, ODD


def _rand_pure(rng, n):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def test_entropy_maximally_mixed_qubit():
    assert von_neumann_entropy(np.eye(2) / 2.0) == pytest.approx(math.log(2.0), abs=1e-12)


def test_entropy_rank_one_projector_is_zero():
    v = np.array([0.6, 0.8j], dtype=complex)
    rho = np.outer(v, v.conj())
    assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-12)


def test_entropy_unnormalized_single_eigenvalue():
    # trace-0.3 rank-one operator has the lone eigenvalue 0.3
    v = np.array([1.0, 0.0], dtype=complex)
    rho = 0.3 * np.outer(v, v.conj())
    assert von_neumann_entropy(rho) == pytest.approx(-0.3 * math.log(0.3), abs=1e-12)


def test_entropy_rejects_non_hermitian():
    with pytest.raises(InvariantError):
        von_neumann_entropy(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))


def test_entropy_rejects_negative_eigenvalue():
    with pytest.raises(NegativityError):
        von_neumann_entropy(np.diag([1.0, -1e-6]).astype(complex))


def test_entropy_unitary_invariance(rng):
    a = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    rho = a @ a.conj().T
    rho /= np.trace(rho).real
    q, _ = np.linalg.qr(rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6)))
    rotated = q @ rho @ q.conj().T
    assert von_neumann_entropy(rotated) == pytest.approx(von_neumann_entropy(rho), abs=1e-9)


def test_schatten_identity_norm():
    assert schatten_norm(np.eye(3), 2) == pytest.approx(math.sqrt(3.0), abs=1e-14)


def test_schatten_diag_values():
    a = np.diag([3.0, -4.0])
    assert schatten_norm(a, 1) == pytest.approx(7.0, abs=1e-12)
    assert schatten_norm(a, np.inf) == pytest.approx(4.0, abs=1e-12)


def test_schatten_pure_state_h_identity(rng):
    # ||rho H||_2 = sqrt(<H^2>) for rho = |psi><psi|
    n = 12
    h = rng.standard_normal((n, n))
    h = h + h.T
    for _ in range(100):
        psi = _rand_pure(rng, n)
        rho = np.outer(psi, psi.conj())
        lhs = schatten_norm(rho @ h, 2)
        rhs = math.sqrt(float(np.real(psi.conj() @ h @ h @ psi)))
        assert lhs == pytest.approx(rhs, abs=1e-10)


def test_schatten_two_squared_matches_singular_values(rng):
    a = rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9))
    sv = np.linalg.svd(a, compute_uv=False)
    assert schatten_norm(a, 2) ** 2 == pytest.approx(float(np.sum(sv**2)), abs=1e-10)


def _qubit_parity():
    return np.diag([1.0, 0.0]).astype(complex), np.diag([0.0, 1.0]).astype(complex)


def test_project_even_state_fixed():
    pe, po = _qubit_parity()
    rho = np.diag([1.0, 0.0]).astype(complex)
    assert np.allclose(project(rho, pe), rho)
    assert np.allclose(project(rho, po), 0.0)


def test_project_kills_off_diagonals():
    pe, po = _qubit_parity()
    plus = np.full((2, 2), 0.5, dtype=complex)
    blk = project(plus, pe)
    assert np.allclose(blk, np.diag([0.5, 0.0]))


def test_project_trace_equals_outcome_probability(rng):
    pe, po = _qubit_parity()
    psi = _rand_pure(rng, 2)
    rho = np.outer(psi, psi.conj())
    for pi in (pe, po):
        assert np.trace(project(rho, pi)).real == pytest.approx(
            np.trace(pi @ rho).real, abs=1e-12)


def test_project_preserves_hermiticity_and_positivity(rng):
    n = 8
    pi = np.diag((np.arange(n) % 2 == 0).astype(complex))
    for _ in range(20):
        psi = _rand_pure(rng, n)
        blk = project(np.outer(psi, psi.conj()), pi)
        assert np.max(np.abs(blk - blk.conj().T)) < 1e-12
        assert np.linalg.eigvalsh(blk)[0] > -1e-12


def test_basis_invariants():
    with pytest.raises(InvariantError):
        Basis(energies=np.array([1.0, 0.5]), parity=(EVEN, ODD), kind="ho-fock")
    with pytest.raises(InvariantError):
        Basis(energies=np.array([0.5, 1.5]), parity=(ODD, EVEN), kind="ho-fock")


def test_state_vector_norm_enforced(ho18_parts):
    basis = ho18_parts[0]
    bad = np.zeros(18, dtype=complex)
    bad[0] = 0.9
    with pytest.raises(InvariantError):
        StateVector(bad, basis)
    StateVector(bad, basis, normalized=False)  # explicitly unnormalized is fine
