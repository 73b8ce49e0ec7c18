import numpy as np
import pytest

from qmonogamy.errors import NotDensityMatrix, NotHermitian, UnknownLabel
from qmonogamy.linalg import (
    DensityMatrix,
    DimensionList,
    hermitian_eig,
    kron,
    partial_trace,
    validate_density,
)
from qmonogamy.states import ghz_n, haar_random_pure, psi_tilde

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def test_eig_identity():
    vals, vecs = hermitian_eig(np.eye(2))
    assert np.allclose(vals, [1.0, 1.0])
    assert np.allclose(vecs @ vecs.conj().T, np.eye(2))


def test_eig_pauli_z():
    vals, _ = hermitian_eig(Z)
    assert np.allclose(vals, [1.0, -1.0])


def test_eig_random_hermitian_reconstruction():
    rng = np.random.default_rng(3)
    g = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    h = g + g.conj().T
    vals, vecs = hermitian_eig(h)
    assert np.max(np.abs(h - (vecs * vals) @ vecs.conj().T)) <= 1e-9
    assert np.max(np.abs(vecs.conj().T @ vecs - np.eye(8))) <= 1e-9
    assert np.all(np.diff(vals) <= 0)
    # independent route
    assert np.max(np.abs(vals - np.linalg.eigvalsh(h)[::-1])) <= 1e-10


def test_eig_nearly_diagonal_converges():
    # regression: convergence must be detectable below the cancellation
    # floor of the subtraction-based off-norm
    psi = haar_random_pure(DimensionList.qubits(4), seed=9)
    red = partial_trace(psi.to_density(), ("A1", "A2"))
    vals, vecs = hermitian_eig(red.matrix)
    assert np.max(np.abs(red.matrix - (vecs * vals) @ vecs.conj().T)) <= 1e-9


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_kron_identities():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    assert np.array_equal(kron(np.diag([1.0, 2.0]), np.diag([3.0, 4.0])), np.diag([3.0, 4.0, 6.0, 8.0]))


def test_kron_hand_expansion():
    expected = np.array(
        [
            [0, 0, 1, 0],
            [0, 0, 0, -1],
            [1, 0, 0, 0],
            [0, -1, 0, 0],
        ],
        dtype=complex,
    )
    assert np.array_equal(kron(X, Z), expected)


def test_kron_associative():
    a, b, c = X, Z, np.diag([2.0, 3.0]).astype(complex)
    assert np.array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))


def test_partial_trace_product_state():
    rng = np.random.default_rng(5)
    za = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    zb = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    za /= np.linalg.norm(za)
    zb /= np.linalg.norm(zb)
    rho_a = np.outer(za, za.conj())
    rho_b = np.outer(zb, zb.conj())
    rho = DensityMatrix(DimensionList.qubits(2), kron(rho_a, rho_b))
    out = partial_trace(rho, ("A",))
    assert np.max(np.abs(out.matrix - rho_a)) <= 1e-12


def test_partial_trace_bell_marginal():
    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = 1 / np.sqrt(2)
    rho = DensityMatrix(DimensionList.qubits(2), np.outer(bell, bell.conj()))
    out = partial_trace(rho, ("B",))
    assert np.max(np.abs(out.matrix - np.eye(2) / 2)) <= 1e-12


def test_partial_trace_ghz_pair():
    rho = ghz_n(3).to_density()
    out = partial_trace(rho, ("A", "B"))
    expected = np.zeros((4, 4), dtype=complex)
    expected[0, 0] = expected[3, 3] = 0.5
    assert np.max(np.abs(out.matrix - expected)) <= 1e-12
    assert abs(np.trace(out.matrix) - 1.0) <= 1e-10


def test_partial_trace_full_set_is_identity():
    rho = psi_tilde(0.3, 0.6).to_density()
    out = partial_trace(rho, ("A", "B", "C"))
    assert np.array_equal(out.matrix, rho.matrix)


def test_partial_trace_commutes_over_disjoint_systems():
    psi = haar_random_pure(DimensionList.qubits(4), seed=21)
    rho = psi.to_density()
    once = partial_trace(rho, ("A1",))
    stepwise = partial_trace(partial_trace(rho, ("A1", "A2")), ("A1",))
    assert np.max(np.abs(once.matrix - stepwise.matrix)) <= 1e-10


def test_partial_trace_unknown_label():
    rho = ghz_n(3).to_density()
    with pytest.raises(UnknownLabel):
        partial_trace(rho, ("Q",))


def test_validate_accepts_maximally_mixed():
    dm = validate_density(np.eye(2) / 2, DimensionList((2,), ("A",)))
    assert abs(np.trace(dm.matrix) - 1.0) <= 1e-12


def test_validate_rejects_bad_trace():
    with pytest.raises(NotDensityMatrix, match="trace"):
        validate_density(0.9 * np.eye(2) / 2, DimensionList((2,), ("A",)))


def test_validate_rejects_non_hermitian():
    m = np.array([[0.5, 0.1], [0.0, 0.5]], dtype=complex)
    with pytest.raises(NotDensityMatrix, match="hermiticity"):
        validate_density(m, DimensionList((2,), ("A",)))


def test_validate_clamps_small_negative_eigenvalue():
    m = np.diag([1.0 + 1e-9, -1e-9]).astype(complex)
    dm = validate_density(m, DimensionList((2,), ("A",)))
    vals, _ = hermitian_eig(dm.matrix)
    assert vals[-1] >= 0.0
    assert abs(vals.sum() - 1.0) <= 1e-8


def test_validate_rejects_large_negative_eigenvalue():
    m = np.diag([1.1, -0.1]).astype(complex)
    with pytest.raises(NotDensityMatrix, match="positivity"):
        validate_density(m, DimensionList((2,), ("A",)))


def test_validated_spectra_in_unit_interval():
    for seed in range(5):
        psi = haar_random_pure(DimensionList.qubits(3), seed=seed)
        red = partial_trace(psi.to_density(), ("A", "B"))
        vals, _ = hermitian_eig(red.matrix)
        assert vals.min() >= -1e-8
        assert vals.max() <= 1.0 + 1e-8
        assert abs(vals.sum() - 1.0) <= 1e-8
