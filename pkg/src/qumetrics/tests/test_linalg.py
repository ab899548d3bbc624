from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from qumetrics.errors import DimensionMismatchError
from qumetrics.errors import NotPositiveSemidefiniteError
from qumetrics.errors import QumetricsError
from qumetrics.errors import ValidationError
from qumetrics.linalg import as_real
from qumetrics.linalg import check_unitary
from qumetrics.linalg import clamp_spectrum
from qumetrics.linalg import eig_hermitian
from qumetrics.linalg import HermitianMatrix
from qumetrics.linalg import is_unitary
from qumetrics.linalg import matrix_power
from qumetrics.linalg import max_abs
from qumetrics.linalg import partial_trace
from qumetrics.linalg import spectral_power
from qumetrics.linalg import tensor
from qumetrics.linalg import trace
from qumetrics.linalg import trace_product
from qumetrics.linalg import trace_quad
from qumetrics.rand import ginibre
from qumetrics.rand import random_ginibre_density
from qumetrics.rand import random_unitary

import numpy as np
import pytest


def test_hermitian_matrix_rejects_non_hermitian():
    with pytest.raises(ValidationError) as excinfo:
        HermitianMatrix([[1, 2], [0, 1]])
    assert excinfo.value.invariant == "hermitian"
    assert excinfo.value.residual == pytest.approx(2.0)


def test_hermitian_matrix_rejects_bad_shapes():
    with pytest.raises(DimensionMismatchError):
        HermitianMatrix([[1, 0, 0], [0, 1, 0]])
    with pytest.raises(DimensionMismatchError):
        HermitianMatrix(np.zeros((0, 0)))


def test_hermitian_matrix_is_read_only():
    source = np.array([[1.0, 1j], [-1j, 2.0]])
    matrix = HermitianMatrix(source)
    with pytest.raises(ValueError):
        matrix.matrix[0, 0] = 5
    # We copied the input.
    source[0, 0] = 5
    assert matrix[0, 0] == 1
    assert matrix.dim == 2
    assert np.array_equal(np.asarray(matrix), matrix.matrix)


def test_hermitian_matrix_symmetrizes_roundoff():
    matrix = HermitianMatrix([[1, 1 + 1e-13], [1, 1]])
    assert np.array_equal(matrix.matrix, matrix.matrix.conj().T)


def test_eig_hermitian_sorted_descending():
    decomposition = eig_hermitian(np.diag([1.0, 3.0, 2.0]))
    assert decomposition.eigenvalues == pytest.approx([3.0, 2.0, 1.0])
    assert max_abs(decomposition.reconstruct() - np.diag([1.0, 3.0, 2.0])) < 1e-14


def test_eig_hermitian_phase_convention():
    matrix = random_ginibre_density(4, seed=1).matrix
    vectors = eig_hermitian(matrix).eigenvectors
    for column in vectors.T:
        pivot = column[np.flatnonzero(np.abs(column) > 1e-12)[0]]
        assert pivot.imag == pytest.approx(0.0, abs=1e-15)
        assert pivot.real > 0


def test_eig_hermitian_results_are_read_only():
    decomposition = eig_hermitian(np.eye(2))
    with pytest.raises(ValueError):
        decomposition.eigenvalues[0] = 2


@settings(max_examples=50, deadline=None)
@given(
    entries=arrays(
        np.float64,
        (5, 5),
        elements=st.floats(min_value=-1e3, max_value=1e3),
    ),
)
def test_eig_hermitian_reconstructs(entries):
    matrix = entries + entries.T
    decomposition = eig_hermitian(matrix)
    scale = max(1.0, max_abs(matrix))
    assert max_abs(decomposition.reconstruct() - matrix) <= 1e-10 * scale
    vectors = decomposition.eigenvectors
    assert max_abs(vectors.conj().T @ vectors - np.eye(5)) <= 1e-10
    assert np.all(np.diff(decomposition.eigenvalues) <= 0)


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8])
def test_eig_hermitian_complex_matrices(n):
    rng = np.random.default_rng(n)
    for _ in range(100):
        g = ginibre(n, n, seed=rng)
        matrix = g + g.conj().T
        decomposition = eig_hermitian(matrix)
        scale = max(1.0, max_abs(matrix))
        assert max_abs(decomposition.reconstruct() - matrix) <= 1e-10 * scale
        vectors = decomposition.eigenvectors
        assert max_abs(vectors.conj().T @ vectors - np.eye(n)) <= 1e-12


def test_hermitian_matrix_rejects_non_finite():
    with pytest.raises(ValidationError) as excinfo:
        HermitianMatrix([[np.nan, 0], [0, 1]])
    assert excinfo.value.invariant == "finite"
    with pytest.raises(ValidationError):
        HermitianMatrix([[1, np.inf], [np.inf, 1]])


def test_clamp_spectrum():
    assert list(clamp_spectrum([1.0, -1e-12])) == [1.0, 0.0]
    # Positive roundoff is zero too.
    assert list(clamp_spectrum([1.0, 1e-17])) == [1.0, 0.0]
    assert list(clamp_spectrum([0.5, 0.5])) == [0.5, 0.5]
    with pytest.raises(NotPositiveSemidefiniteError) as excinfo:
        clamp_spectrum([1.0, -1e-3])
    assert excinfo.value.eigenvalue == -1e-3
    assert excinfo.value.invariant == "positive semidefinite"


def test_spectral_power_zero_convention():
    assert list(spectral_power([4.0, 0.0], 0.5)) == [2.0, 0.0]
    assert list(spectral_power([4.0, 0.0], 0.0)) == [1.0, 0.0]


def test_matrix_power():
    root = matrix_power(np.diag([4.0, 0.0]), 0.5)
    assert isinstance(root, HermitianMatrix)
    assert max_abs(root.matrix - np.diag([2.0, 0.0])) < 1e-15
    # 0 ** 0 = 0: the power acts on the support only.
    support = matrix_power(np.diag([0.5, 0.0]), 0.0)
    assert max_abs(support.matrix - np.diag([1.0, 0.0])) < 1e-15
    with pytest.raises(QumetricsError):
        matrix_power(np.eye(2), 1.5)
    with pytest.raises(NotPositiveSemidefiniteError):
        matrix_power(np.diag([1.0, -0.5]), 0.5)


def test_matrix_power_squares_back():
    rho = random_ginibre_density(5, seed=7)
    root = matrix_power(rho, 0.5).matrix
    assert max_abs(root @ root - rho.matrix) < 1e-12


@pytest.mark.parametrize("alpha", [0.1, 0.25, 0.5, 0.9])
@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_matrix_power_complements_multiply_back(n, alpha):
    rng = np.random.default_rng(10 * n)
    for _ in range(10):
        g = ginibre(n, n, seed=rng)
        matrix = g @ g.conj().T
        product = matrix_power(matrix, alpha).matrix @ matrix_power(
            matrix, 1 - alpha
        ).matrix
        assert max_abs(product - matrix) <= 1e-9
    rank_two = random_ginibre_density(n, seed=rng, rank=min(2, n))
    product = matrix_power(rank_two, alpha).matrix @ matrix_power(
        rank_two, 1 - alpha
    ).matrix
    assert max_abs(product - rank_two.matrix) <= 1e-9


def test_traces():
    a, x, b, y = (ginibre(3, 3, seed=seed) for seed in range(4))
    assert trace(a) == pytest.approx(np.trace(a))
    assert trace_product(a, b) == pytest.approx(np.trace(a @ b))
    assert trace_quad(a, x, b, y) == pytest.approx(np.trace(a @ x @ b @ y))


def test_trace_product_not_conformable():
    with pytest.raises(DimensionMismatchError) as excinfo:
        trace_product(np.eye(2), np.eye(3))
    assert excinfo.value.shapes == ((2, 2), (3, 3))
    with pytest.raises(DimensionMismatchError):
        trace_quad(np.eye(2), np.eye(2), np.eye(3), np.eye(2))


def test_as_real():
    assert as_real(1 + 1e-14j) == 1.0
    with pytest.raises(ValidationError) as excinfo:
        as_real(1 + 1e-3j)
    assert excinfo.value.invariant == "real trace"


def test_tensor_index_convention():
    product = tensor(np.diag([1.0, 2.0]), np.diag([1.0, 3.0]))
    assert list(np.diagonal(product)) == [1.0, 3.0, 2.0, 6.0]


def test_partial_trace_of_product():
    first = random_ginibre_density(2, seed=1)
    second = random_ginibre_density(3, seed=2)
    joint = tensor(first.matrix, second.matrix)
    assert max_abs(partial_trace(joint, 2, (2, 3)).matrix - first.matrix) < 1e-14
    assert max_abs(partial_trace(joint, 1, (2, 3)).matrix - second.matrix) < 1e-14


def test_partial_trace_errors():
    with pytest.raises(DimensionMismatchError):
        partial_trace(np.eye(4) / 4, 2, (3, 2))
    with pytest.raises(QumetricsError):
        partial_trace(np.eye(4) / 4, 3, (2, 2))


def test_unitary_checks():
    unitary = random_unitary(3, seed=5)
    assert is_unitary(unitary)
    assert not is_unitary(2 * unitary)
    check_unitary(unitary)
    with pytest.raises(ValidationError) as excinfo:
        check_unitary(np.diag([1.0, 0.5]))
    assert excinfo.value.invariant == "unitary"
