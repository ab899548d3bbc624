"""Dense Hermitian linear algebra.

Everything here works on numpy arrays or on anything that converts to one,
like ``HermitianMatrix`` and its subclasses.  Results of the spectral
functions are ``HermitianMatrix`` instances, which are read-only.
"""

from functools import cached_property
from qumetrics import HERMITIAN_TOL
from qumetrics import IMAGINARY_TOL
from qumetrics import PSD_TOL
from qumetrics import UNITARY_TOL
from qumetrics.errors import DimensionMismatchError
from qumetrics.errors import NotPositiveSemidefiniteError
from qumetrics.errors import QumetricsError
from qumetrics.errors import SolverFailure
from qumetrics.errors import ValidationError
from typing import NamedTuple

import logging
import numpy as np
import scipy.linalg

logger = logging.getLogger(__name__)

# Residual allowed after an eigendecomposition, relative to max(1, |A|).
EIGH_RESIDUAL_TOL = 1e-10
# A column entry smaller than this is treated as zero when fixing phases.
PHASE_THRESHOLD = 1e-12


def max_abs(matrix):
    """Max-entry norm."""
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix)))


def dagger(matrix):
    return np.asarray(matrix).conj().T


def _square(matrix, what="matrix"):
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatchError(
            f"{what} must be square, got shape {matrix.shape}", [matrix.shape]
        )
    if matrix.shape[0] == 0:
        raise DimensionMismatchError(f"{what} must not be empty", [matrix.shape])
    return matrix


def _conformable(*matrices):
    shapes = [np.shape(m) for m in matrices]
    if any(len(shape) != 2 for shape in shapes):
        raise DimensionMismatchError(f"expected matrices, got shapes {shapes}", shapes)
    for left, right in zip(shapes, shapes[1:] + shapes[:1]):
        if left[1] != right[0]:
            raise DimensionMismatchError(
                f"shapes {shapes} are not conformable for a trace of products",
                shapes,
            )


class EigenDecomposition(NamedTuple):
    """Eigenvalues sorted descending, eigenvectors in the columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self, eigenvalues=None):
        """Return V diag(eigenvalues) V†, by default with our own eigenvalues."""
        if eigenvalues is None:
            eigenvalues = self.eigenvalues
        vectors = self.eigenvectors
        return (vectors * eigenvalues) @ vectors.conj().T


class HermitianMatrix:
    """Read-only complex matrix that equals its conjugate transpose.

    The input must be Hermitian within ``tol`` (relative to its largest
    entry).  The stored matrix is the Hermitian part (A + A†)/2, so
    conjugate symmetry holds exactly.
    """

    invariant_tol = HERMITIAN_TOL

    def __init__(self, data, tol=None):
        if tol is None:
            tol = self.invariant_tol
        matrix = _square(np.array(data, dtype=complex, copy=True))
        if not np.isfinite(matrix).all():
            raise ValidationError(
                "finite", np.inf, "finite violated: matrix has NaN or infinite entries"
            )
        residual = max_abs(matrix - matrix.conj().T)
        if residual > tol * max(1.0, max_abs(matrix)):
            raise ValidationError("hermitian", residual)
        matrix = (matrix + matrix.conj().T) / 2
        matrix.setflags(write=False)
        self.matrix = matrix

    @property
    def dim(self):
        return self.matrix.shape[0]

    @cached_property
    def spectrum(self):
        return eig_hermitian(self.matrix)

    def __array__(self, dtype=None, copy=None):
        if dtype is None and not copy:
            return self.matrix
        return np.array(self.matrix, dtype=dtype, copy=True)

    def __getitem__(self, index):
        return self.matrix[index]

    def __eq__(self, other):
        if not isinstance(other, HermitianMatrix):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix)

    __hash__ = None

    def __repr__(self):
        return f"<{self.__class__.__name__} dim={self.dim}>"


def _fix_phases(vectors):
    """Make the first nonzero entry of every column real and positive."""
    vectors = vectors.copy()
    for column in range(vectors.shape[1]):
        entries = vectors[:, column]
        nonzero = np.flatnonzero(np.abs(entries) > PHASE_THRESHOLD)
        if not nonzero.size:
            continue
        pivot = entries[nonzero[0]]
        vectors[:, column] = entries * (abs(pivot) / pivot)
    return vectors


def eig_hermitian(matrix):
    """Eigendecomposition of a Hermitian matrix.

    LAPACK's relatively robust representation driver is tried first and
    the implicit QL/QR driver is the fallback.  The result is checked: the
    reconstruction residual must stay below 1e-10 * max(1, |A|) and the
    eigenvectors must be orthonormal within 1e-10, else ``SolverFailure``.
    """
    matrix = _square(matrix)
    residual = None
    for driver in ("evr", "ev"):
        try:
            eigenvalues, vectors = scipy.linalg.eigh(matrix, driver=driver)
        except (np.linalg.LinAlgError, ValueError) as exc:
            logger.debug("eigh driver %s failed: %s", driver, exc)
            continue
        order = np.argsort(-eigenvalues, kind="stable")
        decomposition = EigenDecomposition(
            eigenvalues=eigenvalues[order], eigenvectors=_fix_phases(vectors[:, order])
        )
        residual = max_abs(matrix - decomposition.reconstruct())
        identity = np.eye(matrix.shape[0])
        orthonormality = max_abs(vectors.conj().T @ vectors - identity)
        if (
            residual <= EIGH_RESIDUAL_TOL * max(1.0, max_abs(matrix))
            and orthonormality <= EIGH_RESIDUAL_TOL
        ):
            decomposition.eigenvalues.setflags(write=False)
            decomposition.eigenvectors.setflags(write=False)
            return decomposition
        logger.debug(
            "eigh driver %s: residual %.3g, orthonormality %.3g",
            driver,
            residual,
            orthonormality,
        )
    raise SolverFailure(
        f"eigendecomposition of a {matrix.shape[0]}x{matrix.shape[0]} matrix "
        f"did not converge (residual {residual})",
        residual=residual,
    )


def spectral_decomposition(matrix):
    """Use the cached spectrum when we have one."""
    if isinstance(matrix, HermitianMatrix):
        return matrix.spectrum
    return eig_hermitian(HermitianMatrix(matrix).matrix)


def psd_tolerance(eigenvalues):
    return PSD_TOL * max(1.0, float(np.max(eigenvalues)))


def clamp_spectrum(eigenvalues):
    """Set eigenvalues that are zero up to roundoff to exactly zero.

    The window is symmetric: |λ| <= 1e-10 * max(1, λ_max) becomes 0, so a
    roundoff 1e-17 is not part of the support of a fractional power.  Raises
    ``NotPositiveSemidefiniteError`` for anything more negative.
    """
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    tolerance = psd_tolerance(eigenvalues)
    smallest = float(np.min(eigenvalues))
    if smallest < -tolerance:
        raise NotPositiveSemidefiniteError(smallest, tolerance)
    roundoff = (np.abs(eigenvalues) <= tolerance) & (eigenvalues != 0)
    if np.any(roundoff):
        logger.debug("clamping %d eigenvalues to zero", np.count_nonzero(roundoff))
        eigenvalues = np.where(roundoff, 0.0, eigenvalues)
    return eigenvalues


def spectral_power(values, exponent):
    """values ** exponent elementwise, with 0 ** exponent = 0 for every exponent."""
    values = np.asarray(values, dtype=float)
    result = np.zeros_like(values)
    positive = values > 0
    result[positive] = values[positive] ** exponent
    return result


def matrix_power(matrix, alpha):
    """Fractional power V diag(λ^α) V† of a positive semidefinite matrix.

    Zero eigenvalues stay zero for every alpha, including alpha = 0: the
    power acts on the support of the matrix only.
    """
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise QumetricsError(f"matrix power exponent must lie in [0, 1], got {alpha}")
    decomposition = spectral_decomposition(matrix)
    eigenvalues = clamp_spectrum(decomposition.eigenvalues)
    powered = decomposition.reconstruct(spectral_power(eigenvalues, alpha))
    return HermitianMatrix(powered)


def as_real(value, what="trace"):
    """Drop a roundoff imaginary part, refuse a real one."""
    value = complex(value)
    if abs(value.imag) > IMAGINARY_TOL * max(1.0, abs(value)):
        raise ValidationError(f"real {what}", abs(value.imag))
    return value.real


def trace(matrix):
    return complex(np.trace(_square(matrix)))


def trace_product(a, b):
    """Tr(AB) without forming AB."""
    a, b = np.asarray(a), np.asarray(b)
    _conformable(a, b)
    return complex(np.einsum("ij,ji->", a, b))


def trace_quad(a, x, b, y):
    """Tr(A X B Y), contracted pairwise instead of as a full product chain."""
    a, x, b, y = (np.asarray(m) for m in (a, x, b, y))
    _conformable(a, x, b, y)
    return complex(np.einsum("ij,jk,kl,li->", a, x, b, y, optimize=True))


def tensor(a, b):
    """Kronecker product, composite index i = i1 * dim(B) + i2."""
    return np.kron(np.asarray(a), np.asarray(b))


def partial_trace(rho, subsystem, dims):
    """Trace out subsystem 1 or 2 of a state on a space of dimension m1 * m2.

    Returns the reduced ``DensityMatrix`` of the other subsystem.
    """
    m1, m2 = (int(d) for d in dims)
    matrix = np.asarray(rho)
    if m1 < 1 or m2 < 1 or matrix.shape != (m1 * m2, m1 * m2):
        raise DimensionMismatchError(
            f"dims {dims} do not factor a matrix of shape {matrix.shape}",
            [matrix.shape],
        )
    blocks = matrix.reshape(m1, m2, m1, m2)
    if subsystem == 2:
        reduced = np.einsum("ijkj->ik", blocks)
    elif subsystem == 1:
        reduced = np.einsum("jijk->ik", blocks)
    else:
        raise QumetricsError(f"subsystem must be 1 or 2, got {subsystem!r}")
    # Import here to avoid circular imports.
    from qumetrics.states import DensityMatrix

    return DensityMatrix(reduced)


def unitary_residual(matrix):
    matrix = _square(matrix, "unitary")
    return max_abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0]))


def is_unitary(matrix, tol=UNITARY_TOL):
    return unitary_residual(matrix) <= tol


def check_unitary(matrix, tol=UNITARY_TOL):
    residual = unitary_residual(matrix)
    if residual > tol:
        raise ValidationError("unitary", residual)
    return np.asarray(matrix, dtype=complex)


def conjugate_by(unitary, matrix):
    """U A U†."""
    unitary = np.asarray(unitary)
    return unitary @ np.asarray(matrix) @ unitary.conj().T
