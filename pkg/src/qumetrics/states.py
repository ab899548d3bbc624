"""Density matrices and the named states we work with."""

from qumetrics import TRACE_TOL
from qumetrics.errors import QumetricsError
from qumetrics.errors import ValidationError
from qumetrics.linalg import clamp_spectrum
from qumetrics.linalg import conjugate_by
from qumetrics.linalg import eig_hermitian
from qumetrics.linalg import EigenDecomposition
from qumetrics.linalg import HermitianMatrix
from qumetrics.linalg import partial_trace
from qumetrics.linalg import tensor

import logging
import numpy as np

logger = logging.getLogger(__name__)

# Hansen's two-qubit example before normalization.  Its trace is 26.
HANSEN_UNNORMALIZED = np.array(
    [
        [7, 5, 5, 6],
        [5, 6, 2, 5],
        [5, 2, 6, 5],
        [6, 5, 5, 7],
    ],
    dtype=float,
)
# Relative size below which an eigenvalue counts as zero for rank and purity.
RANK_TOL = 1e-10


class DensityMatrix(HermitianMatrix):
    """Hermitian, positive semidefinite matrix with unit trace.

    Construction validates the input and raises ``ValidationError``
    naming the violated invariant.  Eigenvalues within the psd tolerance
    of zero are clamped to zero; if that changes the trace by at most
    ``TRACE_TOL`` the spectrum is renormalized, otherwise the state is
    rejected.
    """

    def __init__(self, data, label=None):
        super().__init__(data)
        self.label = label
        trace = self.matrix.trace().real
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValidationError(
                "unit trace",
                abs(trace - 1.0),
                f"unit trace violated: trace is {trace:.12g}",
            )
        decomposition = eig_hermitian(self.matrix)
        eigenvalues = clamp_spectrum(decomposition.eigenvalues)
        if not np.array_equal(eigenvalues, decomposition.eigenvalues):
            change = float(np.sum(eigenvalues - decomposition.eigenvalues))
            if abs(change) > TRACE_TOL:
                raise ValidationError(
                    "positive semidefinite",
                    change,
                    f"clamping eigenvalues changes the trace by {change:.3g}",
                )
            eigenvalues = eigenvalues / eigenvalues.sum()
            logger.debug(
                "renormalized spectrum after clamping (trace change %.3g)", change
            )
        eigenvalues.setflags(write=False)
        # The stored matrix stays as given, it is within tolerance.  Every
        # spectral function works from this clamped, normalized spectrum.
        self.__dict__["spectrum"] = EigenDecomposition(
            eigenvalues=eigenvalues, eigenvectors=decomposition.eigenvectors
        )

    @property
    def eigenvalues(self):
        return self.spectrum.eigenvalues

    def purity(self):
        return float(np.sum(self.eigenvalues**2))

    def rank(self, tol=RANK_TOL):
        return int(np.count_nonzero(self.eigenvalues > tol * self.eigenvalues[0]))

    def is_pure(self, tol=RANK_TOL):
        return self.rank(tol) == 1

    def is_full_rank(self, tol=RANK_TOL):
        return self.rank(tol) == self.dim

    def conjugate(self, unitary):
        """U ρ U†."""
        return DensityMatrix(conjugate_by(unitary, self.matrix))

    def tensor(self, other):
        return DensityMatrix(tensor(self.matrix, other.matrix))

    def partial_trace(self, subsystem, dims):
        return partial_trace(self.matrix, subsystem, dims)


def validate(raw, label=None):
    """Turn a raw matrix into a ``DensityMatrix`` or raise ``ValidationError``."""
    return DensityMatrix(raw, label=label)


def pure(psi, label=None):
    """|ψ⟩⟨ψ| for a nonzero vector, normalized here."""
    psi = np.asarray(psi, dtype=complex).ravel()
    norm = np.linalg.norm(psi)
    if psi.size == 0 or norm == 0:
        raise QumetricsError("a pure state needs a nonzero vector")
    psi = psi / norm
    return DensityMatrix(np.outer(psi, psi.conj()), label=label)


def maximally_mixed(n):
    n = int(n)
    if n < 1:
        raise QumetricsError(f"dimension must be positive, got {n}")
    return DensityMatrix(np.eye(n) / n, label=f"maximally mixed n={n}")


def singlet():
    """(|01⟩ − |10⟩)/√2."""
    return np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


def werner(lam):
    """Two-qubit Werner state with singlet fidelity ``lam``.

    ρ = ((4λ−1)/3)|Ψ⁻⟩⟨Ψ⁻| + ((1−λ)/3)·I₄, so that λ = 1/4 is I/4 and
    λ = 1 is the singlet.  The spectrum is (λ, (1−λ)/3, (1−λ)/3, (1−λ)/3).
    """
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise ValidationError(
            "werner parameter in [0, 1]",
            max(-lam, lam - 1.0),
            f"werner parameter must lie in [0, 1], got {lam}",
        )
    psi = singlet()
    projector = np.outer(psi, psi.conj())
    matrix = (4 * lam - 1) / 3 * projector + (1 - lam) / 3 * np.eye(4)
    return DensityMatrix(matrix, label=f"werner lambda={lam!r}")


def hansen():
    return DensityMatrix(HANSEN_UNNORMALIZED / 26, label="hansen")


def mixture(rhos, weights):
    """Convex combination Σ w_i ρ_i."""
    weights = np.asarray(weights, dtype=float)
    if len(rhos) != len(weights) or not len(rhos):
        raise QumetricsError("need one weight per state")
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > TRACE_TOL:
        raise QumetricsError(f"weights must be a probability vector, got {weights}")
    matrix = sum(w * np.asarray(rho) for w, rho in zip(weights, rhos))
    return DensityMatrix(matrix)

