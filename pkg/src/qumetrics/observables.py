"""Observables, the orthonormal observable basis and commutators."""

from collections.abc import Sequence
from functools import cached_property
from qumetrics import ORTHONORMAL_TOL
from qumetrics.errors import DimensionMismatchError
from qumetrics.errors import QumetricsError
from qumetrics.errors import ValidationError
from qumetrics.linalg import conjugate_by
from qumetrics.linalg import dagger
from qumetrics.linalg import HermitianMatrix
from qumetrics.linalg import max_abs

import numpy as np

# Orthogonality check for basis rotations.
ROTATION_TOL = 1e-10
# Gram matrix check of rotated bases, which pick up roundoff from O.
ROTATED_ORTHONORMAL_TOL = 1e-10

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class Observable(HermitianMatrix):
    """A Hermitian matrix without trace or positivity constraints."""

    def __init__(self, data, label=None):
        super().__init__(data)
        self.label = label

    def conjugate(self, unitary):
        """U X U†."""
        return Observable(conjugate_by(unitary, self.matrix))

    def in_basis(self, vectors):
        """V† X V: the entries h_ik = ⟨x_i|X|x_k⟩ for the columns x_i of V."""
        vectors = np.asarray(vectors)
        return Observable(dagger(vectors) @ self.matrix @ vectors)


def pauli(name):
    return Observable(PAULI[name], label=f"sigma_{name}")


class ObservableBasis(Sequence):
    """Ordered basis of the real space of n x n Hermitian matrices.

    Orthonormal under ⟨X, Y⟩ = Tr(XY), which is checked on construction.
    """

    def __init__(self, elements, tol=ORTHONORMAL_TOL):
        elements = [e if isinstance(e, Observable) else Observable(e) for e in elements]
        if not elements:
            raise QumetricsError("an observable basis needs elements")
        self.dim = elements[0].dim
        if any(e.dim != self.dim for e in elements):
            raise DimensionMismatchError(
                "basis elements differ in dimension", [e.matrix.shape for e in elements]
            )
        if len(elements) != self.dim**2:
            raise ValidationError(
                "complete basis",
                abs(len(elements) - self.dim**2),
                f"a basis for dimension {self.dim} needs {self.dim ** 2} "
                f"elements, got {len(elements)}",
            )
        self.elements = tuple(elements)
        residual = max_abs(self.gram() - np.eye(len(elements)))
        if residual > tol:
            raise ValidationError("orthonormal basis", residual)

    def __getitem__(self, index):
        return self.elements[index]

    def __len__(self):
        return len(self.elements)

    @cached_property
    def stacked(self):
        stacked = np.stack([e.matrix for e in self.elements])
        stacked.setflags(write=False)
        return stacked

    def gram(self):
        """Tr(H_j H_k) for all pairs."""
        return np.einsum("jab,kba->jk", self.stacked, self.stacked).real

    def expand(self, matrix):
        """Coefficients Tr(A H_j), real for Hermitian A."""
        matrix = np.asarray(matrix)
        if matrix.shape != (self.dim, self.dim):
            raise DimensionMismatchError(
                f"cannot expand a {matrix.shape} matrix in a basis of "
                f"dimension {self.dim}",
                [matrix.shape],
            )
        return np.einsum("ab,jba->j", matrix, self.stacked).real

    def reconstruct(self, coefficients):
        """Σ_j c_j H_j."""
        return np.einsum("j,jab->ab", np.asarray(coefficients), self.stacked)

    def __repr__(self):
        return f"<ObservableBasis dim={self.dim} size={len(self)}>"


def standard_basis(n):
    """The basis {|i⟩⟨i|}, {(|i⟩⟨k| + |k⟩⟨i|)/√2}, {(−i|i⟩⟨k| + i|k⟩⟨i|)/√2}.

    Diagonal elements come first in ascending i, then the symmetric and
    then the antisymmetric off-diagonal elements, both in lexicographic
    (i, k) order with i < k.
    """
    n = int(n)
    if n < 1:
        raise QumetricsError(f"dimension must be positive, got {n}")
    pairs = [(i, k) for i in range(n) for k in range(i + 1, n)]
    elements = []
    for i in range(n):
        element = np.zeros((n, n), dtype=complex)
        element[i, i] = 1
        elements.append(element)
    for i, k in pairs:
        element = np.zeros((n, n), dtype=complex)
        element[i, k] = element[k, i] = 1 / np.sqrt(2)
        elements.append(element)
    for i, k in pairs:
        element = np.zeros((n, n), dtype=complex)
        element[i, k] = -1j / np.sqrt(2)
        element[k, i] = 1j / np.sqrt(2)
        elements.append(element)
    return ObservableBasis(elements)


def rotate_basis(basis, orthogonal):
    """New basis H'_j = Σ_k O_jk H_k for a real orthogonal n² x n² matrix O."""
    orthogonal = np.asarray(orthogonal)
    size = len(basis)
    if orthogonal.shape != (size, size):
        raise DimensionMismatchError(
            f"rotation must be {size}x{size}, got {orthogonal.shape}",
            [orthogonal.shape],
        )
    if np.iscomplexobj(orthogonal):
        if max_abs(orthogonal.imag) > ROTATION_TOL:
            raise ValidationError("real orthogonal", max_abs(orthogonal.imag))
        orthogonal = orthogonal.real
    residual = max_abs(orthogonal.T @ orthogonal - np.eye(size))
    if residual > ROTATION_TOL:
        raise ValidationError("real orthogonal", residual)
    rotated = np.einsum("jk,kab->jab", orthogonal, basis.stacked)
    return ObservableBasis(list(rotated), tol=ROTATED_ORTHONORMAL_TOL)


def commutator(a, b):
    """AB − BA."""
    a, b = np.asarray(a), np.asarray(b)
    if a.ndim != 2 or a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(
            f"cannot commute shapes {a.shape} and {b.shape}", [a.shape, b.shape]
        )
    return a @ b - b @ a


def commutes(a, b, tol=None):
    """Whether ‖AB − BA‖_max ≤ tol, by default 1e-10 · max(1, ‖A‖·‖B‖)."""
    if tol is None:
        tol = 1e-10 * max(1.0, max_abs(a) * max_abs(b))
    return max_abs(commutator(a, b)) <= tol
