from qumetrics.errors import NotPositiveSemidefiniteError
from qumetrics.errors import QumetricsError
from qumetrics.errors import ValidationError
from qumetrics.linalg import max_abs
from qumetrics.rand import random_ginibre_density
from qumetrics.rand import random_unitary
from qumetrics.states import DensityMatrix
from qumetrics.states import hansen
from qumetrics.states import HANSEN_UNNORMALIZED
from qumetrics.states import maximally_mixed
from qumetrics.states import mixture
from qumetrics.states import pure
from qumetrics.states import singlet
from qumetrics.states import validate
from qumetrics.states import werner

import numpy as np
import pytest

HANSEN_EIGENVALUES = [0.800299, 0.153846, 0.0384615, 0.0073938]


def test_validate_accepts_states():
    rho = validate(np.diag([0.75, 0.25]), label="diag")
    assert isinstance(rho, DensityMatrix)
    assert rho.label == "diag"
    assert rho.eigenvalues == pytest.approx([0.75, 0.25])


@pytest.mark.parametrize(
    "raw,invariant",
    [
        ([[0.6, 0], [0, 0.6]], "unit trace"),
        ([[1.2, 0], [0, -0.2]], "positive semidefinite"),
        ([[0.5, 0.1], [0.3, 0.5]], "hermitian"),
    ],
)
def test_validate_names_the_invariant(raw, invariant):
    with pytest.raises(ValidationError) as excinfo:
        validate(raw)
    assert excinfo.value.invariant == invariant
    assert excinfo.value.residual > 0


def test_negative_eigenvalue_is_reported():
    with pytest.raises(NotPositiveSemidefiniteError) as excinfo:
        validate([[1.2, 0], [0, -0.2]])
    assert excinfo.value.eigenvalue == pytest.approx(-0.2)


def test_roundoff_eigenvalues_are_clamped():
    rho = validate(np.diag([1.0 + 1e-13, -1e-13]))
    assert list(rho.eigenvalues) == [1.0, 0.0]
    # The stored matrix is the validated input.
    assert rho.matrix[1, 1] == -1e-13


def test_pure_state():
    rho = pure([1, 1j])
    assert rho.is_pure()
    assert rho.rank() == 1
    assert not rho.is_full_rank()
    assert rho.purity() == pytest.approx(1.0)
    assert list(rho.eigenvalues) == [pytest.approx(1.0), 0.0]
    with pytest.raises(QumetricsError):
        pure([0, 0])


def test_maximally_mixed():
    rho = maximally_mixed(3)
    assert rho.is_full_rank()
    assert rho.purity() == pytest.approx(1 / 3)
    with pytest.raises(QumetricsError):
        maximally_mixed(0)


def test_singlet():
    psi = singlet()
    assert np.linalg.norm(psi) == pytest.approx(1.0)
    assert list(psi * np.sqrt(2)) == pytest.approx([0, 1, -1, 0])


def test_werner_endpoints():
    assert max_abs(werner(0.25).matrix - np.eye(4) / 4) < 1e-16
    psi = singlet()
    assert max_abs(werner(1).matrix - np.outer(psi, psi.conj())) < 1e-15
    assert werner(1).is_pure()


def test_werner_spectrum():
    rho = werner(0.5)
    assert rho.eigenvalues == pytest.approx([0.5, 1 / 6, 1 / 6, 1 / 6])
    # Singlet fidelity.
    psi = singlet()
    assert (psi.conj() @ rho.matrix @ psi).real == pytest.approx(0.5)


@pytest.mark.parametrize("lam", [-0.1, 1.1])
def test_werner_range(lam):
    with pytest.raises(ValidationError):
        werner(lam)


def test_hansen():
    rho = hansen()
    assert rho.label == "hansen"
    assert HANSEN_UNNORMALIZED.trace() == 26
    assert rho.eigenvalues == pytest.approx(HANSEN_EIGENVALUES, abs=1e-6)
    assert rho.is_full_rank()


def test_rank_of_induced_states():
    rho = random_ginibre_density(5, seed=3, rank=2)
    assert rho.rank() == 2
    assert not rho.is_full_rank()
    assert random_ginibre_density(5, seed=3).is_full_rank()


def test_conjugate_keeps_spectrum():
    rho = random_ginibre_density(4, seed=11)
    rotated = rho.conjugate(random_unitary(4, seed=12))
    assert max_abs(rotated.eigenvalues - rho.eigenvalues) < 1e-14


def test_tensor_and_partial_trace():
    first = random_ginibre_density(2, seed=1)
    second = random_ginibre_density(3, seed=2)
    joint = first.tensor(second)
    assert joint.dim == 6
    assert max_abs(joint.partial_trace(1, (2, 3)).matrix - second.matrix) < 1e-14


def test_mixture():
    rho = mixture([pure([1, 0]), pure([0, 1])], [0.25, 0.75])
    assert rho.eigenvalues == pytest.approx([0.75, 0.25])
    with pytest.raises(QumetricsError):
        mixture([pure([1, 0])], [0.5, 0.5])
    with pytest.raises(QumetricsError):
        mixture([pure([1, 0]), pure([0, 1])], [1.5, -0.5])
