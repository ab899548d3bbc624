"""Seeded random states, unitaries and observables.

Every function takes ``seed``: an int, a ``numpy.random.SeedSequence`` or
an existing ``numpy.random.Generator``.  Passing a generator draws from it,
so a sequence of calls sharing one generator is deterministic too.
"""

from qumetrics.errors import QumetricsError
from qumetrics.observables import Observable
from qumetrics.states import DensityMatrix

import numpy as np


def _rng(seed):
    return np.random.default_rng(seed)


def _check_dim(n):
    n = int(n)
    if n < 1:
        raise QumetricsError(f"dimension must be positive, got {n}")
    return n


def ginibre(rows, columns, seed=None):
    """Matrix of independent standard complex Gaussians."""
    rng = _rng(seed)
    return rng.standard_normal((rows, columns)) + 1j * rng.standard_normal(
        (rows, columns)
    )


def random_ginibre_density(n, seed=None, rank=None):
    """G G† / Tr(G G†) with G an n x rank Ginibre matrix.

    Without ``rank`` this is the Hilbert-Schmidt ensemble of full-rank
    states.  With a smaller rank the state has exactly that rank.
    """
    n = _check_dim(n)
    rank = n if rank is None else int(rank)
    if not 1 <= rank <= n:
        raise QumetricsError(f"rank must lie in [1, {n}], got {rank}")
    g = ginibre(n, rank, seed)
    positive = g @ g.conj().T
    return DensityMatrix(positive / np.trace(positive).real)


def random_unitary(n, seed=None):
    """Haar-distributed unitary: QR of a Ginibre matrix with the phases of R fixed."""
    n = _check_dim(n)
    q, r = np.linalg.qr(ginibre(n, n, seed))
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    unitary = q * phases
    unitary.setflags(write=False)
    return unitary


def random_orthogonal(m, seed=None):
    """Haar-distributed real orthogonal m x m matrix."""
    m = _check_dim(m)
    q, r = np.linalg.qr(_rng(seed).standard_normal((m, m)))
    return q * np.sign(np.diagonal(r))


def random_observable(n, seed=None):
    """(A + A†)/2 for a Ginibre matrix A."""
    n = _check_dim(n)
    a = ginibre(n, n, seed)
    return Observable((a + a.conj().T) / 2)
