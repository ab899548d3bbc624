"""Uncertainty measures of a state, with and without an observable.

Most measures come in two implementations that must agree: a matrix form
working with fractional matrix powers and traces, and an eigenvalue form
working with the spectrum of the state only.  The eigenvalue forms are the
production path; the matrix forms exist to check them.
"""

from dataclasses import dataclass
from dataclasses import field
from qumetrics import BISECTION_MAX_ITER
from qumetrics import CRITICAL_ALPHA_EPSILON
from qumetrics import DEFAULT_ROOT_TOL
from qumetrics import QUADRATURE_POINTS
from qumetrics.errors import AlphaRangeError
from qumetrics.errors import BracketError
from qumetrics.errors import DimensionMismatchError
from qumetrics.errors import QumetricsError
from qumetrics.errors import SolverFailure
from qumetrics.linalg import as_real
from qumetrics.linalg import dagger
from qumetrics.linalg import matrix_power
from qumetrics.linalg import spectral_power
from qumetrics.linalg import trace_product
from qumetrics.linalg import trace_quad
from qumetrics.observables import commutator
from qumetrics.observables import ObservableBasis
from qumetrics.states import DensityMatrix
from typing import NamedTuple

import enum
import logging
import math
import numpy as np
import scipy.optimize

logger = logging.getLogger(__name__)

# Slightly negative results are roundoff and are clamped to zero.
VARIANCE_CLAMP_TOL = 1e-12
WYD_CLAMP_TOL = 1e-10
# Relative to the dimension.
Q_CLAMP_TOL = 1e-10


class AlphaParameter(float):
    """The exponent α of the Wigner-Yanase-Dyson information, 0 < α < 1."""

    def __new__(cls, alpha):
        try:
            value = float(alpha)
        except (TypeError, ValueError):
            raise AlphaRangeError(alpha) from None
        if not 0.0 < value < 1.0:
            raise AlphaRangeError(alpha)
        return super().__new__(cls, value)


class Degenerate(enum.Enum):
    """Q_α does not depend on α, so there is no critical α."""

    DEGENERATE = "degenerate"

    def __str__(self):
        return self.value


DEGENERATE = Degenerate.DEGENERATE


def _state(rho):
    if isinstance(rho, DensityMatrix):
        return rho
    return DensityMatrix(rho)


def _observable_matrix(rho, x):
    x = np.asarray(x)
    if x.shape != (rho.dim, rho.dim):
        raise DimensionMismatchError(
            f"observable of shape {x.shape} does not act on a state of dimension "
            f"{rho.dim}",
            [x.shape, (rho.dim, rho.dim)],
        )
    return x


def _clamp(value, scale, tol):
    if -tol * max(1.0, scale) <= value < 0:
        return 0.0
    return value


def variance(rho, x):
    """V(ρ, X) = Tr(ρX²) − (Tr ρX)²."""
    rho = _state(rho)
    x = _observable_matrix(rho, x)
    second = as_real(trace_product(rho, x @ x))
    first = as_real(trace_product(rho, x))
    return _clamp(second - first**2, second, VARIANCE_CLAMP_TOL)


def _wyd_trace_form(rho, rho_alpha, rho_beta, x):
    second = as_real(trace_product(rho, x @ x))
    cross = as_real(trace_quad(rho_alpha, x, rho_beta, x))
    return _clamp(second - cross, second, WYD_CLAMP_TOL)


def wyd_info(rho, x, alpha):
    """Wigner-Yanase-Dyson information Tr(ρX²) − Tr(ρ^α X ρ^(1−α) X).

    At α = 1/2 this is the Wigner-Yanase skew information.
    """
    alpha = AlphaParameter(alpha)
    rho = _state(rho)
    x = _observable_matrix(rho, x)
    return _wyd_trace_form(
        rho, matrix_power(rho, alpha), matrix_power(rho, 1 - alpha), x
    )


def wyd_info_commutator(rho, x, alpha):
    """−½ Tr([ρ^α, X][ρ^(1−α), X]), the original definition."""
    alpha = AlphaParameter(alpha)
    rho = _state(rho)
    x = _observable_matrix(rho, x)
    left = commutator(matrix_power(rho, alpha), x)
    right = commutator(matrix_power(rho, 1 - alpha), x)
    return -0.5 * as_real(trace_product(left, right))


def _pair_weights(eigenvalues, alpha):
    """λ_i + λ_k − λ_i^α λ_k^(1−α) − λ_i^(1−α) λ_k^α for all pairs."""
    power = spectral_power(eigenvalues, alpha)
    complement = spectral_power(eigenvalues, 1 - alpha)
    return (
        eigenvalues[:, None]
        + eigenvalues[None, :]
        - np.outer(power, complement)
        - np.outer(complement, power)
    )


def wyd_info_spectral(eigenvalues, h, alpha):
    """Σ_{i<k} (λ_i + λ_k − λ_i^α λ_k^(1−α) − λ_i^(1−α) λ_k^α) |h_ik|².

    ``h`` is the observable in the eigenbasis of the state,
    h_ik = ⟨x_i|H|x_k⟩.
    """
    alpha = AlphaParameter(alpha)
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    h = np.asarray(h)
    if h.shape != (eigenvalues.size, eigenvalues.size):
        raise DimensionMismatchError(
            f"{eigenvalues.size} eigenvalues do not match an observable of "
            f"shape {h.shape}",
            [eigenvalues.shape, h.shape],
        )
    weights = np.triu(_pair_weights(eigenvalues, alpha), k=1)
    return float(np.sum(weights * np.abs(h) ** 2))


def wyd_info_eigenbasis(rho, x, alpha):
    """``wyd_info`` through the cached spectrum of the state."""
    rho = _state(rho)
    x = _observable_matrix(rho, x)
    vectors = rho.spectrum.eigenvectors
    return wyd_info_spectral(rho.eigenvalues, dagger(vectors) @ x @ vectors, alpha)


def luo_uncertainty(rho):
    """L(ρ) = n − (Tr √ρ)²."""
    rho = _state(rho)
    value = rho.dim - float(np.sum(np.sqrt(rho.eigenvalues))) ** 2
    return _clamp(value, rho.dim, Q_CLAMP_TOL)


def luo_uncertainty_pairs(rho):
    """L(ρ) = Σ_{i<k} (√λ_i − √λ_k)²."""
    roots = np.sqrt(_state(rho).eigenvalues)
    differences = np.triu(roots[:, None] - roots[None, :], k=1)
    return float(np.sum(differences**2))


def q_alpha(rho, alpha):
    """Q_α(ρ) = n − Tr ρ^α · Tr ρ^(1−α), the WYD information summed over a basis."""
    alpha = AlphaParameter(alpha)
    rho = _state(rho)
    power = float(np.sum(spectral_power(rho.eigenvalues, alpha)))
    complement = float(np.sum(spectral_power(rho.eigenvalues, 1 - alpha)))
    return _clamp(rho.dim - power * complement, rho.dim, Q_CLAMP_TOL)


def q_alpha_pairs(rho, alpha):
    """Q_α(ρ) = n − 1 − Σ_{i<k} (λ_i^α λ_k^(1−α) + λ_i^(1−α) λ_k^α)."""
    alpha = AlphaParameter(alpha)
    rho = _state(rho)
    power = spectral_power(rho.eigenvalues, alpha)
    complement = spectral_power(rho.eigenvalues, 1 - alpha)
    cross = np.outer(power, complement) + np.outer(complement, power)
    return rho.dim - 1 - float(np.sum(np.triu(cross, k=1)))


def q_alpha_via_basis_sum(rho, basis, alpha):
    """Σ_j I_α(ρ, H_j) over an orthonormal observable basis."""
    alpha = AlphaParameter(alpha)
    rho = _state(rho)
    if not isinstance(basis, ObservableBasis):
        basis = ObservableBasis(basis)
    if basis.dim != rho.dim:
        raise DimensionMismatchError(
            f"basis of dimension {basis.dim} for a state of dimension {rho.dim}",
            [(basis.dim, basis.dim), (rho.dim, rho.dim)],
        )
    rho_alpha = matrix_power(rho, alpha)
    rho_beta = matrix_power(rho, 1 - alpha)
    return math.fsum(
        _wyd_trace_form(rho, rho_alpha, rho_beta, element.matrix)
        for element in basis
    )


def _delta(a, b):
    """Vectorized Δ: twice the logarithmic mean, zero if either argument is."""
    a, b = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    low, high = np.minimum(a, b), np.maximum(a, b)
    result = np.zeros(low.shape)
    positive = low > 0
    # Δ = 2 low r / log1p(r) with r = high/low − 1.
    excess = np.zeros(low.shape)
    excess[positive] = high[positive] / low[positive] - 1
    equal = positive & (excess == 0)
    other = positive & (excess != 0)
    result[equal] = 2 * low[equal]
    result[other] = 2 * low[other] * excess[other] / np.log1p(excess[other])
    return result


def delta(l1, l2):
    """Δ(λ_i, λ_k) = ∫₀¹ (λ_i^α λ_k^(1−α) + λ_i^(1−α) λ_k^α) dα.

    0 if λ_i λ_k = 0, 2λ_i if λ_i = λ_k, else 2(λ_k − λ_i)/(ln λ_k − ln λ_i).
    """
    if l1 < 0 or l2 < 0:
        raise QumetricsError(f"delta needs non-negative arguments, got {l1}, {l2}")
    return float(_delta(l1, l2))


def q_star(rho):
    """Q*(ρ) = ∫₀¹ Q_α(ρ) dα = n − 1 − Σ_{i<k} Δ(λ_i, λ_k)."""
    rho = _state(rho)
    eigenvalues = rho.eigenvalues
    deltas = _delta(eigenvalues[:, None], eigenvalues[None, :])
    value = rho.dim - 1 - float(np.sum(np.triu(deltas, k=1)))
    return _clamp(value, rho.dim, Q_CLAMP_TOL)


def q_star_quadrature(rho, points=QUADRATURE_POINTS):
    """Q* by Gauss-Legendre quadrature of Q_α over α in (0, 1)."""
    rho = _state(rho)
    nodes, weights = np.polynomial.legendre.leggauss(points)
    alphas = (nodes + 1) / 2
    return math.fsum(w / 2 * q_alpha(rho, a) for a, w in zip(alphas, weights))


def critical_alpha(rho, tol=DEFAULT_ROOT_TOL):
    """The α_c in (0, 1/2] with Q_{α_c}(ρ) = Q*(ρ), or ``DEGENERATE``.

    The root of g(α) = Q_α − Q* is bisected on [1e-6, 1/2].  g(1/2) = L − Q*
    is never negative; for full-rank states g tends to −Q* as α → 0.  When
    g is within ``tol`` of zero at both ends Q_α does not depend on α, as for
    pure and maximally mixed states.  Rank-deficient states can lack a sign
    change, which raises ``BracketError``.
    """
    if tol <= 0:
        raise QumetricsError(f"tolerance must be positive, got {tol}")
    rho = _state(rho)
    target = q_star(rho)

    def g(alpha):
        return q_alpha(rho, alpha) - target

    low, high = CRITICAL_ALPHA_EPSILON, 0.5
    g_low, g_high = g(low), g(high)
    logger.debug(
        "critical alpha bracket: g(%g) = %.6g, g(%g) = %.6g", low, g_low, high, g_high
    )
    if abs(g_low) <= tol and abs(g_high) <= tol:
        return DEGENERATE
    if np.sign(g_low) == np.sign(g_high):
        raise BracketError(low, high, g_low, g_high)
    root = scipy.optimize.bisect(
        g, low, high, xtol=1e-15, maxiter=BISECTION_MAX_ITER, disp=False
    )
    residual = abs(g(root))
    if residual > tol:
        raise SolverFailure(
            f"critical alpha {root:.12g} leaves |Q_alpha - Q*| = {residual:.3g}",
            residual=residual,
        )
    return root


class Entropies(NamedTuple):
    von_neumann: float
    renyi: float
    tsallis: float
    brukner_zeilinger: float
    purity: float


def _check_q(q):
    q = float(q)
    if not (q > 0 and q != 1 and math.isfinite(q)):
        raise QumetricsError(f"entropy index q must be positive and not 1, got {q}")
    return q


def von_neumann_entropy(rho):
    """S(ρ) = −Σ λ ln λ in nats, with 0 ln 0 = 0."""
    eigenvalues = _state(rho).eigenvalues
    positive = eigenvalues[eigenvalues > 0]
    return float(-np.sum(positive * np.log(positive))) + 0.0


def renyi_entropy(rho, q):
    """ln(Tr ρ^q)/(1 − q), which tends to S(ρ) as q → 1."""
    q = _check_q(q)
    return math.log(np.sum(spectral_power(_state(rho).eigenvalues, q))) / (1 - q)


def tsallis_entropy(rho, q):
    """(1 − Tr ρ^q)/(q − 1)."""
    q = _check_q(q)
    return (1 - float(np.sum(spectral_power(_state(rho).eigenvalues, q)))) / (q - 1)


def purity(rho):
    return _state(rho).purity()


def total_information(rho):
    """Brukner-Zeilinger total information Tr ρ² − 1/n."""
    rho = _state(rho)
    return rho.purity() - 1 / rho.dim


def brukner_zeilinger(rho):
    """Normalized Brukner-Zeilinger information n/(n−1) (Tr ρ² − 1/n), in [0, 1]."""
    rho = _state(rho)
    if rho.dim == 1:
        # The only state of a one-dimensional system is pure.
        return 1.0
    return rho.dim / (rho.dim - 1) * total_information(rho)


def entropies(rho, q):
    rho = _state(rho)
    return Entropies(
        von_neumann=von_neumann_entropy(rho),
        renyi=renyi_entropy(rho, q),
        tsallis=tsallis_entropy(rho, q),
        brukner_zeilinger=brukner_zeilinger(rho),
        purity=rho.purity(),
    )


@dataclass(frozen=True)
class MeasureReport:
    """All scalar measures of one state, and optionally one observable."""

    n: int
    purity: float
    von_neumann: float
    q: float
    renyi: float
    tsallis: float
    brukner_zeilinger: float
    luo: float
    q_star: float
    q_alpha: dict = field(default_factory=dict)
    label: str = None
    variance: float = None
    wyd: dict = None

    def as_dict(self):
        result = {
            "label": self.label,
            "n": self.n,
            "purity": self.purity,
            "S": self.von_neumann,
            "q": self.q,
            "S_renyi": self.renyi,
            "S_tsallis": self.tsallis,
            "I_BZ": self.brukner_zeilinger,
            "L": self.luo,
            "Q_star": self.q_star,
            "Q_alpha": {repr(alpha): value for alpha, value in self.q_alpha.items()},
        }
        if self.variance is not None:
            result["V"] = self.variance
            result["I_alpha"] = {
                repr(alpha): value for alpha, value in self.wyd.items()
            }
        return result


def measure_report(rho, alphas, q, observable=None):
    rho = _state(rho)
    alphas = [AlphaParameter(alpha) for alpha in alphas]
    found = entropies(rho, q)
    extra = {}
    if observable is not None:
        extra["variance"] = variance(rho, observable)
        extra["wyd"] = {
            float(alpha): wyd_info(rho, observable, alpha) for alpha in alphas
        }
    return MeasureReport(
        n=rho.dim,
        purity=found.purity,
        von_neumann=found.von_neumann,
        q=float(q),
        renyi=found.renyi,
        tsallis=found.tsallis,
        brukner_zeilinger=found.brukner_zeilinger,
        luo=luo_uncertainty(rho),
        q_star=q_star(rho),
        q_alpha={float(alpha): q_alpha(rho, alpha) for alpha in alphas},
        label=rho.label,
        **extra,
    )
