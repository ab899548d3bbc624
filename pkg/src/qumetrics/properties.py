"""Randomized checks of the properties the uncertainty measures must have.

``check_properties`` evaluates a fixed list of named predicates on every
sample and folds the outcomes into a ``PropertyLedger``.  A failure is data,
not an exception: the ledger counts evaluations and failures per property
and keeps the worst residual seen.  Residuals are violations, so zero or
less means the predicate held exactly.

Every sample draws its auxiliary randomness (mixing weights, partner
factors, unitaries) from its own child of the seed, so the ledger does not
depend on the order in which samples are checked.
"""

from dataclasses import dataclass
from qumetrics import CONVEXITY_MARGIN
from qumetrics import VERIFY_ALPHAS
from qumetrics import VERIFY_LOOSE_TOL
from qumetrics import VERIFY_SEED
from qumetrics import VERIFY_TOL
from qumetrics.errors import BracketError
from qumetrics.errors import DimensionMismatchError
from qumetrics.errors import QumetricsError
from qumetrics.errors import SolverFailure
from qumetrics.linalg import conjugate_by
from qumetrics.linalg import dagger
from qumetrics.linalg import matrix_power
from qumetrics.linalg import max_abs
from qumetrics.linalg import tensor
from qumetrics.measures import AlphaParameter
from qumetrics.measures import critical_alpha
from qumetrics.measures import DEGENERATE
from qumetrics.measures import luo_uncertainty
from qumetrics.measures import luo_uncertainty_pairs
from qumetrics.measures import q_alpha
from qumetrics.measures import q_alpha_pairs
from qumetrics.measures import q_alpha_via_basis_sum
from qumetrics.measures import q_star
from qumetrics.measures import q_star_quadrature
from qumetrics.measures import variance
from qumetrics.measures import wyd_info
from qumetrics.measures import wyd_info_commutator
from qumetrics.measures import wyd_info_eigenbasis
from qumetrics.observables import Observable
from qumetrics.observables import rotate_basis
from qumetrics.observables import standard_basis
from qumetrics.rand import random_ginibre_density
from qumetrics.rand import random_observable
from qumetrics.rand import random_orthogonal
from qumetrics.rand import random_unitary
from qumetrics.states import DensityMatrix
from qumetrics.states import mixture
from qumetrics.states import pure

import logging
import numpy as np
import scipy.linalg

logger = logging.getLogger(__name__)

# Exponents close to the ends of (0, 1) for the limit checks.
LIMIT_ALPHA = 1e-4
# Q at LIMIT_ALPHA may be at most this times n for a full-rank state.
FULL_RANK_LIMIT_FACTOR = 1e-3
# Allowed distance of Q at LIMIT_ALPHA from n − rank for rank-deficient states.
RANK_LIMIT_TOL = 1e-2
# Dimension of the auxiliary factor in the additivity and partial trace checks.
AUXILIARY_DIM = 2
# Smallest L − Q_α accepted by the strict dominance check.
STRICT_GAP = 1e-10
# The gap is only checked where a lower bound on it exceeds this times STRICT_GAP.
STRICT_BOUND_FACTOR = 10

PROPERTIES = {
    "wyd_convexity": "I_α(ρ, X) is convex in ρ",
    "wyd_trace_concavity": "Tr(ρ^α X ρ^(1−α) X) is concave in ρ",
    "wyd_additivity": "I_α(ρ⊗σ, A⊗I + I⊗B) = I_α(ρ, A) + I_α(σ, B)",
    "wyd_partial_trace": "I_α(ρ, A⊗I) ≥ I_α(tr₂ρ, A)",
    "pure_variance": "I_α(ψ, X) = V(ψ, X) for pure ψ",
    "variance_dominance": "I_α(ρ, X) ≤ V(ρ, X)",
    "commuting_vanishes": "I_α(ρ, X) = 0 when [ρ, X] = 0",
    "unitary_state": "I_α(UρU†, X) = I_α(ρ, U†XU)",
    "unitary_joint": "I_α(UρU†, UXU†) = I_α(ρ, X)",
    "unitary_commuting": "I_α(UρU†, X) = I_α(ρ, X) when [U, X] = 0",
    "power_covariance": "(UρU†)^α = Uρ^αU†",
    "wyd_trace_commutator": "trace form of I_α equals the commutator form",
    "wyd_matrix_spectral": "matrix form of I_α equals the eigenvalue pair sum",
    "q_bounds": "0 ≤ Q_α ≤ n − 1",
    "luo_dominance": "Q_α ≤ L",
    "luo_equality": "Q_1/2 = L",
    "luo_strict": "Q_α < L for α ≠ 1/2 on a full-rank non-flat spectrum",
    "luo_pairs": "n − (Tr √ρ)² equals the pair sum",
    "q_pairs": "product form of Q_α equals the pair sum",
    "q_symmetry": "Q_α = Q_(1−α)",
    "q_convexity": "Q_α is convex in ρ",
    "q_unitary_invariance": "Q_α(UρU†) = Q_α(ρ)",
    "q_basis_sum": "Σ_j I_α(ρ, H_j) = Q_α for a rotated basis",
    "pseudo_additivity": "P(ρ⊗σ) + P(ρ)P(σ) = P(ρ) + P(σ)",
    "full_rank_limit": "Q_α at α → 0 and α → 1 matches the trace form",
    "small_alpha_bound": "Q_α ≤ 1e-3·n at α = 1e-4 for full-rank ρ",
    "rank_deficient_limit": "Q_α → n − rank as α → 0",
    "q_star_bounds": "0 ≤ Q* ≤ n − 1",
    "q_star_dominance": "Q* ≤ L",
    "q_star_convexity": "Q* is convex in ρ",
    "q_star_unitary_invariance": "Q*(UρU†) = Q*(ρ)",
    "q_star_quadrature": "closed form Q* equals the quadrature of Q_α",
    "critical_alpha_replay": "Q at the critical α equals Q*",
}


@dataclass
class PropertyResult:
    name: str
    evaluations: int = 0
    failures: int = 0
    worst: float = -np.inf

    @property
    def description(self):
        return PROPERTIES[self.name]

    @property
    def passed(self):
        return self.failures == 0

    def record(self, residual, limit):
        self.evaluations += 1
        self.worst = max(self.worst, float(residual))
        if not residual <= limit:
            self.failures += 1

    def merge(self, other):
        self.evaluations += other.evaluations
        self.failures += other.failures
        self.worst = max(self.worst, other.worst)

    def as_dict(self):
        return {
            "description": self.description,
            "evaluations": self.evaluations,
            "failures": self.failures,
            "worst_residual": self.worst if self.evaluations else None,
        }


class PropertyLedger:
    """Outcome counts per property, in the order of ``PROPERTIES``."""

    def __init__(self):
        self.results = {name: PropertyResult(name) for name in PROPERTIES}

    def record(self, name, residual, limit):
        if residual > limit:
            logger.debug("%s failed: residual %.3g > %.3g", name, residual, limit)
        self.results[name].record(residual, limit)

    def merge(self, other):
        for name, result in other.results.items():
            self.results[name].merge(result)
        return self

    def __iter__(self):
        return iter(self.results.values())

    def __getitem__(self, name):
        return self.results[name]

    @property
    def evaluations(self):
        return sum(result.evaluations for result in self)

    @property
    def failures(self):
        return sum(result.failures for result in self)

    @property
    def passed(self):
        return self.failures == 0

    def failed(self):
        return [result.name for result in self if not result.passed]

    def as_dict(self):
        return {
            "passed": self.passed,
            "evaluations": self.evaluations,
            "failures": self.failures,
            "properties": {result.name: result.as_dict() for result in self},
        }


def _scaled(tol, *values):
    return tol * max([1.0] + [abs(v) for v in values])


def _equal(ledger, name, left, right, tol):
    ledger.record(name, abs(left - right), _scaled(tol, left, right))


def _at_most(ledger, name, left, right, tol):
    ledger.record(name, left - right, _scaled(tol, left, right))


def _partners(samples):
    """Index of the next sample with the same dimension, or None."""
    partners = []
    for index, rho in enumerate(samples):
        same = [
            other
            for other in list(range(index + 1, len(samples))) + list(range(index))
            if samples[other].dim == rho.dim
        ]
        partners.append(same[0] if same else None)
    return partners


def _check_convexity(ledger, rho, partner, x, alphas, margin, rng):
    weight = rng.uniform()
    mixed = mixture([rho, partner], [weight, 1 - weight])

    def combined(function):
        return weight * function(rho) + (1 - weight) * function(partner)

    for alpha in alphas:
        _at_most(
            ledger,
            "wyd_convexity",
            wyd_info(mixed, x, alpha),
            combined(lambda state: wyd_info(state, x, alpha)),
            margin,
        )

        def cross(state):
            return np.trace(
                matrix_power(state, alpha).matrix
                @ x
                @ matrix_power(state, 1 - alpha).matrix
                @ x
            ).real

        _at_most(ledger, "wyd_trace_concavity", combined(cross), cross(mixed), margin)
        _at_most(
            ledger,
            "q_convexity",
            q_alpha(mixed, alpha),
            combined(lambda state: q_alpha(state, alpha)),
            margin,
        )
    _at_most(ledger, "q_star_convexity", q_star(mixed), combined(q_star), margin)


def _check_composites(ledger, rho, x, alphas, tol, margin, rng):
    n = rho.dim
    other = random_ginibre_density(AUXILIARY_DIM, seed=rng)
    other_x = random_observable(AUXILIARY_DIM, seed=rng)
    product = rho.tensor(other)
    total = tensor(x, np.eye(AUXILIARY_DIM)) + tensor(np.eye(n), other_x)
    joint = random_ginibre_density(n * AUXILIARY_DIM, seed=rng)
    reduced = joint.partial_trace(2, (n, AUXILIARY_DIM))
    extended = tensor(x, np.eye(AUXILIARY_DIM))
    # Same-dimension factor for the pseudo-additivity identity.
    factor = random_ginibre_density(n, seed=rng)
    square = rho.tensor(factor)
    for alpha in alphas:
        _equal(
            ledger,
            "wyd_additivity",
            wyd_info(product, total, alpha),
            wyd_info(rho, x, alpha) + wyd_info(other, other_x, alpha),
            tol,
        )
        _at_most(
            ledger,
            "wyd_partial_trace",
            wyd_info(reduced, x, alpha),
            wyd_info(joint, extended, alpha),
            margin,
        )
        p_square = q_alpha(square, alpha) / n**2
        p_rho = q_alpha(rho, alpha) / n
        p_factor = q_alpha(factor, alpha) / n
        _equal(
            ledger,
            "pseudo_additivity",
            p_square + p_rho * p_factor,
            p_rho + p_factor,
            tol,
        )


def _check_unitaries(ledger, rho, x, alphas, tol, rng):
    n = rho.dim
    unitary = random_unitary(n, seed=rng)
    rotated = rho.conjugate(unitary)
    pulled_back = conjugate_by(dagger(unitary), x)
    pushed = conjugate_by(unitary, x)
    commuting = scipy.linalg.expm(1j * rng.uniform(-np.pi, np.pi) * x)
    shifted = rho.conjugate(commuting)
    for alpha in alphas:
        reference = wyd_info(rho, x, alpha)
        _equal(
            ledger,
            "unitary_state",
            wyd_info(rotated, x, alpha),
            wyd_info(rho, pulled_back, alpha),
            tol,
        )
        _equal(
            ledger, "unitary_joint", wyd_info(rotated, pushed, alpha), reference, tol
        )
        _equal(
            ledger,
            "unitary_commuting",
            wyd_info(shifted, x, alpha),
            reference,
            tol,
        )
        covariance = max_abs(
            matrix_power(rotated, alpha).matrix
            - conjugate_by(unitary, matrix_power(rho, alpha).matrix)
        )
        ledger.record("power_covariance", covariance, tol)
        _equal(
            ledger,
            "q_unitary_invariance",
            q_alpha(rotated, alpha),
            q_alpha(rho, alpha),
            tol,
        )
    _equal(ledger, "q_star_unitary_invariance", q_star(rotated), q_star(rho), tol)


def _check_observable(ledger, rho, x, alphas, tol):
    psi = pure(rho.spectrum.eigenvectors[:, 0])
    eigenvectors = rho.spectrum.eigenvectors
    diagonal = eigenvectors @ np.diag(np.arange(rho.dim, dtype=float)) @ dagger(
        eigenvectors
    )
    spread = variance(rho, x)
    for alpha in alphas:
        info = wyd_info(rho, x, alpha)
        _equal(ledger, "pure_variance", wyd_info(psi, x, alpha), variance(psi, x), tol)
        _at_most(ledger, "variance_dominance", info, spread, tol)
        ledger.record(
            "commuting_vanishes",
            abs(wyd_info(rho, diagonal, alpha)),
            _scaled(tol, rho.dim),
        )
        _equal(
            ledger,
            "wyd_trace_commutator",
            info,
            wyd_info_commutator(rho, x, alpha),
            tol,
        )
        _equal(
            ledger, "wyd_matrix_spectral", info, wyd_info_eigenbasis(rho, x, alpha), tol
        )


def _check_state(ledger, rho, alphas, tol, loose_tol, rng):
    n = rho.dim
    luo = luo_uncertainty(rho)
    closed = q_star(rho)
    basis = rotate_basis(standard_basis(n), random_orthogonal(n * n, seed=rng))
    _equal(ledger, "luo_pairs", luo, luo_uncertainty_pairs(rho), tol)
    _equal(ledger, "luo_equality", q_alpha(rho, 0.5), luo, tol)
    for alpha in alphas:
        value = q_alpha(rho, alpha)
        ledger.record("q_bounds", max(-value, value - (n - 1)), _scaled(tol, n))
        _at_most(ledger, "luo_dominance", value, luo, tol)
        _equal(ledger, "q_pairs", value, q_alpha_pairs(rho, alpha), tol)
        _equal(ledger, "q_symmetry", value, q_alpha(rho, 1 - alpha), tol)
        _equal(
            ledger,
            "q_basis_sum",
            q_alpha_via_basis_sum(rho, basis, alpha),
            value,
            loose_tol,
        )
    ledger.record("q_star_bounds", max(-closed, closed - (n - 1)), _scaled(tol, n))
    _at_most(ledger, "q_star_dominance", closed, luo, tol)
    _equal(ledger, "q_star_quadrature", closed, q_star_quadrature(rho), loose_tol)
    _check_strict_dominance(ledger, rho, alphas, luo)
    _check_limits(ledger, rho, tol)
    _check_critical_alpha(ledger, rho, tol)


def _check_strict_dominance(ledger, rho, alphas, luo):
    """Q_α stays a positive distance below L away from α = 1/2.

    The (λ_max, λ_min) pair alone contributes at least √(λ_max λ_min) t² to
    L − Q_α, with t = (α − 1/2) log(λ_max / λ_min).  Flat spectra and α
    near 1/2 fall below that bound and are skipped.
    """
    if not rho.is_full_rank():
        return
    largest, smallest = rho.eigenvalues[0], rho.eigenvalues[-1]
    scale = np.sqrt(largest * smallest)
    spread = np.log(largest / smallest)
    for alpha in alphas:
        if scale * ((alpha - 0.5) * spread) ** 2 < STRICT_BOUND_FACTOR * STRICT_GAP:
            continue
        ledger.record("luo_strict", STRICT_GAP - (luo - q_alpha(rho, alpha)), 0.0)


def _check_limits(ledger, rho, tol):
    n = rho.dim
    if rho.is_full_rank():
        for alpha in (LIMIT_ALPHA, 1 - LIMIT_ALPHA):
            power = np.trace(matrix_power(rho, alpha).matrix).real
            complement = np.trace(matrix_power(rho, 1 - alpha).matrix).real
            _equal(
                ledger,
                "full_rank_limit",
                q_alpha(rho, alpha),
                n - power * complement,
                tol,
            )
        ledger.record(
            "small_alpha_bound", q_alpha(rho, LIMIT_ALPHA), FULL_RANK_LIMIT_FACTOR * n
        )
    else:
        ledger.record(
            "rank_deficient_limit",
            abs(q_alpha(rho, LIMIT_ALPHA) - (n - rho.rank())),
            RANK_LIMIT_TOL,
        )


def _check_critical_alpha(ledger, rho, tol):
    if not rho.is_full_rank():
        return
    try:
        root = critical_alpha(rho, tol)
    except (BracketError, SolverFailure) as exc:
        logger.debug("critical alpha failed: %s", exc)
        ledger.record("critical_alpha_replay", np.inf, tol)
        return
    if root is DEGENERATE:
        ledger.record("critical_alpha_replay", 0.0, tol)
        return
    residual = abs(q_alpha(rho, root) - q_star(rho))
    if not 0 < root <= 0.5:
        residual = np.inf
    ledger.record("critical_alpha_replay", residual, tol)


def check_sample(
    rho,
    x,
    alphas=VERIFY_ALPHAS,
    tol=VERIFY_TOL,
    loose_tol=VERIFY_LOOSE_TOL,
    margin=CONVEXITY_MARGIN,
    seed=None,
    partner=None,
):
    """All predicates for one state and one observable, as a fresh ledger.

    ``partner`` is the second state of the two-point mixtures, a random state
    of the same dimension when not given.
    """
    rng = np.random.default_rng(seed)
    rho = rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)
    x = np.asarray(x if isinstance(x, Observable) else Observable(x))
    if x.shape != (rho.dim, rho.dim):
        raise DimensionMismatchError(
            f"observable of shape {x.shape} paired with a state of dimension "
            f"{rho.dim}",
            [x.shape, (rho.dim, rho.dim)],
        )
    alphas = [AlphaParameter(alpha) for alpha in alphas]
    if partner is None:
        partner = random_ginibre_density(rho.dim, seed=rng)
    ledger = PropertyLedger()
    _check_convexity(ledger, rho, partner, x, alphas, margin, rng)
    _check_composites(ledger, rho, x, alphas, tol, margin, rng)
    _check_unitaries(ledger, rho, x, alphas, tol, rng)
    _check_observable(ledger, rho, x, alphas, tol)
    _check_state(ledger, rho, alphas, tol, loose_tol, rng)
    return ledger


def check_properties(
    rho_samples,
    observable_samples,
    alphas=VERIFY_ALPHAS,
    tol=VERIFY_TOL,
    loose_tol=VERIFY_LOOSE_TOL,
    margin=CONVEXITY_MARGIN,
    seed=VERIFY_SEED,
    progress=None,
):
    """Check every property on every (state, observable) pair.

    The two sample lists are paired by position.  ``progress`` optionally
    wraps the iteration over samples, for instance ``Bar(...).iter``.
    """
    rho_samples = [
        rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)
        for rho in rho_samples
    ]
    observable_samples = list(observable_samples)
    if not rho_samples or not observable_samples:
        raise QumetricsError("property checks need at least one state and observable")
    if len(rho_samples) != len(observable_samples):
        raise QumetricsError(
            f"got {len(rho_samples)} states but {len(observable_samples)} observables"
        )
    if not alphas:
        raise QumetricsError("property checks need at least one alpha")
    partners = _partners(rho_samples)
    seeds = np.random.SeedSequence(seed).spawn(len(rho_samples))
    jobs = list(zip(rho_samples, observable_samples, partners, seeds))
    if progress is not None:
        jobs = progress(jobs)
    ledger = PropertyLedger()
    for rho, x, partner, child in jobs:
        ledger.merge(
            check_sample(
                rho,
                x,
                alphas=alphas,
                tol=tol,
                loose_tol=loose_tol,
                margin=margin,
                seed=child,
                partner=None if partner is None else rho_samples[partner],
            )
        )
    return ledger
