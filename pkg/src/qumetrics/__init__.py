# Numerical tolerances.  All residuals are measured in the max-entry norm.
HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
# Eigenvalues within PSD_TOL * max(1, largest eigenvalue) of zero are clamped to zero.
PSD_TOL = 1e-10
IMAGINARY_TOL = 1e-10
UNITARY_TOL = 1e-10
ORTHONORMAL_TOL = 1e-12

# Averaging over alpha and the critical alpha solve.
QUADRATURE_POINTS = 64
BISECTION_MAX_ITER = 200
CRITICAL_ALPHA_EPSILON = 1e-6
DEFAULT_ROOT_TOL = 1e-10

# Defaults for the command line.
DEFAULT_ALPHAS = (0.25, 0.5, 0.75)
DEFAULT_Q = 2.0
VERIFY_ALPHAS = (0.1, 0.25, 0.5, 0.75, 0.9)
VERIFY_DIMS = (2, 3, 4, 6)
VERIFY_SAMPLES = 200
VERIFY_SEED = 2008
VERIFY_TOL = 1e-8
# Tolerance for the comparisons that go through a sum over n**2 observables
# or through quadrature.
VERIFY_LOOSE_TOL = 1e-6
CONVEXITY_MARGIN = 1e-9
LAMBDA_STEPS = 51
ALPHA_STEPS = 99
ALPHA_MIN = 0.01
ALPHA_MAX = 0.99
LAMBDA_MIN = 0.25
LAMBDA_MAX = 1.0
OUTPUT_ENV_VAR = "QUMETRICS_OUT"

# Values printed for Hansen's state, compared against by `qumetrics hansen`.
PUBLISHED_HANSEN = {
    "S": 0.60319,
    "L": 1.5385,
    "Q_1/4": 1.2213,
    "Q*": 1.0748,
}
# Only these must match, the printed entropy is known to disagree.
HANSEN_CHECKED = ("L", "Q_1/4", "Q*")
HANSEN_TOLERANCE = 5e-4

# Process exit codes.
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_FAILURE = 3
