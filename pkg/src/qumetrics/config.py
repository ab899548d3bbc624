"""Options of one command run, checked in one place."""

from dataclasses import dataclass
from dataclasses import fields
from qumetrics import ALPHA_MAX
from qumetrics import ALPHA_MIN
from qumetrics import ALPHA_STEPS
from qumetrics import CONVEXITY_MARGIN
from qumetrics import DEFAULT_ALPHAS
from qumetrics import DEFAULT_Q
from qumetrics import DEFAULT_ROOT_TOL
from qumetrics import LAMBDA_MAX
from qumetrics import LAMBDA_MIN
from qumetrics import LAMBDA_STEPS
from qumetrics import OUTPUT_ENV_VAR
from qumetrics import VERIFY_DIMS
from qumetrics import VERIFY_LOOSE_TOL
from qumetrics import VERIFY_SAMPLES
from qumetrics import VERIFY_SEED
from qumetrics import VERIFY_TOL
from qumetrics.errors import ConfigurationError
from qumetrics.utils import parse_float_list
from qumetrics.utils import parse_int_list

import math
import os
import pathlib


def resolve_output_dir(option=None, default=None, environ=None):
    """The explicit option, else $QUMETRICS_OUT, else the default, else the cwd."""
    if environ is None:
        environ = os.environ
    for candidate in (option, environ.get(OUTPUT_ENV_VAR), default):
        if candidate:
            return pathlib.Path(candidate)
    return pathlib.Path.cwd()


@dataclass(frozen=True)
class RunConfig:
    command: str
    lambda_steps: int = LAMBDA_STEPS
    alpha_steps: int = ALPHA_STEPS
    lambda_min: float = LAMBDA_MIN
    lambda_max: float = LAMBDA_MAX
    alpha_min: float = ALPHA_MIN
    alpha_max: float = ALPHA_MAX
    alphas: tuple = DEFAULT_ALPHAS
    q: float = DEFAULT_Q
    tol: float = VERIFY_TOL
    loose_tol: float = VERIFY_LOOSE_TOL
    margin: float = CONVEXITY_MARGIN
    root_tol: float = DEFAULT_ROOT_TOL
    out: str = None
    seed: int = VERIFY_SEED
    samples: int = VERIFY_SAMPLES
    dims: tuple = VERIFY_DIMS

    @classmethod
    def from_options(cls, command, **options):
        """Build a validated config from command line values.

        Unknown keys (like ``verbose``) and None values are ignored, so the
        keyword arguments of a command can be passed on as they are.
        """
        known = {f.name for f in fields(cls)}
        values = {k: v for k, v in options.items() if k in known and v is not None}
        if "alphas" in values:
            values["alphas"] = parse_float_list(values["alphas"], "alpha")
        if "dims" in values:
            values["dims"] = parse_int_list(values["dims"], "dims")
        for name in ("lambda_steps", "alpha_steps", "seed", "samples"):
            if name in values:
                values[name] = _convert(values[name], int, name)
        for name in (
            "lambda_min",
            "lambda_max",
            "alpha_min",
            "alpha_max",
            "q",
            "tol",
            "loose_tol",
            "margin",
            "root_tol",
        ):
            if name in values:
                values[name] = _convert(values[name], float, name)
        return cls(command=command, **values).validate()

    def validate(self):
        if self.lambda_steps < 2 or self.alpha_steps < 2:
            raise ConfigurationError(
                f"grid resolutions must be at least 2, got {self.lambda_steps} "
                f"lambda steps and {self.alpha_steps} alpha steps"
            )
        if not 0.0 <= self.lambda_min < self.lambda_max <= 1.0:
            raise ConfigurationError(
                f"lambda range must satisfy 0 <= min < max <= 1, got "
                f"[{self.lambda_min}, {self.lambda_max}]"
            )
        if not 0.0 < self.alpha_min < self.alpha_max < 1.0:
            raise ConfigurationError(
                f"alpha range must satisfy 0 < min < max < 1, got "
                f"[{self.alpha_min}, {self.alpha_max}]"
            )
        if not self.alphas or not all(0.0 < alpha < 1.0 for alpha in self.alphas):
            raise ConfigurationError(
                f"alpha values must lie strictly between 0 and 1, got {self.alphas}"
            )
        if not (self.q > 0 and self.q != 1 and math.isfinite(self.q)):
            raise ConfigurationError(f"q must be positive and not 1, got {self.q}")
        for name in ("tol", "loose_tol", "margin", "root_tol"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ConfigurationError(f"{name} must be positive, got {value}")
        if self.samples < 1:
            raise ConfigurationError(f"samples must be at least 1, got {self.samples}")
        if not self.dims or any(dim < 2 for dim in self.dims):
            raise ConfigurationError(f"dimensions must be at least 2, got {self.dims}")
        return self

    def output_dir(self, default=None, environ=None):
        return resolve_output_dir(self.out, default, environ)


def _convert(value, kind, name):
    try:
        converted = kind(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{name}: cannot parse {value!r}") from None
    if kind is int and isinstance(value, float) and value != converted:
        raise ConfigurationError(f"{name}: expected an integer, got {value!r}")
    return converted
