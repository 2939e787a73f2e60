"""Python access to the blow-up laboratory core."""

import json

from . import _blowup
from ._blowup import (
    ConfigError,
    ResolutionError,
    condition_A2,
    min_admissible_k,
    normalize_config_text,
    power_case,
    power_diff_bound,
    profile_value,
    serialize_config,
)

__all__ = [
    "ConfigError",
    "ResolutionError",
    "condition_A2",
    "evolve_gaussian",
    "exponent_table",
    "gaussian_norms",
    "min_admissible_k",
    "normalize_config_text",
    "power_case",
    "power_diff_bound",
    "profile_value",
    "read_params",
    "serialize_config",
    "validate_assumptions",
    "verify_scaling",
]


def validate_assumptions(dim, alpha, lambda_re, lambda_im):
    return json.loads(_blowup.validate_assumptions(dim, alpha, lambda_re, lambda_im))


def exponent_table(dim, alpha, k=float("inf")):
    return json.loads(_blowup.exponent_table(dim, alpha, k))


def verify_scaling(dim, alpha, lambda_re, lambda_im, k, quantity, times, p=2.0):
    return json.loads(_blowup.verify_scaling(dim, alpha, lambda_re, lambda_im, k, quantity, list(times), p))


def gaussian_norms(mode, dim, points, radius, alpha=2.0):
    return json.loads(_blowup.gaussian_norms(mode, dim, points, radius, alpha))


def read_params(text):
    return json.loads(_blowup.read_params(text))


def evolve_gaussian(dim, alpha, lambda_re, lambda_im, mode, points, radius, amplitude, dt, t_end,
                    validation_mode=False):
    out = _blowup.evolve_gaussian(dim, alpha, lambda_re, lambda_im, mode, points, radius, amplitude,
                                  dt, t_end, validation_mode)
    out["report"] = json.loads(out["report"])
    return out
