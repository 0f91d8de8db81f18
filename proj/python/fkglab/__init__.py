"""Spectral laboratory for fractional wave equations with singular mass."""

from ._fkglab import (
    ConfigError,
    NumericalError,
    Problem,
    ResolutionError,
    fit_exponent,
    negligibility_check,
    selftest,
)

__all__ = [
    "ConfigError",
    "NumericalError",
    "Problem",
    "ResolutionError",
    "fit_exponent",
    "negligibility_check",
    "selftest",
]
