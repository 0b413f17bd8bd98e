"""Transient analysis of the time-fractional linear birth-death process
with immigration at extinction.

The package computes state probabilities and moments three independent
ways and lets them check each other:

* a decomposition series with exact integer coefficients (equal rates)
  or floating coefficients (general rates),
* closed Mittag-Leffler forms for the pure-birth and two-state death
  special cases,
* oracles: a classical master-equation integrator (``nu = 1``) and a
  time-changed Gillespie Monte Carlo sampler.
"""

from .errors import (
    AccuracyLossError,
    DomainError,
    FracbdiError,
    ParameterError,
    QuadratureError,
    ResourceLimitError,
    RunawayError,
    TableOverflowError,
)
from .params import ModelParams
from .special import (
    check_frac_order,
    frac_integral_power,
    log_gamma,
    mittag_leffler,
    mittag_leffler_deriv,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyLossError",
    "DomainError",
    "FracbdiError",
    "ModelParams",
    "ParameterError",
    "QuadratureError",
    "ResourceLimitError",
    "RunawayError",
    "TableOverflowError",
    "check_frac_order",
    "frac_integral_power",
    "log_gamma",
    "mittag_leffler",
    "mittag_leffler_deriv",
    "__version__",
]
