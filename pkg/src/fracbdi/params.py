"""Model parameterisations for the birth-death chain and its special cases."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError
from .special import check_frac_order


@dataclass(frozen=True)
class ModelParams:
    """Rates of the linear birth-death chain with immigration at extinction.

    The chain moves up at rate ``alpha`` from state 0 (immigration) and at
    rate ``n*lam`` from state n >= 1, and moves down at rate ``n*mu``.
    ``nu`` is the fractional order of the random time change (``nu = 1``
    recovers the classical chain).
    """

    alpha: float
    lam: float
    mu: float
    nu: float = 1.0

    def __post_init__(self):
        for name in ("alpha", "lam", "mu"):
            v = float(getattr(self, name))
            if math.isnan(v) or v < 0.0:
                raise ParameterError(f"{name} must be a nonnegative rate, got {v}")
            object.__setattr__(self, name, v)
        object.__setattr__(self, "nu", check_frac_order(self.nu))
        if self.alpha <= 0.0:
            raise ParameterError("immigration rate alpha must be positive")
        if self.lam == 0.0 and self.mu == 0.0:
            raise ParameterError(
                "lam and mu cannot both vanish (the chain would only immigrate once)"
            )

    @property
    def equal_rates(self) -> bool:
        return self.alpha == self.lam == self.mu

    def birth_rate(self, n: int) -> float:
        """Up-rate out of state n (``alpha`` at 0, ``n*lam`` above)."""
        return self.alpha if n == 0 else n * self.lam

    def death_rate(self, n: int) -> float:
        """Down-rate out of state n (``n*mu``, zero at 0)."""
        return 0.0 if n <= 0 else n * self.mu
