"""Decomposition-series engine for the fractional birth-death chain.

The master equations are solved by the iterated fractional-integral
recurrence; each state probability becomes a power series in ``t**nu``
whose coefficients obey a triangular recurrence.  With equal rates
(``alpha = lam = mu``) the coefficients are exact nonnegative integers
and the series for state n is

    p(n, t) = sum_{k >= n} (-1)^(k-n) * c[n,k] * (lam * t**nu)^k / Gamma(k*nu + 1).

The coefficients grow factorially in k, so the series has a finite
convergence radius at ``nu = 1`` (about ``lam * t < 1``) and is a
small-``t`` asymptotic expansion for ``nu < 1``.  Every evaluated sum
therefore reports a truncation-tail estimate and a cancellation estimate,
and evaluation refuses outright once cancellation passes 1e-6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import (
    AccuracyLossError,
    DomainError,
    ParameterError,
    ResourceLimitError,
    TableOverflowError,
)
from .params import ModelParams
from .special import MACHINE_EPS
from .util import CompensatedSum

# Tables beyond this order are refused (rows cost O(K^2) big-int work).
ORDER_LIMIT = 1000

# Hard refusal threshold on the cancellation estimate of any reported sum.
CANCELLATION_LIMIT = 1e-6

_LOG_DBL_MAX = 709.782712893384


@dataclass(frozen=True)
class TruncatedSeries:
    """A partial series sum together with its trustworthiness estimates.

    ``tail_estimate`` is the magnitude of the first omitted term and
    ``cancellation_estimate`` is (max partial-sum magnitude) * machine
    epsilon; the value only deserves trust down to their sum.
    """

    value: float
    order_used: int
    tail_estimate: float
    cancellation_estimate: float

    @property
    def error_bound(self) -> float:
        return self.tail_estimate + self.cancellation_estimate


@dataclass(frozen=True)
class Pmf:
    """State probabilities at one time point with per-state error estimates."""

    time: float
    probs: np.ndarray
    regularity_defect: float
    per_state_error: np.ndarray


@dataclass(frozen=True)
class CoefficientTable:
    """Triangular series-coefficient array c[n,k] (or C[n,k]), 0 <= n <= k.

    ``flavor`` is "equal-rates" (exact integers, signs implicit) or
    "general" (floats that already carry rates and signs).
    """

    max_order: int
    flavor: str
    exact_rows: tuple[tuple[int, ...], ...] | None = None
    general_rows: tuple[tuple[float, ...], ...] | None = None

    def coeff(self, n: int, k: int):
        """Entry at (n, k); zero whenever n > k (vanishing law) or n < 0."""
        if n < 0 or n > k:
            return 0 if self.flavor == "equal-rates" else 0.0
        if k > self.max_order:
            raise DomainError(f"order {k} exceeds table order {self.max_order}")
        rows = self.exact_rows if self.flavor == "equal-rates" else self.general_rows
        return rows[k][n]

    def row(self, k: int):
        rows = self.exact_rows if self.flavor == "equal-rates" else self.general_rows
        return rows[k]


@lru_cache(maxsize=16)
def _equal_rows(K: int) -> tuple[tuple[int, ...], ...]:
    rows = [(1,)]
    for k in range(K):
        prev = rows[-1]

        def c(n: int) -> int:
            return prev[n] if 0 <= n < len(prev) else 0

        new = [c(0) + c(1), c(0) + 2 * (c(1) + c(2))]
        for n in range(2, k + 2):
            new.append((n - 1) * c(n - 1) + 2 * n * c(n) + (n + 1) * c(n + 1))
        rows.append(tuple(new[: k + 2]))
    return tuple(rows)


def coeff_table_equal_rates(K: int) -> CoefficientTable:
    """Exact integer coefficient rows 0..K for the equal-rates chain.

    Row k+1 follows from row k by
    ``c[n,k+1] = (n-1) c[n-1,k] + 2n c[n,k] + (n+1) c[n+1,k]`` with the
    boundary forms ``c[0,k+1] = c[0,k] + c[1,k]`` and
    ``c[1,k+1] = c[0,k] + 2(c[1,k] + c[2,k])``.
    """
    if K < 0:
        raise DomainError(f"table order must be >= 0, got {K}")
    if K > ORDER_LIMIT:
        raise ResourceLimitError(f"table order {K} exceeds the limit {ORDER_LIMIT}")
    return CoefficientTable(max_order=K, flavor="equal-rates", exact_rows=_equal_rows(K))


@lru_cache(maxsize=16)
def _general_rows(alpha: float, lam: float, mu: float, K: int) -> tuple[tuple[float, ...], ...]:
    def lam_n(n: int) -> float:
        return alpha if n == 0 else n * lam

    def mu_n(n: int) -> float:
        return 0.0 if n <= 0 else n * mu

    rows = [(1.0,)]
    for k in range(1, K + 1):
        prev = rows[-1]

        def c(n: int) -> float:
            return prev[n] if 0 <= n < len(prev) else 0.0

        new = []
        for n in range(k + 1):
            v = -(lam_n(n) + mu_n(n)) * c(n) + lam_n(n - 1) * c(n - 1) + mu_n(n + 1) * c(n + 1)
            if not math.isfinite(v):
                raise TableOverflowError(n, k)
            new.append(v)
        rows.append(tuple(new))
    return tuple(rows)


def coeff_table_general(params: ModelParams, K: int) -> CoefficientTable:
    """Floating coefficient rows for arbitrary rates.

    ``C[n,k]`` satisfies
    ``C[n,k] = -(lam_n + mu_n) C[n,k-1] + lam_{n-1} C[n-1,k-1] + mu_{n+1} C[n+1,k-1]``
    with ``C[0,0] = 1``, so that the k-th series component of state n is
    ``C[n,k] * t^(k*nu) / Gamma(k*nu + 1)``.
    """
    if K < 0:
        raise DomainError(f"table order must be >= 0, got {K}")
    if K > ORDER_LIMIT:
        raise ResourceLimitError(f"table order {K} exceeds the limit {ORDER_LIMIT}")
    return CoefficientTable(
        max_order=K,
        flavor="general",
        general_rows=_general_rows(params.alpha, params.lam, params.mu, K),
    )


def _int_coeff_term(c: int, k: int, x: float, log_x: float, nu: float) -> float:
    """|c| * x^k / Gamma(k*nu + 1) for an exact integer c >= 0 and x > 0."""
    if c == 0:
        return 0.0
    lg = math.lgamma(k * nu + 1.0)
    if c.bit_length() < 1000 and lg < _LOG_DBL_MAX:
        xk = x**k
        if xk > 5e-300:
            try:
                return float(c) * xk / math.exp(lg)
            except OverflowError:
                pass
    log_term = math.log(c) + k * log_x - lg
    if log_term > _LOG_DBL_MAX:
        raise AccuracyLossError(
            f"series component at order k={k} overflows the double range"
        )
    return math.exp(log_term)


def _float_coeff_term(C: float, k: int, x: float, log_x: float, nu: float) -> float:
    """C * x^k / Gamma(k*nu + 1) for a float coefficient and x > 0."""
    if C == 0.0:
        return 0.0
    lg = math.lgamma(k * nu + 1.0)
    xk = x**k
    if xk > 5e-300 and lg < _LOG_DBL_MAX:
        return C * xk / math.exp(lg)
    log_term = math.log(abs(C)) + k * log_x - lg
    if log_term > _LOG_DBL_MAX:
        raise AccuracyLossError(
            f"series component at order k={k} overflows the double range"
        )
    return math.copysign(math.exp(log_term), C)


def series_component(n: int, k: int, params: ModelParams, t: float) -> float:
    """The k-th series component of state n at time t (zero when n > k)."""
    if n < 0 or k < 0:
        raise DomainError("state and order must be nonnegative")
    if t < 0.0:
        raise DomainError(f"time must be nonnegative, got {t}")
    if n > k:
        return 0.0
    if t == 0.0:
        return 1.0 if k == 0 else 0.0
    if params.equal_rates:
        table = coeff_table_equal_rates(k)
        x = params.lam * t**params.nu
        sign = -1.0 if (k - n) % 2 else 1.0
        return sign * _int_coeff_term(table.coeff(n, k), k, x, math.log(x), params.nu)
    table = coeff_table_general(params, k)
    x = t**params.nu
    return _float_coeff_term(table.coeff(n, k), k, x, math.log(x), params.nu)


def _sum_components(
    n: int, params: ModelParams, t: float, K: int, table: CoefficientTable
) -> TruncatedSeries:
    """Compensated sum of components k = n..K plus the k = K+1 tail term."""
    nu = params.nu
    equal = params.equal_rates
    x = (params.lam * t**nu) if equal else t**nu
    log_x = math.log(x)
    acc = CompensatedSum()
    for k in range(n, K + 1):
        if equal:
            sign = -1.0 if (k - n) % 2 else 1.0
            term = sign * _int_coeff_term(table.coeff(n, k), k, x, log_x, nu)
        else:
            term = _float_coeff_term(table.coeff(n, k), k, x, log_x, nu)
        acc.add(term)
    if equal:
        tail = _int_coeff_term(table.coeff(n, K + 1), K + 1, x, log_x, nu)
    else:
        tail = abs(_float_coeff_term(table.coeff(n, K + 1), K + 1, x, log_x, nu))
    return TruncatedSeries(
        value=acc.total,
        order_used=K,
        tail_estimate=tail,
        cancellation_estimate=acc.peak * MACHINE_EPS,
    )


def _table_for(params: ModelParams, K: int) -> CoefficientTable:
    if params.equal_rates:
        return coeff_table_equal_rates(K + 1)
    return coeff_table_general(params, K + 1)


def _check_cancellation(ts: TruncatedSeries, what: str) -> TruncatedSeries:
    if ts.cancellation_estimate > CANCELLATION_LIMIT:
        raise AccuracyLossError(
            f"{what}: cancellation estimate {ts.cancellation_estimate:.3e} exceeds "
            f"{CANCELLATION_LIMIT:.0e}; the partial sums grew too large for double "
            f"precision (value {ts.value:.6e}, tail {ts.tail_estimate:.3e})",
            result=ts,
        )
    return ts


def state_probability(n: int, t: float, params: ModelParams, K: int) -> TruncatedSeries:
    """Series state probability p(n, t) truncated at order K.

    Raises :class:`AccuracyLossError` (with the computed result attached)
    once the cancellation estimate passes 1e-6; the estimates should be
    inspected even below that, because for ``nu < 1`` the series is
    asymptotic and the tail estimate is the real accuracy limit.
    """
    if n < 0:
        raise DomainError("state must be nonnegative")
    if K < n:
        raise DomainError(f"truncation order K={K} must be at least n={n}")
    if t < 0.0:
        raise DomainError(f"time must be nonnegative, got {t}")
    if t == 0.0:
        return TruncatedSeries(1.0 if n == 0 else 0.0, K, 0.0, 0.0)
    ts = _sum_components(n, params, t, K, _table_for(params, K))
    return _check_cancellation(ts, f"state_probability(n={n}, t={t})")


def pmf(t: float, params: ModelParams, K: int, n_max: int) -> Pmf:
    """State probabilities 0..n_max at time t with the regularity defect.

    The defect |sum - 1| telescopes exactly in the coefficient identities,
    so its size measures the truncation left out by (K, n_max).
    """
    if n_max < 0:
        raise DomainError("n_max must be nonnegative")
    if n_max > K:
        raise DomainError(f"n_max={n_max} must not exceed the series order K={K}")
    if t < 0.0:
        raise DomainError(f"time must be nonnegative, got {t}")
    if t == 0.0:
        probs = np.zeros(n_max + 1)
        probs[0] = 1.0
        return Pmf(0.0, probs, 0.0, np.zeros(n_max + 1))
    table = _table_for(params, K)
    probs = np.empty(n_max + 1)
    errors = np.empty(n_max + 1)
    acc = CompensatedSum()
    worst: TruncatedSeries | None = None
    for n in range(n_max + 1):
        ts = _sum_components(n, params, t, K, table)
        probs[n] = ts.value
        errors[n] = ts.error_bound
        acc.add(ts.value)
        if worst is None or ts.cancellation_estimate > worst.cancellation_estimate:
            worst = ts
    result = Pmf(t, probs, abs(acc.total - 1.0), errors)
    if worst.cancellation_estimate > CANCELLATION_LIMIT:
        raise AccuracyLossError(
            f"pmf(t={t}): cancellation estimate {worst.cancellation_estimate:.3e} "
            f"exceeds {CANCELLATION_LIMIT:.0e}",
            result=result,
        )
    return result


def _require_equal_rates(params: ModelParams, what: str) -> None:
    if not params.equal_rates:
        raise ParameterError(
            f"{what} is only available for equal rates (alpha = lam = mu); "
            f"got alpha={params.alpha}, lam={params.lam}, mu={params.mu}"
        )


def _moment_series(params: ModelParams, t: float, K: int, shift: int, scale: float) -> TruncatedSeries:
    """sum_k c[0,k] (-1)^k x^(k+shift) / Gamma((k+shift) nu + 1), times scale."""
    nu = params.nu
    x = params.lam * t**nu
    if x == 0.0:
        return TruncatedSeries(0.0, K, 0.0, 0.0)
    log_x = math.log(x)
    table = coeff_table_equal_rates(K + 1)
    acc = CompensatedSum()
    for k in range(K + 1):
        mag = _int_coeff_term(table.coeff(0, k), k + shift, x, log_x, nu)
        acc.add(scale * mag if k % 2 == 0 else -scale * mag)
    tail = scale * _int_coeff_term(table.coeff(0, K + 1), K + 1 + shift, x, log_x, nu)
    return TruncatedSeries(acc.total, K, abs(tail), acc.peak * MACHINE_EPS)


def mean(t: float, params: ModelParams, K: int) -> TruncatedSeries:
    """Equal-rates population mean as a truncated series."""
    _require_equal_rates(params, "the mean series")
    if t < 0.0:
        raise DomainError(f"time must be nonnegative, got {t}")
    ts = _moment_series(params, t, K, shift=1, scale=1.0)
    return _check_cancellation(ts, f"mean(t={t})")


def second_factorial_moment(t: float, params: ModelParams, K: int) -> TruncatedSeries:
    """Equal-rates E[N(N-1)] as a truncated series."""
    _require_equal_rates(params, "the second-factorial-moment series")
    if t < 0.0:
        raise DomainError(f"time must be nonnegative, got {t}")
    ts = _moment_series(params, t, K, shift=2, scale=2.0)
    return _check_cancellation(ts, f"second_factorial_moment(t={t})")


def variance(t: float, params: ModelParams, K: int) -> TruncatedSeries:
    """Equal-rates variance: the grouped moment series minus mean squared."""
    _require_equal_rates(params, "the variance series")
    if t < 0.0:
        raise DomainError(f"time must be nonnegative, got {t}")
    nu = params.nu
    x = params.lam * t**nu
    if x == 0.0:
        return TruncatedSeries(0.0, K, 0.0, 0.0)
    log_x = math.log(x)
    table = coeff_table_equal_rates(K + 1)
    acc = CompensatedSum()
    for k in range(K + 1):
        c = table.coeff(0, k)
        mag = 2.0 * _int_coeff_term(c, k + 2, x, log_x, nu) + _int_coeff_term(
            c, k + 1, x, log_x, nu
        )
        acc.add(mag if k % 2 == 0 else -mag)
    c_tail = table.coeff(0, K + 1)
    tail = 2.0 * _int_coeff_term(c_tail, K + 3, x, log_x, nu) + _int_coeff_term(
        c_tail, K + 2, x, log_x, nu
    )
    m = mean(t, params, K)
    value = acc.total - m.value * m.value
    ts = TruncatedSeries(
        value=value,
        order_used=K,
        tail_estimate=tail + 2.0 * abs(m.value) * m.tail_estimate,
        cancellation_estimate=acc.peak * MACHINE_EPS
        + 2.0 * abs(m.value) * m.cancellation_estimate,
    )
    ts = _check_cancellation(ts, f"variance(t={t})")
    if ts.value < -(ts.error_bound + 1e-10):
        raise AccuracyLossError(
            f"variance(t={t}) is negative beyond its error budget", result=ts
        )
    return ts
