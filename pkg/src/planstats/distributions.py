"""Cumulative distribution functions for converting statistics to p-values.

Provides the standard normal, Student t and F CDFs.  The t and F CDFs are
built on a regularized incomplete beta function evaluated by a modified
Lentz continued fraction, with the symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
applied so the fraction is always evaluated in its fast-converging region.
"""

from __future__ import annotations

import math

_CF_MAX_ITER = 300
_CF_EPS = 1e-15
_CF_TINY = 1e-300


class DomainError(ValueError):
    """Argument outside the mathematical domain of the function."""


class NonFiniteInput(DomainError):
    """Raised when a finite argument is required."""


def std_normal_cdf(z: float) -> float:
    """Phi(z), the standard normal CDF.

    Raises:
        NonFiniteInput: if z is NaN or infinite.
    """
    if not math.isfinite(z):
        raise NonFiniteInput(f"z must be finite, got {z!r}")
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def two_sided_p_from_z(z: float) -> float:
    """Two-sided p-value for a normal statistic: 2(1 - Phi(|z|))."""
    return 2.0 * (1.0 - std_normal_cdf(abs(z)))


def _beta_cont_frac(a: float, b: float, x: float) -> float:
    # Modified Lentz evaluation of the continued fraction in the
    # incomplete beta function (converges fast for x < (a+1)/(a+b+2)).
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise DomainError(
        f"incomplete beta continued fraction failed to converge for a={a}, b={b}, x={x}"
    )


def regularized_incomplete_beta(x: float, a: float, b: float) -> float:
    """I_x(a, b), the regularized incomplete beta function.

    Args:
        x: evaluation point in [0, 1].
        a: first shape parameter, > 0.
        b: second shape parameter, > 0.

    Raises:
        DomainError: if the arguments are outside the valid domain.
    """
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"x must lie in [0,1], got {x!r}")
    if not (a > 0.0 and b > 0.0) or not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError(f"shape parameters must be positive finite, got a={a!r}, b={b!r}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        value = front * _beta_cont_frac(a, b, x) / a
    else:
        value = 1.0 - front * _beta_cont_frac(b, a, 1.0 - x) / b
    # continued fraction can overshoot the boundary by a few ulps
    return min(1.0, max(0.0, value))


def student_t_cdf(t: float, df: int) -> float:
    """P(T <= t) for Student's t with df degrees of freedom.

    Accepts t = +/-inf (degenerate statistics map to p = 0 upstream).

    Raises:
        DomainError: if df < 1 or t is NaN.
    """
    if df < 1:
        raise DomainError(f"df must be >= 1, got {df!r}")
    if math.isnan(t):
        raise DomainError("t is NaN")
    if math.isinf(t):
        return 1.0 if t > 0 else 0.0
    if t == 0.0:
        return 0.5
    tail = 0.5 * regularized_incomplete_beta(df / (df + t * t), df / 2.0, 0.5)
    return 1.0 - tail if t > 0 else tail


def two_sided_p_from_t(t: float, df: int) -> float:
    """Two-sided p-value for a t statistic: 2 P(T >= |t|)."""
    if math.isinf(t):
        return 0.0
    return 2.0 * (1.0 - student_t_cdf(abs(t), df))


def f_cdf(x: float, d1: int, d2: int) -> float:
    """P(F <= x) for the F distribution with (d1, d2) degrees of freedom.

    Accepts x = +inf for degenerate statistics.

    Raises:
        DomainError: if x < 0 or either df is < 1.
    """
    if d1 < 1 or d2 < 1:
        raise DomainError(f"degrees of freedom must be >= 1, got ({d1!r}, {d2!r})")
    if math.isnan(x) or x < 0.0:
        raise DomainError(f"x must be >= 0, got {x!r}")
    if math.isinf(x):
        return 1.0
    if x == 0.0:
        return 0.0
    return regularized_incomplete_beta(d1 * x / (d1 * x + d2), d1 / 2.0, d2 / 2.0)
