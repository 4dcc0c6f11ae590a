"""Closed-form bounds for |L(1+it, chi)| and |zeta(1+it, c)|, and the residual functions behind them.

Residuals are sums of named terms. Each term is written once against a numeric
context, so the same expression evaluates in plain floats or in mpmath's
directed-rounding interval arithmetic, and each term carries its coded partial
derivatives for the monotonicity checks in :mod:`lbounds.certify`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Tuple

from mpmath import iv

from .balls import EPSILON
from .characters import totient
from .types import EULER_GAMMA

COROLLARY_SHIFT = Fraction(109, 2)
THEOREM2_SHIFT = Fraction(14, 5)
BACKLUND_M = 3.0
PARTIAL_SUMMATION_M = 2.0
PARTIAL_SUMMATION_B = THEOREM2_SHIFT
THEOREM1_T_MIN = 50.0


# numeric contexts --------------------------------------------------------------
class FloatContext:
    """Round-to-nearest doubles; upper bounds inflate every term by (1 + 8 eps)."""

    name = "inflate-8eps"

    def const(self, value) -> float:
        return float(value)

    def log(self, value) -> float:
        return math.log(value)

    def exp(self, value) -> float:
        return math.exp(value)

    def euler(self) -> float:
        return EULER_GAMMA

    def total(self, values: Iterable[float]) -> float:
        return math.fsum(values)

    def upper_sum(self, values: Iterable[float]) -> float:
        inflation = 8.0 * EPSILON
        inflated = [v * (1.0 + inflation) if v > 0 else v * (1.0 - inflation) for v in values]
        return math.nextafter(math.fsum(inflated), math.inf)


class IntervalContext:
    """mpmath.iv arithmetic: every operation rounds outward."""

    name = "directed"

    def const(self, value):
        if isinstance(value, Fraction):
            return iv.mpf(value.numerator) / value.denominator
        return iv.mpf(value)

    def log(self, value):
        return iv.ln(value)

    def exp(self, value):
        return iv.exp(value)

    def euler(self):
        return iv.euler

    def total(self, values: Iterable[Any]) -> float:
        return float(iv.mpf(sum(values, iv.mpf(0))).mid)

    def upper_sum(self, values: Iterable[Any]) -> float:
        total = sum(values, iv.mpf(0))
        return math.nextafter(float(total.b), math.inf)


FLOAT = FloatContext()
DIRECTED = IntervalContext()
Context = Any


@dataclass(frozen=True)
class ResidualTerm:
    """One summand of a residual, as a function of (q, t).

    ``evaluate`` must also accept ``math.inf`` coordinates and return the
    limit there. ``derivatives`` maps an axis name to the coded partial
    derivative; an absent axis means the term does not depend on it.
    """

    name: str
    evaluate: Callable[[Context, float, float], Any]
    derivatives: Mapping[str, Callable[[float, float], float]] = field(default_factory=dict)


def evaluate_terms(terms: Tuple[ResidualTerm, ...], q: float, t: float, ctx: Context = FLOAT) -> float:
    return ctx.total(term.evaluate(ctx, q, t) for term in terms)


def upper_terms(terms: Tuple[ResidualTerm, ...], q: float, t: float, ctx: Context = DIRECTED) -> float:
    return ctx.upper_sum(term.evaluate(ctx, q, t) for term in terms)


# residual families -------------------------------------------------------------
def backlund_terms(m: float = BACKLUND_M) -> Tuple[ResidualTerm, ...]:
    """-log m + gamma + 1/t + m/(2(t-m)) + m^2 (1+t)(4+t) / (24 (t-m)^2)."""

    def constant(ctx, q, t):
        return ctx.euler() - ctx.log(ctx.const(m))

    def reciprocal(ctx, q, t):
        if math.isinf(t):
            return ctx.const(0)
        return 1 / ctx.const(t)

    def linear_tail(ctx, q, t):
        if math.isinf(t):
            return ctx.const(0)
        return ctx.const(m) / (2 * (ctx.const(t) - m))

    def square_tail(ctx, q, t):
        if math.isinf(t):
            return ctx.const(m) ** 2 / 24
        x = ctx.const(t)
        return ctx.const(m) ** 2 * (1 + x) * (4 + x) / (24 * (x - m) ** 2)

    return (
        ResidualTerm("constant", constant),
        ResidualTerm("reciprocal", reciprocal, {"t": lambda q, t: -1.0 / (t * t)}),
        ResidualTerm("linear_tail", linear_tail, {"t": lambda q, t: -m / (2.0 * (t - m) ** 2)}),
        ResidualTerm(
            "square_tail",
            square_tail,
            {"t": lambda q, t: m * m * (-(2.0 * m + 5.0) * t - 5.0 * m - 8.0) / (24.0 * (t - m) ** 3)},
        ),
    )


def partial_summation_terms(
    m: float = PARTIAL_SUMMATION_M, b: Fraction = PARTIAL_SUMMATION_B
) -> Tuple[ResidualTerm, ...]:
    """-log m + (gamma - 1) + m (2 + q + q t) / (2 q (t + b) - 2 m)."""

    b_value = float(b)

    def constant(ctx, q, t):
        return ctx.euler() - 1 - ctx.log(ctx.const(m))

    def tail(ctx, q, t):
        if math.isinf(t):
            return ctx.const(m) / 2
        if math.isinf(q):
            x = ctx.const(t)
            return ctx.const(m) * (1 + x) / (2 * (x + ctx.const(b)))
        x, n = ctx.const(t), ctx.const(q)
        return ctx.const(m) * (2 + n + n * x) / (2 * n * (x + ctx.const(b)) - 2 * ctx.const(m))

    def d_tail_dt(q, t):
        denominator = 2.0 * q * (t + b_value) - 2.0 * m
        return m * 2.0 * q * (q * (b_value - 1.0) - m - 2.0) / denominator / denominator

    def d_tail_dq(q, t):
        denominator = 2.0 * q * (t + b_value) - 2.0 * m
        return m * (-2.0 * m * (1.0 + t) - 4.0 * (t + b_value)) / denominator / denominator

    return (
        ResidualTerm("constant", constant),
        ResidualTerm("tail", tail, {"t": d_tail_dt, "q": d_tail_dq}),
    )


def gamma_glue_terms() -> Tuple[ResidualTerm, ...]:
    """gamma - log(e^gamma + 109/(2t)); negative exactly when the first glue inequality holds."""

    def gamma(ctx, q, t):
        return ctx.euler()

    def log_term(ctx, q, t):
        if math.isinf(t):
            return -ctx.euler()
        return -ctx.log(ctx.exp(ctx.euler()) + ctx.const(COROLLARY_SHIFT) / ctx.const(t))

    def d_log_term(q, t):
        shift = float(COROLLARY_SHIFT)
        return shift / (t * t * (math.exp(EULER_GAMMA) + shift / t))

    return (
        ResidualTerm("gamma", gamma),
        ResidualTerm("log", log_term, {"t": d_log_term}),
    )


def theorem2_glue_terms() -> Tuple[ResidualTerm, ...]:
    """1 + log(t + 14/5) - log(e^gamma t + 109/2); the corrected second glue inequality."""

    def one(ctx, q, t):
        return ctx.const(1)

    def shifted_log(ctx, q, t):
        return ctx.log(ctx.const(t) + ctx.const(THEOREM2_SHIFT))

    def corollary_log(ctx, q, t):
        return -ctx.log(ctx.exp(ctx.euler()) * ctx.const(t) + ctx.const(COROLLARY_SHIFT))

    shift = float(THEOREM2_SHIFT)
    e_gamma = math.exp(EULER_GAMMA)
    return (
        ResidualTerm("one", one),
        ResidualTerm("shifted_log", shifted_log, {"t": lambda q, t: 1.0 / (t + shift)}),
        ResidualTerm(
            "corollary_log",
            corollary_log,
            {"t": lambda q, t: -e_gamma / (e_gamma * t + float(COROLLARY_SHIFT))},
        ),
    )


# closed-form bounds ------------------------------------------------------------
def theorem1_bound(q: int, t: float) -> float:
    """(phi(q)/q) log t + log q + gamma, claimed for t > 50."""

    _check_modulus(q)
    if not t > THEOREM1_T_MIN:
        raise ValueError(f"The bound is only claimed for t > 50, got t={t!r}.")
    return totient(q) / q * math.log(t) + math.log(q) + EULER_GAMMA


def theorem2_bound(q: int, t: float) -> float:
    """log(t + 14/5) + log q + 1, claimed for t > 0."""

    _check_modulus(q)
    _check_positive(t)
    return math.log(t + float(THEOREM2_SHIFT)) + math.log(q) + 1.0


def corollary_bound(q: int, t: float) -> float:
    """log(q (e^gamma t + 109/2)), claimed for t > 0."""

    _check_modulus(q)
    _check_positive(t)
    return math.log(q * (math.exp(EULER_GAMMA) * t + float(COROLLARY_SHIFT)))


def lemma_hurwitz_bound(c: float, t: float) -> float:
    """log t + 1/c, the bound on |zeta(1+it, c)| for c in (0, 1] and t > 50."""

    if not 0 < c <= 1:
        raise ValueError(f"c must lie in (0, 1], got {c!r}.")
    if not t > THEOREM1_T_MIN:
        raise ValueError(f"The bound is only claimed for t > 50, got t={t!r}.")
    return math.log(t) + 1.0 / float(c)


def lemma_average_bound(q: int, t: float) -> float:
    """(phi(q)/q) log t + sum_{(a,q)=1} 1/a: the Hurwitz bound averaged over a/q."""

    _check_modulus(q)
    if not t > THEOREM1_T_MIN:
        raise ValueError(f"The bound is only claimed for t > 50, got t={t!r}.")
    coprime_sum, _ = coprime_reciprocal_sum(q)
    return totient(q) / q * math.log(t) + coprime_sum


# residuals -------------------------------------------------------------------
def backlund_residual(t: float, m: float = BACKLUND_M, upper: bool = False) -> float:
    if not t > m > 0:
        raise ValueError(f"Need t > m > 0, got t={t!r}, m={m!r}.")
    terms = backlund_terms(m)
    if upper:
        return upper_terms(terms, 0.0, t)
    return evaluate_terms(terms, 0.0, t)


def backlund_tail_estimate(t: float, m: float = BACKLUND_M) -> float:
    """1/t + m/(2(t-m)) + m^2 (1+t)(4+t)/(24 (t-m)^2), bounding |zeta(1+it, c)| minus its head sum."""

    if not t > m > 0:
        raise ValueError(f"Need t > m > 0, got t={t!r}, m={m!r}.")
    return math.fsum(
        term.evaluate(FLOAT, 0.0, t) for term in backlund_terms(m) if term.name != "constant"
    )


def backlund_truncation(t: float, c: float, m: float = BACKLUND_M) -> int:
    """N = floor(t/m - c); the head-sum argument needs N >= 1."""

    truncation = math.floor(t / m - float(c))
    if truncation < 1:
        raise ValueError(f"N = floor(t/m - c) = {truncation} < 1 at t={t!r}, c={float(c)!r}, m={m!r}.")
    return truncation


def partial_summation_residual(
    q: float,
    t: float,
    m: float = PARTIAL_SUMMATION_M,
    b: Fraction = PARTIAL_SUMMATION_B,
    upper: bool = False,
) -> float:
    if not 2.0 * q * (t + float(b)) > 2.0 * m:
        raise ValueError(f"Need 2q(t+b) > 2m, got q={q!r}, t={t!r}, m={m!r}, b={b!r}.")
    terms = partial_summation_terms(m, b)
    if upper:
        return upper_terms(terms, q, t)
    return evaluate_terms(terms, q, t)


# auxiliary inequalities ----------------------------------------------------------
def harmonic_number(n: int) -> float:
    """sum_{1 <= k <= n} 1/k with compensated summation."""

    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}.")
    return math.fsum(1.0 / k for k in range(1, n + 1))


def harmonic_bound_check(t: float) -> float:
    """(log t + gamma + 1/t) - sum_{n <= t} 1/n, nonnegative for t >= 1."""

    if not t >= 1.0:
        raise ValueError(f"t must be at least 1, got {t!r}.")
    return math.fsum([math.log(t), EULER_GAMMA, 1.0 / t, -harmonic_number(math.floor(t))])


def coprime_reciprocal_sum(q: int) -> Tuple[float, float]:
    """(sum_{a <= q, (a,q)=1} 1/a, log q + gamma)."""

    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}.")
    total = math.fsum(1.0 / a for a in range(1, q + 1) if math.gcd(a, q) == 1)
    return total, math.log(q) + EULER_GAMMA


def gamma_glue_check(t: float) -> float:
    """log(e^gamma + 109/(2t)) - gamma, positive for every t > 0."""

    _check_positive(t)
    return math.log1p(float(COROLLARY_SHIFT) / t * math.exp(-EULER_GAMMA))


def theorem2_glue_check(t: float) -> float:
    """log(e^gamma t + 109/2) - 1 - log(t + 14/5), positive on (0, 50]."""

    _check_positive(t)
    if t > THEOREM1_T_MIN:
        raise ValueError(f"The glue inequality is only needed on (0, 50], got t={t!r}.")
    return -evaluate_terms(theorem2_glue_terms(), 0.0, t)


def literal_glue_margin(t: float) -> float:
    """log(e^gamma + 109/(2t)) - 1 - log(t + 14/5), the inequality as printed (fails near t = 50)."""

    _check_positive(t)
    return (
        math.log(math.exp(EULER_GAMMA) + float(COROLLARY_SHIFT) / t)
        - 1.0
        - math.log(t + float(THEOREM2_SHIFT))
    )


def _check_modulus(q: int) -> None:
    if q < 3:
        raise ValueError(f"Moduli below 3 have no non-principal characters, got q={q}.")


def _check_positive(t: float) -> None:
    if not t > 0.0:
        raise ValueError(f"t must be positive, got {t!r}.")


__all__ = [
    "BACKLUND_M",
    "DIRECTED",
    "FLOAT",
    "PARTIAL_SUMMATION_B",
    "PARTIAL_SUMMATION_M",
    "ResidualTerm",
    "backlund_residual",
    "backlund_tail_estimate",
    "backlund_terms",
    "backlund_truncation",
    "coprime_reciprocal_sum",
    "corollary_bound",
    "evaluate_terms",
    "gamma_glue_check",
    "gamma_glue_terms",
    "harmonic_bound_check",
    "harmonic_number",
    "lemma_average_bound",
    "lemma_hurwitz_bound",
    "literal_glue_margin",
    "partial_summation_residual",
    "partial_summation_terms",
    "theorem1_bound",
    "theorem2_bound",
    "theorem2_glue_check",
    "theorem2_glue_terms",
    "upper_terms",
]
