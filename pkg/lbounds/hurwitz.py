"""Hurwitz zeta values with certified radii from the Euler-Maclaurin expansion.

For f(x) = (x + c)^{-s} and odd order k the expansion reads

    zeta(s, c) = sum_{0 <= n < N} (n + c)^{-s}
                 + (N + c)^{1-s} / (s - 1) + 1 / (2 (N + c)^s)
                 + sum_{r odd, r <= k} B_{r+1} (s)_r / (r + 1)! (N + c)^{-s-r}
                 + remainder,

where (s)_r is the rising factorial and the remainder is an integral against the
periodic Bernoulli polynomial B_{k+1}({x}). With the partial sum stopping at
N - 1 the boundary term enters with a plus sign; for k = 1 the last correction
is s / (12 (N + c)^{s+1}).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

import numpy as np

from .balls import EPSILON, ROUNDING_ULPS, ErrorBoundedComplex, real_power, round_up, rounding_error
from .types import DEFAULT_N_CEILING, POLE_EXCLUSION

Shift = Union[float, Fraction]
CHUNK_SIZE = 1 << 16
ROW_SIZE = 64


class TruncationError(RuntimeError):
    """Raised when no truncation below the ceiling reaches the requested radius."""


@dataclass(frozen=True)
class EMConfig:
    truncation: int
    order: int = 1
    rounding_inflation: int = ROUNDING_ULPS

    def __post_init__(self) -> None:
        if self.truncation < 1:
            raise ValueError(f"Truncation must be at least 1, got {self.truncation}.")
        if self.order < 1 or self.order % 2 == 0:
            raise ValueError(f"Order must be an odd positive integer, got {self.order}.")
        if self.rounding_inflation < 1:
            raise ValueError(f"Rounding inflation must be at least 1, got {self.rounding_inflation}.")


@dataclass(frozen=True)
class BernoulliTable:
    numbers: Tuple[Fraction, ...]
    """B_0 .. B_{k+1} with B_1 = -1/2."""
    polynomials: Tuple[Tuple[Fraction, ...], ...]
    """Row j holds the coefficients of B_j(x) in ascending powers of x."""

    @property
    def size(self) -> int:
        return len(self.numbers) - 1


@lru_cache(maxsize=32)
def bernoulli_numbers(order: int) -> BernoulliTable:
    if order < 1:
        raise ValueError(f"Order must be positive, got {order}.")
    top = order + 1
    numbers = [Fraction(1)]
    for m in range(1, top + 1):
        numbers.append(-sum(math.comb(m + 1, j) * numbers[j] for j in range(m)) / (m + 1))
    polynomials = tuple(
        tuple(math.comb(j, i) * numbers[j - i] for i in range(j + 1)) for j in range(top + 1)
    )
    return BernoulliTable(tuple(numbers), polynomials)


def periodic_bernoulli(j: int, x: float, table: BernoulliTable | None = None) -> float:
    """B_j({x}), evaluated exactly from the polynomial row and rounded once."""

    if j < 0:
        raise ValueError(f"Index must be nonnegative, got {j}.")
    table = table or bernoulli_numbers(max(1, j - 1))
    if j > table.size:
        raise ValueError(f"Table holds B_0..B_{table.size}, asked for B_{j}.")
    exact = Fraction(x)
    fractional = exact - math.floor(exact)
    value = Fraction(0)
    for coefficient in reversed(table.polynomials[j]):
        value = value * fractional + coefficient
    return float(value)


def periodic_bernoulli_sup(n: int) -> float:
    """Upper bound for sup |B_n({x})|: 1/6 for n = 2, else 4 n! / (2 pi)^n."""

    if n == 2:
        return 1.0 / 6.0
    if n < 2:
        raise ValueError("The sup bound is only used for n >= 2.")
    return round_up(4.0 * math.factorial(n) / (2.0 * math.pi) ** n)


def em_remainder_bound(s: complex, c: Shift, truncation: int, order: int = 1) -> float:
    """Bound on the dropped integral of the order-k expansion at truncation N.

    For k = 1 this is |s (s+1)| / (12 (sigma+1) (N+c)^{sigma+1}).
    """

    s = complex(s)
    sigma = s.real
    n = order + 1
    pochhammer = math.prod(abs(s + j) for j in range(n))
    shifted = float(truncation + c)
    bound = (
        periodic_bernoulli_sup(n)
        * pochhammer
        / (math.factorial(n) * (sigma + order) * shifted ** (sigma + order))
    )
    return round_up(bound * (1.0 + 64.0 * EPSILON * (2.0 + abs(sigma + order))))


def rounding_estimate(s: complex, c: Shift, truncation: int) -> float:
    """Upper estimate of the rounding radius :func:`hurwitz_zeta_em` will report."""

    s = complex(s)
    sigma = s.real
    c_value = float(c)
    end = truncation + c_value
    max_log = max(abs(math.log(c_value)), abs(math.log(end)))
    if sigma < 0.0:
        magnitude = truncation * end ** (-sigma)
    elif sigma == 1.0:
        magnitude = 1.0 / c_value + math.log(end / c_value)
    else:
        magnitude = c_value ** (-sigma) + (end ** (1.0 - sigma) - c_value ** (1.0 - sigma)) / (1.0 - sigma)
    per_term = ROUNDING_ULPS * EPSILON * (3.0 + abs(s) * (1.0 + max_log))
    summation = 2.0 * min(truncation, ROW_SIZE) * EPSILON
    boundary = end ** (1.0 - sigma) / abs(s - 1.0) + end ** (-sigma)
    return round_up((per_term + summation) * (magnitude + boundary) * 2.0)


def choose_truncation(
    s: complex,
    c: Shift,
    target_radius: float,
    order: int = 1,
    ceiling: int = DEFAULT_N_CEILING,
) -> int:
    """Smallest N on a doubling ladder whose remainder and rounding each fit in half the target."""

    if not target_radius > 0.0:
        raise ValueError(f"Target radius must be positive, got {target_radius!r}.")
    s = complex(s)
    _check_domain(s, c)
    truncation = max(1, math.ceil(abs(s.imag)))
    while truncation <= ceiling:
        if rounding_estimate(s, c, truncation) > target_radius / 2.0:
            raise TruncationError(
                f"Target radius {target_radius:.3g} is below the rounding floor at s={s}, c={float(c):.6g}."
            )
        if em_remainder_bound(s, c, truncation, order) <= target_radius / 2.0:
            logging.debug("Truncation N=%d for s=%s, c=%.6g, order %d.", truncation, s, float(c), order)
            return truncation
        truncation *= 2
    raise TruncationError(
        f"Target radius {target_radius:.3g} needs more than {ceiling} terms at s={s}, c={float(c):.6g}."
    )


def hurwitz_zeta_em(s: complex, c: Shift, cfg: EMConfig) -> ErrorBoundedComplex:
    s = complex(s)
    _check_domain(s, c)
    truncation = cfg.truncation
    shifted = float(truncation + c)

    total = power_sum(s, c, truncation, inflation=cfg.rounding_inflation)
    total = total + real_power(shifted, 1.0 - s) / (s - 1.0)
    total = total + real_power(shifted, -s) * 0.5

    table = bernoulli_numbers(cfg.order)
    rising = ErrorBoundedComplex.exact(1.0)
    for r in range(1, cfg.order + 1):
        rising = rising * (s + (r - 1))
        if r % 2 == 0:
            continue
        weight = float(table.numbers[r + 1] / math.factorial(r + 1))
        correction = rising * real_power(shifted, -s - r) * weight
        total = total + correction

    remainder = em_remainder_bound(s, c, truncation, cfg.order)
    return ErrorBoundedComplex(total.mid, round_up(total.radius + remainder))


def hurwitz_zeta(
    s: complex,
    c: Shift,
    target_radius: float,
    order: int = 1,
    ceiling: int = DEFAULT_N_CEILING,
) -> ErrorBoundedComplex:
    truncation = choose_truncation(s, c, target_radius, order, ceiling)
    return hurwitz_zeta_em(s, c, EMConfig(truncation, order))


def power_sum(
    s: complex,
    c: Shift,
    count: int,
    weights: np.ndarray | None = None,
    weight_radius: float = 0.0,
    inflation: float = ROUNDING_ULPS,
) -> ErrorBoundedComplex:
    """sum_{0 <= n < count} w(n) (n + c)^{-s}, chunked through numpy.

    ``weights`` is periodic: w(n) = weights[(n + c) mod len(weights)] for an
    integer shift c, which is how character values are attached to n^{-s}.
    ``inflation`` is the per-term error charged for each power, in units of epsilon.
    """

    sigma = s.real
    abs_s = abs(s)
    real_parts = []
    imag_parts = []
    radius_parts = []
    for start in range(0, count, CHUNK_SIZE):
        stop = min(count, start + CHUNK_SIZE)
        logs = np.log(_shifted_range(start, stop, c))
        terms = np.exp(-s * logs)
        magnitudes = np.exp(-sigma * logs)
        weight_error = 0.0
        if weights is not None:
            residues = (np.arange(start, stop) + int(c)) % len(weights)
            chunk_weights = weights[residues]
            weight_error = weight_radius * float(magnitudes.sum())
            terms = terms * chunk_weights
            magnitudes = magnitudes * np.abs(chunk_weights)
        rows = _row_sums(terms)
        real_parts.extend(rows.real.tolist())
        imag_parts.extend(rows.imag.tolist())
        per_term = float(np.sum(magnitudes * (4.0 + abs_s * (1.0 + np.abs(logs)))))
        # Any summation order over a row of m terms errs by at most m eps sum |x| per component.
        radius_parts.append(
            inflation * EPSILON * per_term
            + 2.0 * ROW_SIZE * EPSILON * float(magnitudes.sum())
            + weight_error
        )
    mid = complex(math.fsum(real_parts), math.fsum(imag_parts))
    radius = math.fsum(radius_parts) * (1.0 + 2.0 * CHUNK_SIZE * EPSILON)
    return ErrorBoundedComplex(mid, round_up(radius + rounding_error(abs(mid), inflation)))


def _row_sums(terms: np.ndarray) -> np.ndarray:
    padding = -len(terms) % ROW_SIZE
    if padding:
        terms = np.concatenate([terms, np.zeros(padding, dtype=terms.dtype)])
    return terms.reshape(-1, ROW_SIZE).sum(axis=1)


def _shifted_range(start: int, stop: int, c: Shift) -> np.ndarray:
    if isinstance(c, Fraction):
        return (np.arange(start, stop, dtype=np.float64) * c.denominator + c.numerator) / c.denominator
    return np.arange(start, stop, dtype=np.float64) + float(c)


def _check_domain(s: complex, c: Shift) -> None:
    if abs(s - 1.0) < POLE_EXCLUSION:
        raise ValueError(f"s={s} is within {POLE_EXCLUSION:g} of the pole at 1.")
    if not 0 < c <= 1:
        raise ValueError(f"Shift c must lie in (0, 1], got {c}.")
    if not s.real > -1.0:
        raise ValueError(f"The expansion is only used for Re(s) > -1, got {s}.")


__all__ = [
    "BernoulliTable",
    "EMConfig",
    "TruncationError",
    "bernoulli_numbers",
    "choose_truncation",
    "em_remainder_bound",
    "hurwitz_zeta",
    "hurwitz_zeta_em",
    "periodic_bernoulli",
    "periodic_bernoulli_sup",
    "power_sum",
    "rounding_estimate",
]
