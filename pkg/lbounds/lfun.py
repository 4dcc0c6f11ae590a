"""|L(1+it, chi)| for non-principal characters by two independent routes."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional

from .balls import EPSILON, ErrorBoundedComplex, real_power, round_up
from .bounds import harmonic_number
from .characters import DirichletCharacter, char_eval, partial_sum, totient
from .hurwitz import hurwitz_zeta, power_sum
from .types import DEFAULT_N_CEILING, Consistency, Method

HurwitzComponents = Mapping[int, ErrorBoundedComplex]


@dataclass(frozen=True)
class LPoint:
    q: int
    chi: DirichletCharacter
    t: float
    value: ErrorBoundedComplex
    method: Method
    truncation: Optional[int] = None

    def __post_init__(self) -> None:
        _require_non_principal(self.chi)
        if not self.t > 0.0:
            raise ValueError(f"t must be positive, got {self.t!r}.")

    @property
    def abs_mid(self) -> float:
        return self.value.abs_mid()

    @property
    def abs_radius(self) -> float:
        return self.value.abs_radius()


def component_target(q: int, target_radius: float) -> float:
    """Per-shift radius so that (1/q) sum_a radius_a stays within half the target."""

    return target_radius * q / (2.0 * totient(q))


def hurwitz_components(
    q: int,
    t: float,
    target_radius: float,
    order: int = 1,
    ceiling: int = DEFAULT_N_CEILING,
) -> Dict[int, ErrorBoundedComplex]:
    """zeta(1+it, a/q) for every a in [1, q] coprime to q, each within target_radius."""

    s = complex(1.0, t)
    return {
        a: hurwitz_zeta(s, Fraction(a, q), target_radius, order, ceiling)
        for a in range(1, q + 1)
        if math.gcd(a, q) == 1
    }


def l_eval_hurwitz(
    chi: DirichletCharacter,
    t: float,
    target_radius: float,
    order: int = 1,
    components: Optional[HurwitzComponents] = None,
) -> LPoint:
    """L(s, chi) = q^{-s} sum_{a} chi(a) zeta(s, a/q) at s = 1 + it.

    ``components`` may carry precomputed Hurwitz values shared by every
    character of the same modulus.
    """

    _require_non_principal(chi)
    if not t > 0.0:
        raise ValueError(f"t must be positive, got {t!r}.")
    q = chi.modulus
    s = complex(1.0, t)
    if components is None:
        components = hurwitz_components(q, t, component_target(q, target_radius), order)
    total = ErrorBoundedComplex.exact(0)
    for a in sorted(components):
        total = total + char_eval(chi, a).to_ball() * components[a]
    value = real_power(float(q), -s) * total
    return LPoint(q, chi, t, value, Method.HURWITZ)


def partial_sum_truncation(q: int, t: float, target_radius: float) -> int:
    """Smallest multiple of q whose tail term q |s| / (2N) fits in half the target."""

    if not target_radius > 0.0:
        raise ValueError(f"Target radius must be positive, got {target_radius!r}.")
    abs_s = math.hypot(1.0, t)
    return q * max(1, math.ceil(abs_s / target_radius))


def l_eval_partial_sum(chi: DirichletCharacter, t: float, truncation: int) -> LPoint:
    """sum_{n <= N} chi(n) n^{-s} with the partial-summation tail folded into the radius.

    The tail s int_N^inf A(x) x^{-s-1} dx - A(N) N^{-s} is bounded by
    |A(N)| / N + q |s| / (2N), using |A(x)| < q/2.
    """

    _require_non_principal(chi)
    if not t > 0.0:
        raise ValueError(f"t must be positive, got {t!r}.")
    if truncation < 1:
        raise ValueError(f"N must be at least 1, got {truncation}.")
    q = chi.modulus
    s = complex(1.0, t)
    weights, weight_radius = chi.value_table()
    head = power_sum(s, 1, truncation, weights, weight_radius)

    boundary = partial_sum(chi, truncation).to_ball().abs_upper() / truncation
    tail = q * math.hypot(1.0, t) / (2.0 * truncation)
    tail_radius = round_up((boundary + tail) * (1.0 + 8.0 * EPSILON))
    value = ErrorBoundedComplex(head.mid, round_up(head.radius + tail_radius))
    return LPoint(q, chi, t, value, Method.PARTIAL_SUMMATION, truncation)


def cross_check(first: LPoint, second: LPoint) -> Consistency:
    if (first.q, first.chi, first.t) != (second.q, second.chi, second.t):
        raise ValueError(
            "Cross-check needs the same (q, chi, t); got "
            f"({first.q}, {first.chi.label}, {first.t}) and ({second.q}, {second.chi.label}, {second.t})."
        )
    if first.value.overlaps(second.value):
        return Consistency.CONSISTENT
    logging.error(
        "Evaluators disagree at q=%d chi=%s t=%.17g: %s vs %s.",
        first.q,
        first.chi.label,
        first.t,
        first.value,
        second.value,
    )
    return Consistency.INCONSISTENT


def hurwitz_reduction_bound(q: int, components: HurwitzComponents) -> float:
    """(1/q) sum_{(a,q)=1} |zeta(1+it, a/q)|, an upper bound for |L(1+it, chi)|."""

    total = math.fsum(components[a].abs_upper() for a in sorted(components))
    return round_up(total / q * (1.0 + 4.0 * EPSILON))


@dataclass(frozen=True)
class ProofBound:
    """Pieces of H_N + q (1+t) / (2N) + |A(N)| / N at N = floor(q (t+b) / m)."""

    truncation: int
    harmonic: float
    integral: float
    boundary: float

    @property
    def total(self) -> float:
        return math.fsum([self.harmonic, self.integral, self.boundary])


def partial_summation_proof_bound(
    chi: DirichletCharacter,
    t: float,
    m: float = 2.0,
    b: Fraction = Fraction(14, 5),
) -> ProofBound:
    _require_non_principal(chi)
    q = chi.modulus
    truncation = math.floor(q * (t + float(b)) / m)
    if truncation < 1:
        raise ValueError(f"N = floor(q (t+b) / m) is {truncation} at q={q}, t={t}.")
    return ProofBound(
        truncation,
        harmonic_number(truncation),
        q * (1.0 + t) / (2.0 * truncation),
        partial_sum(chi, truncation).to_ball().abs_upper() / truncation,
    )


def _require_non_principal(chi: DirichletCharacter) -> None:
    if chi.is_principal:
        raise ValueError(f"Character mod {chi.modulus} is principal; only non-principal characters are supported.")


__all__ = [
    "HurwitzComponents",
    "LPoint",
    "ProofBound",
    "component_target",
    "cross_check",
    "hurwitz_components",
    "hurwitz_reduction_bound",
    "l_eval_hurwitz",
    "l_eval_partial_sum",
    "partial_sum_truncation",
    "partial_summation_proof_bound",
]
