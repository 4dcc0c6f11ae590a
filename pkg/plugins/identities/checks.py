"""Identity and consistency checks over characters, Hurwitz values and the bound algebra."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from lbounds.balls import ErrorBoundedComplex, real_power
from lbounds.bounds import (
    backlund_tail_estimate,
    backlund_truncation,
    coprime_reciprocal_sum,
    gamma_glue_check,
    harmonic_bound_check,
    lemma_hurwitz_bound,
    literal_glue_margin,
    partial_summation_residual,
    theorem2_glue_check,
)
from lbounds.characters import char_eval, CyclotomicSum, enumerate_characters, totient
from lbounds.hurwitz import TruncationError, hurwitz_zeta
from lbounds.lfun import (
    component_target,
    cross_check,
    hurwitz_components,
    hurwitz_reduction_bound,
    l_eval_hurwitz,
    l_eval_partial_sum,
    partial_sum_truncation,
    partial_summation_proof_bound,
)
from lbounds.types import Consistency

DEFAULT_S_VALUES = (complex(2.0, 0.0), complex(1.0, 1.0), complex(1.0, 10.0))
IDENTITY_MODULI = (2, 3, 5, 7)
CROSS_CHECK_T = (0.5, 5.0, 55.0)
LEMMA_SHIFTS = (Fraction(1, 10), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))
LEMMA_T = (51.0, 100.0, 500.0)
GLUE_GRID_SIZE = 10 ** 4
FLOAT_SLACK = 1e-12


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    status: Consistency
    details: Dict[str, Any] = field(default_factory=dict)
    failures: Tuple[str, ...] = ()

    def as_record(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "status": self.status.value,
            "details": self.details,
            "failures": list(self.failures),
        }


def _status(failures: Sequence[str], inconclusive: bool = False) -> Consistency:
    if failures:
        return Consistency.INCONSISTENT
    if inconclusive:
        return Consistency.INCONCLUSIVE
    return Consistency.CONSISTENT


def check_characters(q_max: int) -> IdentityCheck:
    """Count, orthogonality, multiplicativity, periodicity and |A(n)| <= phi(q)/2 for q in [3, q_max]."""

    failures: List[str] = []
    total = 0
    for q in range(3, q_max + 1):
        phi = totient(q)
        characters = enumerate_characters(q)
        non_principal = [chi for chi in characters if not chi.is_principal]
        total += len(non_principal)
        if len(non_principal) != phi - 1:
            failures.append(f"q={q}: {len(non_principal)} non-principal characters, expected {phi - 1}")

        units = [a for a in range(1, q + 1) if math.gcd(a, q) == 1]
        column = np.zeros(q, dtype=np.complex128)
        for chi in characters:
            values, _ = chi.value_table()
            column += values
        expected = np.zeros(q)
        expected[1 % q] = phi
        if np.max(np.abs(column - expected)) > 1e-9 * phi:
            failures.append(f"q={q}: column orthogonality off by {np.max(np.abs(column - expected)):.3g}")

        sample = units[:12]
        for chi in non_principal:
            counts = [0] * chi.order
            for turn in chi.residue_turns:
                if turn >= 0:
                    counts[turn] += 1
            if not CyclotomicSum(chi.order, tuple(counts)).is_zero():
                failures.append(f"q={q} chi={chi.label}: values over a period do not sum to 0")
            for a in sample:
                for b in sample:
                    if char_eval(chi, a * b) != char_eval(chi, a) * char_eval(chi, b):
                        failures.append(f"q={q} chi={chi.label}: chi({a}*{b}) is not multiplicative")
            for n in range(0, q, max(1, q // 16)):
                if char_eval(chi, n) != char_eval(chi, n + q):
                    failures.append(f"q={q} chi={chi.label}: chi({n}) != chi({n + q})")
            largest = float(np.max(np.abs(chi.partial_sum_values())))
            if largest > phi / 2.0 + 1e-9:
                failures.append(f"q={q} chi={chi.label}: max |A(n)| = {largest:.6g} > phi(q)/2")
    return IdentityCheck(
        "characters",
        _status(failures),
        {"q_max": q_max, "non_principal_characters": total},
        tuple(failures),
    )


def check_hurwitz_identities(
    s_values: Iterable[complex] = DEFAULT_S_VALUES,
    moduli: Iterable[int] = IDENTITY_MODULI,
    target_radius: float = 1e-10,
) -> IdentityCheck:
    """sum_{a <= q} zeta(s, a/q) = q^s zeta(s) and zeta(s, 1/2) = (2^s - 1) zeta(s)."""

    failures: List[str] = []
    details: Dict[str, Any] = {"multiplication": [], "half_shift": []}
    inconclusive = False
    for s in s_values:
        try:
            zeta = hurwitz_zeta(s, 1, target_radius)
            half = hurwitz_zeta(s, Fraction(1, 2), target_radius)
            half_identity = (real_power(2.0, s) - 1.0) * zeta
            details["half_shift"].append(_gap_record(s, None, half, half_identity))
            if not half.overlaps(half_identity):
                failures.append(f"s={s}: zeta(s, 1/2) disagrees with (2^s - 1) zeta(s)")
            for q in moduli:
                left = ErrorBoundedComplex.exact(0)
                for a in range(1, q + 1):
                    left = left + hurwitz_zeta(s, Fraction(a, q), target_radius)
                right = real_power(float(q), s) * zeta
                details["multiplication"].append(_gap_record(s, q, left, right))
                if not left.overlaps(right):
                    failures.append(f"s={s} q={q}: multiplication theorem fails")
        except TruncationError as error:
            logging.warning("Hurwitz identity at s=%s is inconclusive: %s", s, error)
            inconclusive = True
    return IdentityCheck("hurwitz_identities", _status(failures, inconclusive), details, tuple(failures))


def _gap_record(s: complex, q, left: ErrorBoundedComplex, right: ErrorBoundedComplex) -> Dict[str, Any]:
    return {
        "s": [s.real, s.imag],
        "q": q,
        "gap": abs(left.mid - right.mid),
        "radius": left.radius + right.radius,
    }


def check_cross_evaluators(
    q_values: Iterable[int],
    t_values: Iterable[float] = CROSS_CHECK_T,
    hurwitz_radius: float = 1e-8,
    psum_radius: float = 1e-4,
) -> IdentityCheck:
    failures: List[str] = []
    pairs = 0
    t_values = tuple(t_values)
    for q in q_values:
        for t in t_values:
            components = hurwitz_components(q, t, component_target(q, hurwitz_radius))
            truncation = partial_sum_truncation(q, t, psum_radius)
            for chi in enumerate_characters(q, include_principal=False):
                first = l_eval_hurwitz(chi, t, hurwitz_radius, components=components)
                second = l_eval_partial_sum(chi, t, truncation)
                pairs += 1
                if cross_check(first, second) is Consistency.INCONSISTENT:
                    failures.append(f"q={q} chi={chi.label} t={t:.17g}")
    return IdentityCheck("cross_evaluators", _status(failures), {"pairs": pairs}, tuple(failures))


def check_hurwitz_lemma(
    shifts: Iterable[Fraction] = LEMMA_SHIFTS,
    t_values: Iterable[float] = LEMMA_T,
    target_radius: float = 1e-8,
) -> IdentityCheck:
    """|zeta(1+it, c)| + radius < log t + 1/c."""

    failures: List[str] = []
    margins = []
    t_values = tuple(t_values)
    for c in shifts:
        for t in t_values:
            value = hurwitz_zeta(complex(1.0, t), c, target_radius)
            bound = lemma_hurwitz_bound(float(c), t)
            margin = bound - value.abs_upper()
            margins.append({"c": str(c), "t": t, "margin": margin})
            if not margin > 0:
                failures.append(f"c={c} t={t:.17g}: margin {margin:.6g}")
    return IdentityCheck("hurwitz_lemma", _status(failures), {"margins": margins}, tuple(failures))


def check_backlund_tail(
    shifts: Iterable[Fraction] = (Fraction(1, 10), Fraction(1, 2), Fraction(1)),
    t_values: Iterable[float] = LEMMA_T,
    target_radius: float = 1e-8,
) -> IdentityCheck:
    """|zeta(1+it, c)| - sum_{n < N} 1/(n+c) <= the tail estimate, with N = floor(t/3 - c) >= 1."""

    failures: List[str] = []
    records = []
    t_values = tuple(t_values)
    for c in shifts:
        for t in t_values:
            truncation = backlund_truncation(t, float(c))
            head = math.fsum(1.0 / (n + float(c)) for n in range(truncation))
            value = hurwitz_zeta(complex(1.0, t), c, target_radius)
            excess = value.abs_lower() - head
            estimate = backlund_tail_estimate(t)
            records.append({"c": str(c), "t": t, "N": truncation, "excess": excess, "estimate": estimate})
            if excess > estimate + FLOAT_SLACK:
                failures.append(f"c={c} t={t:.17g}: excess {excess:.6g} > estimate {estimate:.6g}")
    return IdentityCheck("backlund_tail", _status(failures), {"points": records}, tuple(failures))


def check_glue(grid_size: int = GLUE_GRID_SIZE) -> IdentityCheck:
    """Corrected glue inequality positive on (0, 50] with its minimum at 50; the printed form fails."""

    grid = np.linspace(50.0 / grid_size, 50.0, grid_size)
    corrected = np.array([theorem2_glue_check(float(t)) for t in grid])
    gamma = np.array([gamma_glue_check(float(t)) for t in grid])
    failures: List[str] = []
    if not np.all(corrected > 0):
        failures.append(f"corrected glue margin nonpositive at t={float(grid[np.argmin(corrected)]):.17g}")
    if int(np.argmin(corrected)) != grid_size - 1:
        failures.append(f"corrected glue minimum at t={float(grid[np.argmin(corrected)]):.17g}, not 50")
    if not np.all(gamma > 0):
        failures.append("gamma glue margin nonpositive")
    details = {
        "corrected_min_margin": float(np.min(corrected)),
        "corrected_min_t": float(grid[np.argmin(corrected)]),
        "corrected_limit_near_zero": float(corrected[0]),
        "literal_margin_at_50": literal_glue_margin(50.0),
        "literal_holds_at_50": literal_glue_margin(50.0) > 0,
        "gamma_glue_min_margin": float(np.min(gamma)),
    }
    return IdentityCheck("glue", _status(failures), details, tuple(failures))


def check_harmonic_and_coprime(q_max: int) -> IdentityCheck:
    failures: List[str] = []
    t_values = sorted(set(np.geomspace(1.0, 1e6, 200).tolist() + [float(n) + 0.5 for n in range(1, 50)]))
    margins = [harmonic_bound_check(t) for t in t_values]
    for t, margin in zip(t_values, margins):
        if margin < 0:
            failures.append(f"harmonic bound fails at t={t:.17g}")
    worst_gap = math.inf
    for q in range(2, q_max + 1):
        total, bound = coprime_reciprocal_sum(q)
        worst_gap = min(worst_gap, bound - total)
        if total > bound:
            failures.append(f"coprime reciprocal sum exceeds log q + gamma at q={q}")
    details = {"harmonic_min_margin": min(margins), "coprime_min_gap": worst_gap}
    return IdentityCheck("harmonic_and_coprime", _status(failures), details, tuple(failures))


def check_proof_bounds(
    q_values: Iterable[int],
    t_values: Iterable[float] = (5.0, 55.0),
    target_radius: float = 1e-8,
) -> IdentityCheck:
    """|L| against the triangle reduction and the partial-summation bound, and the residual algebra."""

    failures: List[str] = []
    unaccounted = 0.0
    t_values = tuple(t_values)
    for q in q_values:
        for t in t_values:
            components = hurwitz_components(q, t, component_target(q, target_radius))
            reduction = hurwitz_reduction_bound(q, components)
            algebra_bound = math.log(q * (t + 2.8)) + 1.0 + partial_summation_residual(q, t)
            for chi in enumerate_characters(q, include_principal=False):
                point = l_eval_hurwitz(chi, t, target_radius, components=components)
                lower = point.value.abs_lower()
                proof = partial_summation_proof_bound(chi, t)
                unaccounted = max(unaccounted, proof.boundary)
                if lower > reduction:
                    failures.append(f"q={q} chi={chi.label} t={t:.17g}: |L| exceeds the Hurwitz reduction")
                if lower > proof.total:
                    failures.append(f"q={q} chi={chi.label} t={t:.17g}: |L| exceeds the partial-summation bound")
                if proof.harmonic + proof.integral > algebra_bound + FLOAT_SLACK:
                    failures.append(f"q={q} chi={chi.label} t={t:.17g}: residual algebra does not dominate")
    details = {"max_unaccounted_boundary_term": unaccounted}
    return IdentityCheck("proof_bounds", _status(failures), details, tuple(failures))


def run_all(q_max: int, s_values: Sequence[complex] = DEFAULT_S_VALUES) -> List[IdentityCheck]:
    small = range(3, min(q_max, 12) + 1)
    steps: List[Tuple[str, Callable[[], IdentityCheck]]] = [
        ("characters", lambda: check_characters(q_max)),
        ("hurwitz_identities", lambda: check_hurwitz_identities(s_values)),
        ("cross_evaluators", lambda: check_cross_evaluators(small)),
        ("hurwitz_lemma", check_hurwitz_lemma),
        ("backlund_tail", check_backlund_tail),
        ("glue", check_glue),
        ("harmonic_and_coprime", lambda: check_harmonic_and_coprime(q_max)),
        ("proof_bounds", lambda: check_proof_bounds(small)),
    ]
    results = []
    for name, step in steps:
        logging.info("Running %s checks.", name)
        result = step()
        if result.status is Consistency.INCONSISTENT:
            logging.error("%s: %d failures, first: %s", name, len(result.failures), result.failures[0])
        results.append(result)
    return results
