import math

import pytest
from hypothesis import given, strategies as st

from lbounds.bounds import (
    DIRECTED,
    FLOAT,
    backlund_residual,
    backlund_tail_estimate,
    backlund_terms,
    backlund_truncation,
    corollary_bound,
    coprime_reciprocal_sum,
    gamma_glue_check,
    harmonic_bound_check,
    harmonic_number,
    lemma_average_bound,
    lemma_hurwitz_bound,
    literal_glue_margin,
    partial_summation_residual,
    theorem1_bound,
    theorem2_bound,
    theorem2_glue_check,
    upper_terms,
)
from lbounds.types import EULER_GAMMA


def test_large_t_bound():
    assert theorem1_bound(3, 100.0) == pytest.approx(4.745941, abs=1e-6)
    with pytest.raises(ValueError):
        theorem1_bound(3, 50.0)


def test_all_t_bound_near_zero():
    assert theorem2_bound(3, 1e-12) == pytest.approx(3.128232, abs=1e-6)
    with pytest.raises(ValueError):
        theorem2_bound(3, 0.0)


def test_corollary_bound():
    assert corollary_bound(3, 1.0) == pytest.approx(5.1289, abs=1e-4)


def test_moduli_below_three_are_rejected():
    for bound in (theorem1_bound, theorem2_bound, corollary_bound):
        with pytest.raises(ValueError):
            bound(2, 60.0)


def test_lemma_bounds():
    assert lemma_hurwitz_bound(0.5, 100.0) == pytest.approx(math.log(100) + 2)
    with pytest.raises(ValueError):
        lemma_hurwitz_bound(0.0, 100.0)
    # Residues coprime to 3 are 1 and 2.
    assert lemma_average_bound(3, 100.0) == pytest.approx(2 / 3 * math.log(100) + 1.5)


@pytest.mark.parametrize("q", [3, 4, 10, 30, 97])
def test_corollary_dominates_large_t_bound_and_theorem2_below_50(q):
    for t in (51.0, 100.0, 1e4, 1e8):
        assert corollary_bound(q, t) >= theorem1_bound(q, t)
    for t in (0.001, 1.0, 10.0, 50.0):
        assert corollary_bound(q, t) >= theorem2_bound(q, t)


def test_backlund_residual():
    assert backlund_residual(50.0) == pytest.approx(-0.0019625, abs=1e-6)
    assert backlund_residual(1e12) == pytest.approx(-0.1463966, abs=1e-6)
    assert backlund_residual(45.0) > 0
    with pytest.raises(ValueError):
        backlund_residual(3.0)


@given(st.floats(min_value=50.0, max_value=1e12))
def test_backlund_residual_negative_from_fifty(t):
    assert backlund_residual(t, upper=True) < 0


def test_directed_upper_dominates_float_value():
    for t in (50.0, 77.7, 1e3, 1e9):
        value = backlund_residual(t)
        assert value <= backlund_residual(t, upper=True) <= value + 1e-12
        assert upper_terms(backlund_terms(), 0.0, t, FLOAT) >= value


def test_backlund_tail_estimate_and_truncation():
    assert backlund_tail_estimate(60.0) == pytest.approx(backlund_residual(60.0) - EULER_GAMMA + math.log(3))
    assert backlund_truncation(60.0, 0.5) == 19
    with pytest.raises(ValueError):
        backlund_truncation(3.0, 1.0)


def test_partial_summation_residual():
    assert partial_summation_residual(2, 1e-12) == pytest.approx(-0.0048204, abs=1e-6)
    assert partial_summation_residual(2, 100.0) == pytest.approx(-0.114, abs=1e-3)
    with pytest.raises(ValueError):
        partial_summation_residual(0.5, 0.0)


@given(st.integers(min_value=2, max_value=10 ** 6), st.floats(min_value=0.0, max_value=1e9))
def test_partial_summation_residual_negative(q, t):
    assert partial_summation_residual(q, t, upper=True) < 0


def test_harmonic_number():
    assert harmonic_number(0) == 0.0
    assert harmonic_number(4) == pytest.approx(25 / 12)


def test_harmonic_bound_check():
    assert harmonic_bound_check(1.0) == pytest.approx(EULER_GAMMA)
    assert harmonic_bound_check(2.5) == pytest.approx(0.393506, abs=1e-6)
    with pytest.raises(ValueError):
        harmonic_bound_check(0.5)


@given(st.floats(min_value=1.0, max_value=1e5))
def test_harmonic_bound_check_nonnegative(t):
    assert harmonic_bound_check(t) >= 0


@pytest.mark.parametrize("q", [2, 3, 4, 6, 30, 210, 2310])
def test_coprime_reciprocal_sum(q):
    total, bound = coprime_reciprocal_sum(q)
    assert 1.0 <= total <= bound


def test_glue_checks():
    assert gamma_glue_check(1.0) == pytest.approx(3.4531, abs=1e-4)
    assert gamma_glue_check(1e9) == pytest.approx(3.06e-8, rel=1e-2)
    assert theorem2_glue_check(50.0) == pytest.approx(0.000198, abs=1e-5)
    assert theorem2_glue_check(1e-12) == pytest.approx(1.968582, abs=1e-6)
    with pytest.raises(ValueError):
        theorem2_glue_check(51.0)


def test_printed_glue_inequality_fails_near_fifty():
    assert literal_glue_margin(50.0) == pytest.approx(-3.911826, abs=1e-6)


@given(st.floats(min_value=1e-9, max_value=50.0))
def test_theorem2_glue_positive(t):
    assert theorem2_glue_check(t) > 0


def test_directed_context_brackets_constants():
    assert DIRECTED.total([DIRECTED.euler()]) == pytest.approx(EULER_GAMMA)
    assert DIRECTED.upper_sum([DIRECTED.euler()]) >= EULER_GAMMA


@pytest.mark.slow
def test_partial_summation_residual_negative_on_acceptance_grid():
    for q in range(2, 101):
        for exponent in range(-4, 5):
            assert partial_summation_residual(q, 10.0 ** exponent, upper=True) < 0


@pytest.mark.slow
def test_coprime_reciprocal_sum_on_acceptance_range():
    for q in range(2, 10 ** 4 + 1):
        total, bound = coprime_reciprocal_sum(q)
        assert total <= bound
