import math
import tracemalloc

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import primerange
from sympy.ntheory.residue_ntheory import legendre_symbol

from lbounds.characters import (
    ZERO,
    CyclotomicSum,
    build_unit_group,
    char_eval,
    character_by_index,
    enumerate_characters,
    partial_sum,
    totient,
)


@pytest.mark.parametrize(
    "q, generators, orders",
    [
        (4, (3,), (2,)),
        (7, (3,), (6,)),
        (8, (7, 5), (2, 2)),
        (9, (2,), (6,)),
        (15, (11, 7), (2, 4)),
        (16, (15, 5), (2, 4)),
    ],
)
def test_canonical_generators(q, generators, orders):
    structure = build_unit_group(q)
    assert structure.generators == generators
    assert structure.orders == orders


@pytest.mark.parametrize("q", range(3, 201))
def test_non_principal_count_is_totient_minus_one(q):
    assert len(enumerate_characters(q, include_principal=False)) == totient(q) - 1


def test_principal_character_comes_first():
    characters = enumerate_characters(12)
    assert characters[0].is_principal
    assert all(not chi.is_principal for chi in characters[1:])


def test_enumeration_is_lexicographic():
    exponents = [chi.exponents for chi in enumerate_characters(15)]
    assert exponents == sorted(exponents)


@pytest.mark.parametrize("p", list(primerange(3, 60)))
def test_quadratic_character_is_legendre_symbol(p):
    structure = build_unit_group(p)
    quadratic = [chi for chi in enumerate_characters(p) if chi.exponents == ((p - 1) // 2,)][0]
    assert structure.orders == (p - 1,)
    for n in range(1, p):
        assert complex(char_eval(quadratic, n)) == int(legendre_symbol(n, p))


@given(st.integers(min_value=3, max_value=60), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_characters_are_completely_multiplicative(q, a, b):
    for chi in enumerate_characters(q):
        assert char_eval(chi, a * b) == char_eval(chi, a) * char_eval(chi, b)


@given(st.integers(min_value=3, max_value=60), st.integers(-10 ** 6, 10 ** 6))
def test_characters_are_periodic_and_vanish_off_units(q, n):
    for chi in enumerate_characters(q, include_principal=False):
        assert char_eval(chi, n) == char_eval(chi, n + q)
        if math.gcd(n, q) > 1:
            assert char_eval(chi, n) is ZERO


@pytest.mark.parametrize("q", [3, 4, 5, 8, 12, 15, 21, 24, 35, 60])
def test_orthogonality(q):
    characters = enumerate_characters(q)
    column = np.zeros(q, dtype=np.complex128)
    for chi in characters:
        values, radius = chi.value_table()
        column += values
        if not chi.is_principal:
            assert abs(values.sum()) < 1e-12 * q
            assert radius < 1e-13
    expected = np.zeros(q)
    expected[1] = totient(q)
    assert np.allclose(column, expected, atol=1e-10)


@pytest.mark.parametrize("q", range(3, 201))
def test_partial_sums_bounded_by_half_totient(q):
    for chi in enumerate_characters(q, include_principal=False):
        assert np.max(np.abs(chi.partial_sum_values())) <= totient(q) / 2 + 1e-9


@given(st.integers(min_value=3, max_value=40), st.integers(min_value=0, max_value=50))
def test_partial_sum_vanishes_at_multiples_of_q(q, k):
    for chi in enumerate_characters(q, include_principal=False):
        assert partial_sum(chi, k * q).is_zero()


def test_partial_sum_is_exact_for_quadratic_character_mod_5():
    chi = [chi for chi in enumerate_characters(5) if chi.exponents == (2,)][0]
    # Values 1, -1, -1, 1 on residues 1..4.
    assert not partial_sum(chi, 1).is_zero()
    assert partial_sum(chi, 2).is_zero()
    assert partial_sum(chi, 4).is_zero()
    assert partial_sum(chi, 3).to_ball().contains(-1)


def test_partial_sum_rejects_principal_and_negative():
    principal, chi = enumerate_characters(7)[:2]
    with pytest.raises(ValueError):
        partial_sum(principal, 3)
    with pytest.raises(ValueError):
        partial_sum(chi, -1)


def test_cyclotomic_zero_test():
    assert CyclotomicSum(4, (1, 0, 1, 0)).is_zero()
    assert CyclotomicSum(3, (1, 1, 1)).is_zero()
    assert not CyclotomicSum(4, (1, 1, 0, 0)).is_zero()
    assert CyclotomicSum(6, (0, 0, 0, 0, 0, 0)).is_zero()


def test_character_by_index_bounds():
    assert character_by_index(5, 0).exponents == (1,)
    with pytest.raises(ValueError):
        character_by_index(5, 3)


def test_character_order_and_label():
    chi = [chi for chi in enumerate_characters(15) if chi.exponents == (1, 2)][0]
    assert chi.order == 2
    assert chi.label == "1-2"


def test_partial_sums_of_high_order_character_stay_linear_in_q():
    q = 4999
    chi = character_by_index(q, 0)
    assert chi.order == q - 1
    tracemalloc.start()
    try:
        values = chi.partial_sum_values()
        exact = [partial_sum(chi, n) for n in (1, 2500, q - 1, 3 * q + 17)]
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    assert values.shape == (q,)
    assert peak < 50 * 1024 * 1024
    assert exact[2].is_zero()
    for n, value in zip((1, 2500, 3 * q + 17), (exact[0], exact[1], exact[3])):
        ball = value.to_ball()
        assert abs(ball.mid - values[n % q]) <= ball.radius + 1e-9


def test_partial_sum_values_start_at_zero():
    chi = character_by_index(7, 2)
    values = chi.partial_sum_values()
    assert values[0] == 0
    for n in range(1, 7):
        assert abs(partial_sum(chi, n).to_ball().mid - values[n]) < 1e-12
