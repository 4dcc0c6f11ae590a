import cmath
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from lbounds.balls import ErrorBoundedComplex, real_power, round_up

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
tiny = st.floats(min_value=-1e-150, max_value=1e-150, allow_nan=False, allow_infinity=False)


def test_round_up_moves_strictly_up():
    assert round_up(1.0) > 1.0
    assert round_up(-1.0) > -1.0
    assert round_up(0.0) == 0.0


def test_negative_radius_is_rejected():
    with pytest.raises(ValueError):
        ErrorBoundedComplex(1.0, -1e-3)
    with pytest.raises(ValueError):
        ErrorBoundedComplex(1.0, math.inf)


@given(finite, finite)
def test_sum_encloses_exact_sum(a, b):
    ball = ErrorBoundedComplex.exact(a) + ErrorBoundedComplex.exact(b)
    exact = Fraction(a) + Fraction(b)
    assert abs(Fraction(ball.mid.real) - exact) <= Fraction(ball.radius)


@given(finite, finite)
def test_product_encloses_exact_product(a, b):
    ball = ErrorBoundedComplex.exact(a) * b
    exact = Fraction(a) * Fraction(b)
    assert abs(Fraction(ball.mid.real) - exact) <= Fraction(ball.radius)


@given(tiny, tiny)
def test_product_of_tiny_values_encloses_exact_product(a, b):
    ball = ErrorBoundedComplex.exact(a) * b
    exact = Fraction(a) * Fraction(b)
    assert abs(Fraction(ball.mid.real) - exact) <= Fraction(ball.radius)


def test_underflowing_product_keeps_positive_radius():
    a, b = 2.6028548356558967e-114, 4.422342622344367e-239
    ball = ErrorBoundedComplex.exact(a) * b
    assert ball.mid == 0
    assert ball.radius > 0
    assert Fraction(ball.radius) >= Fraction(a) * Fraction(b)


def test_radii_propagate_through_multiplication():
    product = ErrorBoundedComplex(2.0, 0.1) * ErrorBoundedComplex(3.0, 0.2)
    assert product.contains(2.1 * 3.2)
    assert product.contains(1.9 * 2.8)


def test_reciprocal_of_ball_containing_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ErrorBoundedComplex(0.5, 1.0).reciprocal()


def test_division_encloses_quotient():
    quotient = ErrorBoundedComplex(1.0, 0.01) / ErrorBoundedComplex(4.0, 0.01)
    assert quotient.contains(1.005 / 3.995)
    assert quotient.contains(0.995 / 4.005)


def test_quarter_turns_are_exact():
    assert ErrorBoundedComplex.unit_turn(1, 4) == ErrorBoundedComplex.exact(1j)
    assert ErrorBoundedComplex.unit_turn(2, 4) == ErrorBoundedComplex.exact(-1)
    assert ErrorBoundedComplex.unit_turn(6, 8) == ErrorBoundedComplex.exact(-1j)


@pytest.mark.parametrize("numerator, denominator", [(1, 3), (2, 5), (5, 12), (7, 9)])
def test_unit_turn_encloses_root_of_unity(numerator, denominator):
    mpmath.mp.dps = 30
    exact = complex(mpmath.expjpi(mpmath.mpf(2 * numerator) / denominator))
    assert ErrorBoundedComplex.unit_turn(numerator, denominator).contains(exact)


def test_real_power_encloses_exact_values():
    assert real_power(2.0, 2).contains(4.0)
    assert real_power(9.0, 0.5).contains(3.0)
    mpmath.mp.dps = 30
    exact = complex(mpmath.power(3, mpmath.mpc(-1, -10)))
    assert real_power(3.0, complex(-1, -10)).contains(exact)


def test_real_power_rejects_nonpositive_base():
    with pytest.raises(ValueError):
        real_power(0.0, 2)


def test_magnitude_bounds_bracket_modulus():
    ball = ErrorBoundedComplex(3 + 4j, 0.5)
    assert ball.abs_lower() <= 4.5
    assert ball.abs_upper() >= 5.5
    assert ErrorBoundedComplex(0.1, 1.0).abs_lower() == 0.0


def test_overlaps_uses_summed_radii():
    assert ErrorBoundedComplex(1.0, 0.3).overlaps(ErrorBoundedComplex(1.5, 0.3))
    assert not ErrorBoundedComplex(1.0, 0.1).overlaps(ErrorBoundedComplex(1.5, 0.1))


def test_conjugate_keeps_radius():
    ball = ErrorBoundedComplex(cmath.exp(1j), 1e-12).conjugate()
    assert ball.mid == cmath.exp(-1j)
    assert ball.radius == 1e-12
