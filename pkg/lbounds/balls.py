"""Midpoint-radius complex values over IEEE doubles."""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass
from typing import Union

EPSILON = sys.float_info.epsilon
ROUNDING_ULPS = 4
"""Relative inflation, in units of machine epsilon, charged per floating operation."""
UNDERFLOW = 4 * math.ulp(0.0)
"""Absolute error floor charged per floating operation."""

Number = Union[int, float, complex]


def round_up(value: float) -> float:
    """Return the next double above ``value`` (radii are only ever rounded outward)."""

    if value == 0.0:
        return 0.0
    return math.nextafter(value, math.inf)


def rounding_error(magnitude: float, inflation: float = ROUNDING_ULPS) -> float:
    return round_up(inflation * EPSILON * magnitude + UNDERFLOW)


@dataclass(frozen=True)
class ErrorBoundedComplex:
    """A complex midpoint together with a radius that dominates every error in it."""

    mid: complex
    radius: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "mid", complex(self.mid))
        radius = float(self.radius)
        if not radius >= 0.0 or math.isinf(radius):
            raise ValueError(f"Radius must be finite and nonnegative, got {self.radius!r}.")
        object.__setattr__(self, "radius", radius)

    @classmethod
    def exact(cls, value: Number) -> "ErrorBoundedComplex":
        return cls(complex(value), 0.0)

    @classmethod
    def unit_turn(cls, numerator: int, denominator: int) -> "ErrorBoundedComplex":
        """e^{2 pi i numerator/denominator}, exact for the quarter turns."""

        numerator %= denominator
        if 4 * numerator % denominator == 0:
            quarter = 4 * numerator // denominator
            return cls.exact((1, 1j, -1, -1j)[quarter])
        angle = 2.0 * math.pi * numerator / denominator
        # pi, the division and cos/sin each contribute an error of a few ulps.
        return cls(cmath.exp(1j * angle), rounding_error(2.0 + angle))

    # arithmetic ------------------------------------------------------------
    def __add__(self, other: "ErrorBoundedComplex | Number") -> "ErrorBoundedComplex":
        other = _coerce(other)
        mid = self.mid + other.mid
        radius = self.radius + other.radius + rounding_error(abs(self.mid) + abs(other.mid))
        return ErrorBoundedComplex(mid, round_up(radius))

    __radd__ = __add__

    def __neg__(self) -> "ErrorBoundedComplex":
        return ErrorBoundedComplex(-self.mid, self.radius)

    def __sub__(self, other: "ErrorBoundedComplex | Number") -> "ErrorBoundedComplex":
        return self + (-_coerce(other))

    def __rsub__(self, other: Number) -> "ErrorBoundedComplex":
        return _coerce(other) - self

    def __mul__(self, other: "ErrorBoundedComplex | Number") -> "ErrorBoundedComplex":
        other = _coerce(other)
        mid = self.mid * other.mid
        a, b = abs(self.mid), abs(other.mid)
        radius = a * other.radius + b * self.radius + self.radius * other.radius
        radius += rounding_error(a * b)
        return ErrorBoundedComplex(mid, round_up(radius))

    __rmul__ = __mul__

    def reciprocal(self) -> "ErrorBoundedComplex":
        magnitude = abs(self.mid)
        if magnitude <= self.radius:
            raise ZeroDivisionError("Ball contains zero.")
        mid = 1.0 / self.mid
        # |1/z - 1/m| <= r / (|m| (|m| - r)) for |z - m| <= r.
        radius = self.radius / (magnitude * (magnitude - self.radius))
        radius += rounding_error(abs(mid))
        return ErrorBoundedComplex(mid, round_up(radius))

    def __truediv__(self, other: "ErrorBoundedComplex | Number") -> "ErrorBoundedComplex":
        return self * _coerce(other).reciprocal()

    def conjugate(self) -> "ErrorBoundedComplex":
        return ErrorBoundedComplex(self.mid.conjugate(), self.radius)

    # magnitudes --------------------------------------------------------------
    def abs_mid(self) -> float:
        return abs(self.mid)

    def abs_radius(self) -> float:
        """Radius of the enclosure of ``|z|`` around :meth:`abs_mid`."""

        return round_up(self.radius + rounding_error(abs(self.mid)))

    def abs_upper(self) -> float:
        return round_up(self.abs_mid() + self.abs_radius())

    def abs_lower(self) -> float:
        return max(0.0, self.abs_mid() - self.abs_radius())

    # comparisons -------------------------------------------------------------
    def contains(self, value: Number) -> bool:
        return abs(complex(value) - self.mid) <= self.radius

    def overlaps(self, other: "ErrorBoundedComplex") -> bool:
        return abs(self.mid - other.mid) <= self.radius + other.radius

    def __str__(self) -> str:
        return f"({self.mid.real:.17g}{self.mid.imag:+.17g}j) +/- {self.radius:.3g}"


def real_power(base: float, exponent: complex) -> ErrorBoundedComplex:
    """``base ** exponent`` for a positive real base, as ``exp(exponent * log(base))``."""

    if not base > 0.0:
        raise ValueError(f"Base must be positive, got {base!r}.")
    exponent = complex(exponent)
    log_base = math.log(base)
    mid = cmath.exp(exponent * log_base)
    # A relative error e in the base or its logarithm moves the result by ~|exponent| e.
    relative = 3.0 + abs(exponent) * (1.0 + abs(log_base))
    return ErrorBoundedComplex(mid, rounding_error(relative * abs(mid)))


def _coerce(value: "ErrorBoundedComplex | Number") -> ErrorBoundedComplex:
    if isinstance(value, ErrorBoundedComplex):
        return value
    return ErrorBoundedComplex.exact(value)


__all__ = [
    "EPSILON",
    "ROUNDING_ULPS",
    "UNDERFLOW",
    "ErrorBoundedComplex",
    "real_power",
    "round_up",
    "rounding_error",
]
