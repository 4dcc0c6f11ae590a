"""Dirichlet characters modulo q: unit-group generators, evaluation and partial sums."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
import sympy
from sympy.ntheory import factorint, is_primitive_root
from sympy.ntheory.modular import crt

from .balls import ErrorBoundedComplex

ExponentVector = Tuple[int, ...]


@dataclass(frozen=True)
class UnitGroupStructure:
    """Canonical generators of (Z/qZ)* built from the prime-power decomposition of q."""

    modulus: int
    generators: Tuple[int, ...]
    orders: Tuple[int, ...]
    factorization: Tuple[Tuple[int, int], ...]

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def exponent_table(self) -> Dict[int, ExponentVector]:
        """Map every unit residue to its exponent vector against the generators."""

        table: Dict[int, ExponentVector] = {1 % self.modulus: ()}
        for generator, order in zip(self.generators, self.orders):
            extended: Dict[int, ExponentVector] = {}
            for element, vector in table.items():
                power = element
                for exponent in range(order):
                    extended[power] = vector + (exponent,)
                    power = power * generator % self.modulus
            table = extended
        return table

    def exponents_of(self, n: int) -> Optional[ExponentVector]:
        return self.exponent_table.get(n % self.modulus)


@dataclass(frozen=True)
class RootOfUnity:
    """``e^{2 pi i turn}`` with an exact rational turn; ``turn=None`` encodes 0."""

    turn: Optional[Fraction]

    @property
    def is_zero(self) -> bool:
        return self.turn is None

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if self.turn is None or other.turn is None:
            return ZERO
        return RootOfUnity((self.turn + other.turn) % 1)

    def to_ball(self) -> ErrorBoundedComplex:
        if self.turn is None:
            return ErrorBoundedComplex.exact(0)
        return ErrorBoundedComplex.unit_turn(self.turn.numerator, self.turn.denominator)

    def __complex__(self) -> complex:
        return self.to_ball().mid


ZERO = RootOfUnity(None)


@dataclass(frozen=True)
class CyclotomicSum:
    """Exact value ``sum_j coefficients[j] * e^{2 pi i j / order}``."""

    order: int
    coefficients: Tuple[int, ...]

    def is_zero(self) -> bool:
        if not any(self.coefficients):
            return True
        x = sympy.Symbol("x")
        polynomial = sympy.Poly(list(reversed(self.coefficients)), x)
        return polynomial.rem(sympy.Poly(sympy.cyclotomic_poly(self.order, x), x)).is_zero

    def to_ball(self) -> ErrorBoundedComplex:
        total = ErrorBoundedComplex.exact(0)
        for numerator, count in enumerate(self.coefficients):
            if count:
                total = total + ErrorBoundedComplex.unit_turn(numerator, self.order) * count
        return total


@dataclass(frozen=True)
class DirichletCharacter:
    """A character mod q, given by one exponent per canonical generator.

    Generator ``g_i`` is sent to ``e^{2 pi i exponents[i] / orders[i]}``.
    """

    modulus: int
    exponents: ExponentVector
    structure: UnitGroupStructure = field(compare=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.exponents) != len(self.structure.orders):
            raise ValueError("Exponent vector does not match the unit group.")
        for exponent, order in zip(self.exponents, self.structure.orders):
            if not 0 <= exponent < order:
                raise ValueError(f"Exponent {exponent} outside [0, {order}).")

    @property
    def is_principal(self) -> bool:
        return not any(self.exponents)

    @property
    def order(self) -> int:
        """Multiplicative order of the character (its values are order-th roots of unity)."""

        result = 1
        for exponent, order in zip(self.exponents, self.structure.orders):
            result = math.lcm(result, order // math.gcd(exponent, order))
        return result

    @property
    def label(self) -> str:
        return "-".join(str(exponent) for exponent in self.exponents) or "trivial"

    @cached_property
    def residue_turns(self) -> Tuple[int, ...]:
        """Turn numerator over :attr:`order` for each residue 0..q-1, -1 where gcd(n, q) > 1."""

        d = self.order
        turns = [-1] * self.modulus
        orders = self.structure.orders
        for residue, vector in self.structure.exponent_table.items():
            turn = sum(
                Fraction(e * x, o) for e, x, o in zip(self.exponents, vector, orders)
            ) % 1
            turns[residue] = int(turn * d)
        return tuple(turns)

    def partial_sum_values(self) -> np.ndarray:
        """A(n) for n = 0..q-1 as complex doubles."""

        values, _ = self.value_table()
        values[0] = 0
        return np.cumsum(values)

    def value_table(self) -> Tuple[np.ndarray, float]:
        """Complex values of the character on residues 0..q-1 and a common error radius."""

        d = self.order
        values = np.zeros(self.modulus, dtype=np.complex128)
        radius = 0.0
        for residue, turn in enumerate(self.residue_turns):
            if turn < 0:
                continue
            ball = ErrorBoundedComplex.unit_turn(turn, d)
            values[residue] = ball.mid
            radius = max(radius, ball.radius)
        return values, radius


@lru_cache(maxsize=256)
def build_unit_group(q: int) -> UnitGroupStructure:
    if q < 1:
        raise ValueError(f"Modulus must be positive, got {q}.")
    factorization = tuple(sorted(factorint(q).items()))
    generators: List[int] = []
    orders: List[int] = []
    for prime, exponent in factorization:
        prime_power = prime ** exponent
        for local_generator, order in _prime_power_generators(prime, exponent):
            generators.append(_lift(local_generator, prime_power, q))
            orders.append(order)
    structure = UnitGroupStructure(q, tuple(generators), tuple(orders), factorization)
    if len(structure.exponent_table) != totient(q):
        raise ArithmeticError(f"Generators for q={q} do not span the unit group.")
    return structure


def totient(q: int) -> int:
    if q < 1:
        raise ValueError(f"Modulus must be positive, got {q}.")
    return math.prod(p ** (e - 1) * (p - 1) for p, e in factorint(q).items())


def iter_characters(q: int, include_principal: bool = True) -> Iterator[DirichletCharacter]:
    structure = build_unit_group(q)
    for exponents in itertools.product(*(range(order) for order in structure.orders)):
        if not include_principal and not any(exponents):
            continue
        yield DirichletCharacter(q, tuple(exponents), structure)


def enumerate_characters(q: int, include_principal: bool = True) -> List[DirichletCharacter]:
    """All characters mod q in lexicographic exponent order (principal first when included)."""

    return list(iter_characters(q, include_principal))


def character_by_index(q: int, index: int) -> DirichletCharacter:
    characters = enumerate_characters(q, include_principal=False)
    if not 0 <= index < len(characters):
        raise ValueError(
            f"Character index {index} out of range; q={q} has {len(characters)} non-principal characters."
        )
    return characters[index]


def char_eval(chi: DirichletCharacter, n: int) -> RootOfUnity:
    turn = chi.residue_turns[n % chi.modulus]
    if turn < 0:
        return ZERO
    return RootOfUnity(Fraction(turn, chi.order))


def partial_sum(chi: DirichletCharacter, n: int) -> CyclotomicSum:
    """A(n) = sum_{1 <= k <= n} chi(k), counted over the residues 1..n mod q.

    Full periods sum to zero, so only the remainder n mod q contributes.
    """

    if chi.is_principal:
        raise ValueError("Partial sums are only bounded for non-principal characters.")
    if n < 0:
        raise ValueError(f"N must be nonnegative, got {n}.")
    turns = Counter(turn for turn in chi.residue_turns[1 : n % chi.modulus + 1] if turn >= 0)
    return CyclotomicSum(chi.order, tuple(turns[j] for j in range(chi.order)))


def _prime_power_generators(prime: int, exponent: int) -> List[Tuple[int, int]]:
    if prime != 2:
        prime_power = prime ** exponent
        return [(_smallest_primitive_root(prime, prime_power), prime_power - prime_power // prime)]
    if exponent == 1:
        return []
    if exponent == 2:
        return [(3, 2)]
    prime_power = 2 ** exponent
    return [(prime_power - 1, 2), (5, 2 ** (exponent - 2))]


def _smallest_primitive_root(prime: int, prime_power: int) -> int:
    for candidate in range(2, prime_power):
        if candidate % prime and is_primitive_root(candidate, prime_power):
            return candidate
    raise ArithmeticError(f"No primitive root modulo {prime_power}.")


def _lift(local_generator: int, prime_power: int, q: int) -> int:
    """The unit mod q that is local_generator mod prime_power and 1 mod the cofactor."""

    cofactor = q // prime_power
    if cofactor == 1:
        return local_generator % q
    value, _ = crt([prime_power, cofactor], [local_generator, 1])
    return int(value)


__all__ = [
    "CyclotomicSum",
    "DirichletCharacter",
    "RootOfUnity",
    "UnitGroupStructure",
    "ZERO",
    "build_unit_group",
    "char_eval",
    "character_by_index",
    "enumerate_characters",
    "iter_characters",
    "partial_sum",
    "totient",
]
