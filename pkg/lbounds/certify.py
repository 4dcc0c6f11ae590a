"""Certify that a residual stays negative on a region by adaptive bisection.

On every cell each term is bounded above by its value at one corner. Which
corner depends on the sign of the term's coded partial derivatives, checked at
the cell's sample points: the corners, plus a geometric ladder along any axis
that runs to infinity. Unbounded axes are covered by tail cells whose
increasing terms are evaluated at their limits.

The signs are floats read at those samples only. A residual family is in scope
when each coded derivative keeps one sign between the samples of every cell
it can be asked about, as the shipped families do; a derivative with an
interior sign change the samples miss would give an unsound corner.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .bounds import (
    BACKLUND_M,
    DIRECTED,
    FLOAT,
    PARTIAL_SUMMATION_B,
    PARTIAL_SUMMATION_M,
    ResidualTerm,
    backlund_terms,
    evaluate_terms,
    gamma_glue_terms,
    partial_summation_terms,
    theorem2_glue_terms,
)
from .types import CertificateStatus

TAIL_SAMPLE_RATIO = 10.0
TAIL_SAMPLE_LIMIT = 1e100
DEFAULT_TOLERANCE = 1e-6
DEFAULT_MAX_CELLS = 200_000
ROUNDING_MODES = {"directed": DIRECTED, "inflate": FLOAT}

Direction = int
"""-1 non-increasing, +1 non-decreasing, 0 independent of the axis."""


class ResidualKind(str, Enum):
    BACKLUND = "backlund"
    PARTIAL_SUMMATION = "partial_summation"
    GAMMA_GLUE = "gamma_glue"
    THEOREM2_GLUE = "theorem2_glue"


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if math.isnan(self.lo) or math.isnan(self.hi) or not self.lo <= self.hi:
            raise ValueError(f"Malformed interval [{self.lo!r}, {self.hi!r}].")
        if math.isinf(self.lo):
            raise ValueError("Intervals must have a finite left endpoint.")

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def halves(self) -> Tuple["Interval", "Interval"]:
        middle = self.lo + (self.hi - self.lo) / 2.0
        return Interval(self.lo, middle), Interval(middle, self.hi)

    def samples(self) -> List[float]:
        if self.bounded:
            return [self.lo, self.hi]
        points = [self.lo]
        point = max(self.lo, 1.0)
        while point < TAIL_SAMPLE_LIMIT:
            point *= TAIL_SAMPLE_RATIO
            points.append(point)
        return points


@dataclass(frozen=True)
class Cell:
    t: Interval
    q: Optional[Interval] = None

    @property
    def axes(self) -> Tuple[str, ...]:
        return ("t",) if self.q is None else ("q", "t")

    @property
    def is_tail(self) -> bool:
        return not self.t.bounded or (self.q is not None and not self.q.bounded)

    def interval(self, axis: str) -> Interval:
        interval = self.t if axis == "t" else self.q
        if interval is None:
            raise KeyError(axis)
        return interval

    def split(self, axis: str) -> Tuple["Cell", "Cell"]:
        low, high = self.interval(axis).halves()
        if axis == "t":
            return Cell(low, self.q), Cell(high, self.q)
        return Cell(self.t, low), Cell(self.t, high)

    def describe(self) -> str:
        parts = [f"t in [{self.t.lo:.17g}, {self.t.hi:.17g}]"]
        if self.q is not None:
            parts.insert(0, f"q in [{self.q.lo:.17g}, {self.q.hi:.17g}]")
        return ", ".join(parts)


@dataclass(frozen=True)
class ResidualSpec:
    """A residual family, its parameters and the region its negativity is claimed on.

    The t-range runs from ``t_min`` to the ``t_max`` handed to the certifier;
    ``q_min``/``q_max`` bound the modulus axis of the partial-summation family.

    Only families whose coded derivatives cannot change sign strictly between
    the sample points of a cell are supported.
    """

    kind: ResidualKind
    t_min: float
    m: Optional[float] = None
    b: Optional[Fraction] = None
    q_min: Optional[float] = None
    q_max: Optional[float] = None
    include_tails: bool = True

    def __post_init__(self) -> None:
        if self.kind is ResidualKind.BACKLUND:
            if self.m is None or not self.m > 0:
                raise ValueError(f"The Backlund residual needs m > 0, got m={self.m!r}.")
            if not self.t_min > self.m:
                raise ValueError(f"Region must start beyond the singularity: need t_min > m, got {self.t_min!r} <= {self.m!r}.")
        elif self.kind is ResidualKind.PARTIAL_SUMMATION:
            if self.m is None or self.b is None or self.q_min is None or self.q_max is None:
                raise ValueError("The partial-summation residual needs m, b, q_min and q_max.")
            if not self.m > 0 or not self.q_max >= self.q_min > 0 or self.t_min < 0:
                raise ValueError(
                    f"Malformed partial-summation region: m={self.m!r}, q in [{self.q_min!r}, {self.q_max!r}], t_min={self.t_min!r}."
                )
            if not self.q_min * (self.t_min + float(self.b)) > self.m:
                raise ValueError("Need 2q(t+b) > 2m on the whole region.")
        elif self.kind is ResidualKind.GAMMA_GLUE:
            if not self.t_min > 0:
                raise ValueError(f"The gamma glue residual needs t_min > 0, got {self.t_min!r}.")
        elif self.t_min < 0:
            raise ValueError(f"The glue residual needs t_min >= 0, got {self.t_min!r}.")

    @property
    def two_dimensional(self) -> bool:
        return self.kind is ResidualKind.PARTIAL_SUMMATION

    @property
    def has_tails(self) -> bool:
        return self.include_tails and self.kind in (ResidualKind.BACKLUND, ResidualKind.PARTIAL_SUMMATION)

    def terms(self) -> Tuple[ResidualTerm, ...]:
        if self.kind is ResidualKind.BACKLUND:
            return backlund_terms(self.m)
        if self.kind is ResidualKind.PARTIAL_SUMMATION:
            return partial_summation_terms(self.m, self.b)
        if self.kind is ResidualKind.GAMMA_GLUE:
            return gamma_glue_terms()
        return theorem2_glue_terms()

    def initial_cells(self, t_max: float) -> List[Cell]:
        if not t_max > self.t_min:
            raise ValueError(f"t_max must exceed t_min, got {t_max!r} <= {self.t_min!r}.")
        t_range = Interval(self.t_min, t_max)
        t_tail = Interval(t_max, math.inf)
        if not self.two_dimensional:
            return [Cell(t_range)] + ([Cell(t_tail)] if self.has_tails else [])
        q_range = Interval(self.q_min, self.q_max)
        cells = [Cell(t_range, q_range)]
        if self.has_tails:
            q_tail = Interval(self.q_max, math.inf)
            cells += [Cell(t_tail, q_range), Cell(t_range, q_tail), Cell(t_tail, q_tail)]
        return cells


def backlund_spec(m: float = BACKLUND_M, t_min: float = 50.0, include_tails: bool = True) -> ResidualSpec:
    return ResidualSpec(ResidualKind.BACKLUND, t_min, m=m, include_tails=include_tails)


def partial_summation_spec(
    m: float = PARTIAL_SUMMATION_M,
    b: Fraction = PARTIAL_SUMMATION_B,
    q_min: float = 2.0,
    q_max: float = 1e4,
    t_min: float = 0.0,
    include_tails: bool = True,
) -> ResidualSpec:
    return ResidualSpec(
        ResidualKind.PARTIAL_SUMMATION, t_min, m=m, b=b, q_min=q_min, q_max=q_max, include_tails=include_tails
    )


def gamma_glue_spec(t_min: float) -> ResidualSpec:
    return ResidualSpec(ResidualKind.GAMMA_GLUE, t_min, include_tails=False)


def theorem2_glue_spec(t_min: float = 0.0) -> ResidualSpec:
    return ResidualSpec(ResidualKind.THEOREM2_GLUE, t_min, include_tails=False)


@dataclass(frozen=True)
class CellRecord:
    cell: Cell
    upper_bound: float
    rounding: str
    evidence: bool = False
    corner: Tuple[Tuple[str, Tuple[float, ...]], ...] = ()
    """Per-term evaluation point, recorded for tail cells."""


@dataclass(frozen=True)
class ResidualCertificate:
    spec: ResidualSpec
    t_max: float
    tolerance: float
    rounding: str
    subintervals: Tuple[CellRecord, ...]
    tails: Tuple[CellRecord, ...]
    status: CertificateStatus
    failure: Optional[CellRecord] = None
    reason: str = ""

    @property
    def cells(self) -> Tuple[CellRecord, ...]:
        return self.subintervals + self.tails

    @property
    def max_upper_bound(self) -> Optional[float]:
        """Upper bound closest to zero over every recorded cell."""

        if not self.cells:
            return None
        return max(record.upper_bound for record in self.cells)


@dataclass
class _Search:
    terms: Tuple[ResidualTerm, ...]
    context: Any
    tolerance: float
    subintervals: List[CellRecord] = field(default_factory=list)
    tails: List[CellRecord] = field(default_factory=list)
    evidence: int = 0


def certify_residual_negative(
    spec: ResidualSpec,
    t_max: float,
    subdivision_tolerance: float = DEFAULT_TOLERANCE,
    rounding: str = "directed",
    max_cells: int = DEFAULT_MAX_CELLS,
) -> ResidualCertificate:
    """Cover the region of ``spec`` by cells whose rigorous upper bound is negative.

    Stops at the first cell that is at minimum width and still has a
    nonnegative upper bound, and reports it as the failure.
    """

    if not subdivision_tolerance > 0:
        raise ValueError(f"Tolerance must be positive, got {subdivision_tolerance!r}.")
    if rounding not in ROUNDING_MODES:
        raise ValueError(f"Unknown rounding mode {rounding!r}; expected one of {sorted(ROUNDING_MODES)}.")
    search = _Search(spec.terms(), ROUNDING_MODES[rounding], subdivision_tolerance)
    stack = list(reversed(spec.initial_cells(t_max)))
    logging.info(
        "Certifying %s residual on %s up to t=%g (tolerance %g, %s rounding).",
        spec.kind.value,
        ", ".join(cell.describe() for cell in stack[::-1]),
        t_max,
        subdivision_tolerance,
        rounding,
    )

    def finish(status: CertificateStatus, failure: Optional[CellRecord] = None, reason: str = "") -> ResidualCertificate:
        certificate = ResidualCertificate(
            spec,
            t_max,
            subdivision_tolerance,
            search.context.name,
            tuple(search.subintervals),
            tuple(search.tails),
            status,
            failure,
            reason,
        )
        logging.info(
            "Certificate %s: %d cells, %d tail cells, max upper bound %s.",
            status.value,
            len(search.subintervals),
            len(search.tails),
            certificate.max_upper_bound,
        )
        return certificate

    processed = 0
    while stack:
        processed += 1
        if processed > max_cells:
            return finish(CertificateStatus.FAILED, reason=f"cell budget of {max_cells} exhausted")
        cell = stack.pop()
        directions, mixed_axis = _directions(search.terms, cell)
        if directions is None:
            if _splittable(cell, mixed_axis, search.tolerance):
                stack.extend(reversed(cell.split(mixed_axis)))
                continue
            record = _sample_cell(search, cell)
            if record is None:
                failure = CellRecord(cell, math.nan, search.context.name, evidence=True)
                logging.warning("Residual is nonnegative at a sample point of %s.", cell.describe())
                return finish(CertificateStatus.FAILED, failure, "nonnegative sample on a non-monotone cell")
            search.evidence += 1
            _store(search, record)
            continue

        record = _bound_cell(search, cell, directions)
        if record.upper_bound < 0:
            _store(search, record)
            continue
        split_axis = _widest(cell, search.tolerance)
        if split_axis is None:
            logging.warning(
                "Upper bound %.17g >= 0 on %s at minimum width.", record.upper_bound, cell.describe()
            )
            return finish(CertificateStatus.FAILED, record, "nonnegative upper bound at minimum width")
        stack.extend(reversed(cell.split(split_axis)))

    if search.evidence:
        return finish(
            CertificateStatus.EVIDENCE_ONLY,
            reason=f"{search.evidence} cells rest on sampling because monotonicity was inconclusive",
        )
    return finish(CertificateStatus.CERTIFIED)


def _store(search: _Search, record: CellRecord) -> None:
    (search.tails if record.cell.is_tail else search.subintervals).append(record)


def _bound_cell(search: _Search, cell: Cell, directions: Sequence[Dict[str, Direction]]) -> CellRecord:
    values = []
    corners = []
    for term, direction in zip(search.terms, directions):
        point = _corner(cell, direction)
        corners.append((term.name, point))
        values.append(term.evaluate(search.context, *point))
    upper = search.context.upper_sum(values)
    return CellRecord(cell, upper, search.context.name, corner=tuple(corners) if cell.is_tail else ())


def _corner(cell: Cell, direction: Dict[str, Direction]) -> Tuple[float, float]:
    def pick(axis: str) -> float:
        interval = cell.interval(axis)
        return interval.hi if direction.get(axis, 0) > 0 else interval.lo

    q = pick("q") if cell.q is not None else 0.0
    return q, pick("t")


def _sample_cell(search: _Search, cell: Cell) -> Optional[CellRecord]:
    """Float evaluation on the sample grid; None when any sample is nonnegative."""

    highest = -math.inf
    for q, t in _grid(cell):
        value = evaluate_terms(search.terms, q, t, FLOAT)
        if not value < 0:
            return None
        highest = max(highest, value)
    return CellRecord(cell, highest, FLOAT.name, evidence=True)


def _grid(cell: Cell) -> Iterator[Tuple[float, float]]:
    q_samples = cell.q.samples() if cell.q is not None else [0.0]
    return itertools.product(q_samples, cell.t.samples())


def _directions(
    terms: Sequence[ResidualTerm], cell: Cell
) -> Tuple[Optional[List[Dict[str, Direction]]], Optional[str]]:
    """Per-term monotone direction on each axis, or (None, axis along which a sign changes).

    Axes are resolved one at a time: an axis whose derivative keeps one sign
    on every sample of the cell is pinned to the endpoint it favours, and the
    remaining axes are checked on that face only.
    """

    result: List[Dict[str, Direction]] = []
    for term in terms:
        direction: Dict[str, Direction] = {}
        pinned: Dict[str, float] = {}
        pending = [axis for axis in cell.axes if axis in term.derivatives]
        while pending:
            first_signs = None
            for axis in pending:
                signs = _signs(term.derivatives[axis], cell, pinned)
                first_signs = first_signs or signs
                nonzero = {sign for sign in signs.values() if sign}
                if len(nonzero) <= 1:
                    break
            else:
                return None, _varying_axis(first_signs)
            sign = nonzero.pop() if nonzero else 0
            interval = cell.interval(axis)
            direction[axis] = sign
            pinned[axis] = interval.hi if sign > 0 else interval.lo
            pending.remove(axis)
        result.append(direction)
    return result, None


def _samples(cell: Cell, axis: str, pinned: Dict[str, float]) -> List[float]:
    if axis not in cell.axes:
        return [0.0]
    value = pinned.get(axis)
    if value is not None and math.isfinite(value):
        return [value]
    return cell.interval(axis).samples()


def _signs(
    derivative: Callable[[float, float], float], cell: Cell, pinned: Dict[str, float]
) -> Dict[Tuple[int, int], int]:
    return {
        (i, j): _sign(derivative(q, t))
        for i, q in enumerate(_samples(cell, "q", pinned))
        for j, t in enumerate(_samples(cell, "t", pinned))
    }


def _varying_axis(signs: Dict[Tuple[int, int], int]) -> str:
    for (i, j), sign in signs.items():
        for (k, l), other in signs.items():
            if sign * other < 0 and j == l and i != k:
                return "q"
    return "t"


def _sign(value: float) -> int:
    if math.isnan(value):
        raise ArithmeticError("Coded derivative evaluated to NaN.")
    return (value > 0) - (value < 0)


def _splittable(cell: Cell, axis: Optional[str], tolerance: float) -> bool:
    if axis is None or axis not in cell.axes:
        return False
    interval = cell.interval(axis)
    return interval.bounded and interval.width >= tolerance


def _widest(cell: Cell, tolerance: float) -> Optional[str]:
    candidates = [axis for axis in cell.axes if _splittable(cell, axis, tolerance)]
    if not candidates:
        return None
    return max(candidates, key=lambda axis: cell.interval(axis).width)


def certificate_records(certificate: ResidualCertificate) -> Iterator[Dict[str, Any]]:
    """Header, one record per cell and a summary; every number as a 17-digit string."""

    spec = certificate.spec
    yield {
        "record": "header",
        "kind": spec.kind.value,
        "m": _number(spec.m),
        "b": None if spec.b is None else str(spec.b),
        "t_min": _number(spec.t_min),
        "t_max": _number(certificate.t_max),
        "q_min": _number(spec.q_min),
        "q_max": _number(spec.q_max),
        "tails": spec.has_tails,
        "tolerance": _number(certificate.tolerance),
        "rounding": certificate.rounding,
    }
    for record in certificate.cells:
        yield _cell_record(record)
    yield {
        "record": "summary",
        "status": certificate.status.value,
        "cells": len(certificate.subintervals),
        "tail_cells": len(certificate.tails),
        "max_upper_bound": _number(certificate.max_upper_bound),
        "failure": None if certificate.failure is None else _cell_record(certificate.failure),
        "reason": certificate.reason,
    }


def _cell_record(record: CellRecord) -> Dict[str, Any]:
    cell = record.cell
    entry: Dict[str, Any] = {
        "record": "cell",
        "t_lo": _number(cell.t.lo),
        "t_hi": _number(cell.t.hi),
    }
    if cell.q is not None:
        entry["q_lo"] = _number(cell.q.lo)
        entry["q_hi"] = _number(cell.q.hi)
    entry.update(
        upper_bound=_number(record.upper_bound),
        rounding=record.rounding,
        tail=cell.is_tail,
        evidence=record.evidence,
    )
    if record.corner:
        entry["term_points"] = {
            name: [_number(value) for value in point] for name, point in record.corner
        }
    return entry


def _number(value: Optional[float]) -> Optional[str]:
    return None if value is None else format(float(value), ".17g")


__all__ = [
    "Cell",
    "CellRecord",
    "DEFAULT_TOLERANCE",
    "Interval",
    "ROUNDING_MODES",
    "ResidualCertificate",
    "ResidualKind",
    "ResidualSpec",
    "backlund_spec",
    "certificate_records",
    "certify_residual_negative",
    "gamma_glue_spec",
    "partial_summation_spec",
    "theorem2_glue_spec",
]
