"""Evaluate |L(1+it, chi)| over a (q, t) grid and test it against the closed-form bounds."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from lbounds.bounds import corollary_bound, lemma_average_bound, theorem1_bound, theorem2_bound
from lbounds.characters import enumerate_characters
from lbounds.hurwitz import TruncationError
from lbounds.lfun import (
    LPoint,
    component_target,
    cross_check,
    hurwitz_components,
    l_eval_hurwitz,
    l_eval_partial_sum,
    partial_sum_truncation,
)
from lbounds.types import Consistency, Method, Verdict

from .config import SweepConfig
from .types import BOUND_NAMES, LARGE_T_BOUNDS

BOUND_FUNCTIONS = {
    "theorem1": theorem1_bound,
    "theorem2": theorem2_bound,
    "corollary": corollary_bound,
    "lemma": lemma_average_bound,
}


@dataclass(frozen=True)
class BoundReportRow:
    q: int
    chi_index: int
    chi_exponents: Tuple[int, ...]
    t: float
    method: str
    l_abs_mid: float
    l_abs_radius: float
    bound_name: str
    bound_value: float
    margin: float
    verdict: Verdict

    @property
    def sort_key(self) -> Tuple[int, int, float, str, int]:
        return (self.q, self.chi_index, self.t, self.method, BOUND_NAMES.index(self.bound_name))

    @property
    def location(self) -> str:
        label = "-".join(str(e) for e in self.chi_exponents)
        return f"q={self.q} chi={label} t={self.t:.17g} {self.method} {self.bound_name}"


@dataclass(frozen=True)
class GridTask:
    q: int
    t: float
    target_radius: float
    evaluator: str
    bounds_checked: Tuple[str, ...]
    em_order: int
    psum_max_terms: int


@dataclass(frozen=True)
class TaskResult:
    rows: Tuple[BoundReportRow, ...]
    inconsistent: Tuple[str, ...]


@dataclass(frozen=True)
class SweepSummary:
    passed: int
    inconclusive: int
    failed: int
    inconsistent: Tuple[str, ...]
    min_margin: Optional[float]
    min_margin_location: Optional[str]

    @property
    def exit_code(self) -> int:
        if self.failed or self.inconsistent:
            return 1
        if self.inconclusive:
            return 2
        return 0


@dataclass(frozen=True)
class SweepResult:
    rows: Tuple[BoundReportRow, ...]
    summary: SweepSummary


def applicable_bounds(q: int, t: float, names: Iterable[str]) -> List[Tuple[str, float]]:
    """(name, value) for each checked bound whose hypothesis covers (q, t), in canonical order."""

    selected = set(names)
    return [
        (name, BOUND_FUNCTIONS[name](q, t))
        for name in BOUND_NAMES
        if name in selected and (name not in LARGE_T_BOUNDS or t > 50.0)
    ]


def classify(l_abs_mid: float, l_abs_radius: float, bound: float) -> Verdict:
    if not (math.isfinite(l_abs_mid) and math.isfinite(l_abs_radius)):
        return Verdict.INCONCLUSIVE
    if l_abs_mid + l_abs_radius < bound:
        return Verdict.PASS
    if l_abs_mid - l_abs_radius > bound:
        return Verdict.FAIL
    return Verdict.INCONCLUSIVE


def evaluate_task(task: GridTask) -> TaskResult:
    q, t = task.q, task.t
    characters = enumerate_characters(q, include_principal=False)
    bounds = applicable_bounds(q, t, task.bounds_checked)
    use_hurwitz = task.evaluator in ("hurwitz", "both")
    use_psum = task.evaluator in ("partial_sum", "both")

    components = None
    if use_hurwitz:
        try:
            components = hurwitz_components(q, t, component_target(q, task.target_radius), task.em_order)
        except TruncationError as error:
            logging.warning("Hurwitz rows at q=%d t=%.6g are inconclusive: %s", q, t, error)

    truncation = partial_sum_truncation(q, t, task.target_radius)
    if use_psum and truncation > task.psum_max_terms:
        capped = max(q, task.psum_max_terms - task.psum_max_terms % q)
        logging.warning(
            "Target radius %.3g at q=%d t=%.6g needs N=%d; partial sums capped at N=%d.",
            task.target_radius,
            q,
            t,
            truncation,
            capped,
        )
        truncation = capped

    rows: List[BoundReportRow] = []
    inconsistent: List[str] = []
    for index, chi in enumerate(characters):
        points: Dict[Method, Optional[LPoint]] = {}
        if use_hurwitz:
            points[Method.HURWITZ] = (
                None
                if components is None
                else l_eval_hurwitz(chi, t, task.target_radius, task.em_order, components)
            )
        if use_psum:
            points[Method.PARTIAL_SUMMATION] = l_eval_partial_sum(chi, t, truncation)
        for method, point in points.items():
            mid = point.abs_mid if point is not None else math.nan
            radius = point.abs_radius if point is not None else math.nan
            for name, value in bounds:
                rows.append(
                    BoundReportRow(
                        q,
                        index,
                        chi.exponents,
                        t,
                        method.value,
                        mid,
                        radius,
                        name,
                        value,
                        value - (mid + radius),
                        classify(mid, radius, value),
                    )
                )
        first, second = points.get(Method.HURWITZ), points.get(Method.PARTIAL_SUMMATION)
        if first is not None and second is not None and cross_check(first, second) is Consistency.INCONSISTENT:
            inconsistent.append(f"q={q} chi={chi.label} t={t:.17g}")
    logging.debug("Finished q=%d t=%.6g: %d rows.", q, t, len(rows))
    return TaskResult(tuple(rows), tuple(inconsistent))


def build_tasks(cfg: SweepConfig) -> List[GridTask]:
    return [
        GridTask(q, t, cfg.target_radius, cfg.evaluator, cfg.bounds_checked, cfg.em_order, cfg.psum_max_terms)
        for q in cfg.moduli()
        for t in cfg.t_grid()
    ]


def run_sweep(cfg: SweepConfig) -> SweepResult:
    tasks = build_tasks(cfg)
    logging.info(
        "Sweeping q in [%d, %d] over %d t values (%d grid points) with %d worker(s).",
        cfg.q_min,
        cfg.q_max,
        len(cfg.t_grid()),
        len(tasks),
        cfg.parallelism,
    )
    if cfg.parallelism == 1:
        results = [evaluate_task(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as executor:
            results = list(executor.map(evaluate_task, tasks))

    rows = sorted((row for result in results for row in result.rows), key=lambda row: row.sort_key)
    inconsistent = tuple(sorted(entry for result in results for entry in result.inconsistent))
    summary = summarize_rows(rows, inconsistent)
    logging.info(
        "Sweep finished: %d PASS, %d INCONCLUSIVE, %d FAIL, %d inconsistent.",
        summary.passed,
        summary.inconclusive,
        summary.failed,
        len(summary.inconsistent),
    )
    return SweepResult(tuple(rows), summary)


def summarize_rows(rows: Iterable[BoundReportRow], inconsistent: Tuple[str, ...] = ()) -> SweepSummary:
    counts = {verdict: 0 for verdict in Verdict}
    lowest: Optional[BoundReportRow] = None
    for row in rows:
        counts[row.verdict] += 1
        if math.isfinite(row.margin) and (lowest is None or row.margin < lowest.margin):
            lowest = row
    return SweepSummary(
        counts[Verdict.PASS],
        counts[Verdict.INCONCLUSIVE],
        counts[Verdict.FAIL],
        inconsistent,
        None if lowest is None else lowest.margin,
        None if lowest is None else lowest.location,
    )
