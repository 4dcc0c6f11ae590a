"""Output formatting helpers for sweep results."""

from __future__ import annotations

from typing import Sequence

from .runner import SweepSummary

MAX_LISTED_LOCATIONS = 10


def summarize(summary: SweepSummary, output_path: str, fingerprint: str) -> str:
    parts = [
        f"Sweep report written to {output_path}",
        f"  SHA-256: {fingerprint}",
        f"  PASS: {summary.passed}  INCONCLUSIVE: {summary.inconclusive}  FAIL: {summary.failed}",
        _minimum(summary),
        _location_list("Evaluators disagree at", summary.inconsistent),
    ]
    return "\n".join(filter(None, parts))


def _minimum(summary: SweepSummary) -> str:
    if summary.min_margin is None:
        return "  No finite margins."
    return f"  Minimum margin {summary.min_margin:.6g} at {summary.min_margin_location}"


def _location_list(label: str, locations: Sequence[str], limit: int = MAX_LISTED_LOCATIONS) -> str:
    """Grid locations under ``label``, the first ``limit`` of them in sweep order."""

    if not locations:
        return ""
    lines = [f"  {label} {len(locations)} grid point(s):"]
    lines.extend(f"    - {location}" for location in locations[:limit])
    if len(locations) > limit:
        lines.append(f"    ... and {len(locations) - limit} more in the CSV report")
    return "\n".join(lines)
