"""Common types and constants for the bound sweep."""

from __future__ import annotations

BOUND_NAMES = ("theorem1", "theorem2", "corollary", "lemma")
EVALUATORS = ("hurwitz", "partial_sum", "both")
T_SPACINGS = ("linear", "log")
LARGE_T_BOUNDS = ("theorem1", "lemma")
"""Bounds whose hypothesis is t > 50."""
