"""Shared constants and enumerations."""

from __future__ import annotations

from enum import Enum

import numpy as np

EULER_GAMMA = float(np.euler_gamma)

POLE_EXCLUSION = 1e-6
DEFAULT_N_CEILING = 10 ** 9


class Method(str, Enum):
    HURWITZ = "hurwitz_decomposition"
    PARTIAL_SUMMATION = "partial_summation"


class Consistency(str, Enum):
    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"
    INCONCLUSIVE = "inconclusive"


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


class CertificateStatus(str, Enum):
    CERTIFIED = "certified"
    FAILED = "failed"
    EVIDENCE_ONLY = "evidence_only"


__all__ = [
    "CertificateStatus",
    "Consistency",
    "DEFAULT_N_CEILING",
    "EULER_GAMMA",
    "Method",
    "POLE_EXCLUSION",
    "Verdict",
]
