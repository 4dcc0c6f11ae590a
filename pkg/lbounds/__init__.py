"""Rigorous numerics for Dirichlet L-functions on the line Re(s) = 1."""

from .balls import ErrorBoundedComplex
from .bounds import (
    backlund_residual,
    coprime_reciprocal_sum,
    corollary_bound,
    gamma_glue_check,
    harmonic_bound_check,
    lemma_hurwitz_bound,
    partial_summation_residual,
    theorem1_bound,
    theorem2_bound,
    theorem2_glue_check,
)
from .certify import ResidualCertificate, ResidualSpec, certify_residual_negative
from .characters import DirichletCharacter, char_eval, enumerate_characters, partial_sum
from .hurwitz import EMConfig, TruncationError, hurwitz_zeta, hurwitz_zeta_em
from .lfun import LPoint, cross_check, l_eval_hurwitz, l_eval_partial_sum
from .types import CertificateStatus, Consistency, Method, Verdict

__all__ = [
    "CertificateStatus",
    "Consistency",
    "DirichletCharacter",
    "EMConfig",
    "ErrorBoundedComplex",
    "LPoint",
    "Method",
    "ResidualCertificate",
    "ResidualSpec",
    "TruncationError",
    "Verdict",
    "backlund_residual",
    "certify_residual_negative",
    "char_eval",
    "coprime_reciprocal_sum",
    "corollary_bound",
    "cross_check",
    "enumerate_characters",
    "gamma_glue_check",
    "harmonic_bound_check",
    "hurwitz_zeta",
    "hurwitz_zeta_em",
    "l_eval_hurwitz",
    "l_eval_partial_sum",
    "lemma_hurwitz_bound",
    "partial_sum",
    "partial_summation_residual",
    "theorem1_bound",
    "theorem2_bound",
    "theorem2_glue_check",
]
