"""Standardized mean-difference effect sizes with exact noncentral-t intervals."""

from ._backend import NAME as BACKEND
from .confidence import CiRequest, ci_for_effect, effect_size, ncp_bounds, with_ci
from .effect_sizes import (
    EffectKind,
    EffectParameters,
    EffectSizeResult,
    SampleSummary,
    effect_c,
    effect_e,
    effect_from_parameters,
    estimate,
    glass_delta,
    hedges_d,
    hedges_g,
    sample_summary,
    welch_satterthwaite_f,
    welch_t,
)
from .errors import DegenerateInputError, DomainError, EffDiffError, SearchFailure
from .noncentral_t import central_t_cdf, nct_cdf
from .special import correction_j, log_correction_j, log_gamma, regularized_beta

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CiRequest",
    "DegenerateInputError",
    "DomainError",
    "EffDiffError",
    "EffectKind",
    "EffectParameters",
    "EffectSizeResult",
    "SampleSummary",
    "SearchFailure",
    "central_t_cdf",
    "ci_for_effect",
    "correction_j",
    "effect_c",
    "effect_e",
    "effect_from_parameters",
    "effect_size",
    "estimate",
    "glass_delta",
    "hedges_d",
    "hedges_g",
    "log_correction_j",
    "log_gamma",
    "nct_cdf",
    "ncp_bounds",
    "regularized_beta",
    "sample_summary",
    "welch_satterthwaite_f",
    "welch_t",
    "with_ci",
]
