"""Noncentral-t confidence intervals for effect sizes.

The observed t statistic of each estimator is a noncentral t variate whose
noncentrality is the population effect times a known scale. The confidence
limits for that noncentrality solve

    nct_cdf(t; df, ncp_L) = 1 - alpha/2,    nct_cdf(t; df, ncp_H) = alpha/2,

and dividing by the scale gives the interval for the biased effect size.
Multiplying both ends by J(df) gives the interval for the bias-corrected
estimator.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from ._backend import as_1d, kernels
from .effect_sizes import (
    EffectKind,
    EffectSizeResult,
    SampleLike,
    _pooled,
    _welch_inputs,
    _with_variance,
    estimate,
    one_sample_pivot,
    pooled_pivot,
    welch_pivot,
)
from .errors import DomainError, SearchFailure
from .special import correction_j

DEFAULT_HALFWIDTH = 2.0


@dataclass(frozen=True)
class CiRequest:
    """Two-sided alpha and search settings.

    ``bracket_halfwidth`` of None starts at +-2 around t and lets the
    bracket double outward as needed.
    """

    alpha: float = 0.05
    ncp_tolerance: float = 1e-6
    bracket_halfwidth: float | None = None

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.ncp_tolerance > 0:
            raise DomainError("ncp_tolerance must be > 0")
        if self.bracket_halfwidth is not None and not self.bracket_halfwidth > 0:
            raise DomainError("bracket_halfwidth must be > 0")

    @property
    def halfwidth(self) -> float:
        return DEFAULT_HALFWIDTH if self.bracket_halfwidth is None else float(self.bracket_halfwidth)


def ncp_bounds_array(t, df, alpha, tol=1e-6, halfwidth=DEFAULT_HALFWIDTH):
    """Vectorized (ncp_L, ncp_H). Failed searches come back as NaN."""
    (ts, dfs, alphas), shape = as_1d(t, df, alpha)
    levels = np.concatenate([1.0 - alphas / 2.0, alphas / 2.0])
    roots = kernels.ncp_search_array(np.tile(ts, 2), np.tile(dfs, 2), levels, float(tol), float(halfwidth))
    n = ts.size
    return roots[:n].reshape(shape), roots[n:].reshape(shape)


def ncp_bounds(t: float, df: float, req: CiRequest = CiRequest()) -> tuple[float, float]:
    """Noncentrality limits (ncp_L, ncp_H), with ncp_L <= ncp_H.

    Raises SearchFailure if either root lies beyond |ncp| = 1e4.
    """
    if not math.isfinite(t):
        raise DomainError("t must be finite")
    if not (math.isfinite(df) and df > 0):
        raise DomainError("df must be finite and > 0")
    lo, hi = ncp_bounds_array(t, df, req.alpha, req.ncp_tolerance, req.halfwidth)
    lo, hi = float(lo), float(hi)
    if math.isnan(lo) or math.isnan(hi):
        raise SearchFailure(f"ncp search left the bracket cap for t={t}, df={df}")
    return lo, hi


def interval_from_pivot(t, df, scale, alpha, unbiased, reverse=False, tol=1e-6, halfwidth=DEFAULT_HALFWIDTH):
    """Vectorized CI endpoints from (t, df, scale). Used by the Monte Carlo harness."""
    lo, hi = ncp_bounds_array(t, df, alpha, tol, halfwidth)
    lo = lo / scale
    hi = hi / scale
    if unbiased:
        j = correction_j(np.asarray(df, dtype=float))
        lo = lo * j
        hi = hi * j
    if reverse:
        lo, hi = -hi, -lo
    return lo, hi


def _pivot(kind: EffectKind, a: SampleLike, other):
    if kind in (EffectKind.HEDGES_G, EffectKind.HEDGES_D):
        sa, sb = _pooled(a, other)
        _, t, df, scale = pooled_pivot(sa.mean, sa.variance, sa.n, sb.mean, sb.variance, sb.n)
    elif kind in (EffectKind.E, EffectKind.E_BIASED):
        sa, sb = _welch_inputs(a, other)
        _, t, df, scale = welch_pivot(sa.mean, sa.variance, sa.n, sb.mean, sb.variance, sb.n)
    elif kind.one_sample:
        s = _with_variance(a, "sample")
        _, t, df, scale = one_sample_pivot(s.mean, s.variance, s.n, other)
    else:
        raise DomainError(f"no confidence interval is defined for {kind.value}")
    return float(t), float(df), float(scale)


def ci_for_effect(result: EffectSizeResult, a: SampleLike, other, req: CiRequest = CiRequest()) -> tuple[float, float]:
    """Confidence interval matching ``result``'s kind and bias flag.

    ``other`` is the second sample, or the constant C for c-type kinds. For
    c' the c interval is negated and its endpoints swapped.
    """
    t, df, scale = _pivot(result.kind, a, other)
    lo, hi = ncp_bounds(t, df, req)
    lo, hi = lo / scale, hi / scale
    if not result.biased:
        j = correction_j(df)
        lo, hi = lo * j, hi * j
    if result.kind is EffectKind.C_PRIME:
        lo, hi = -hi, -lo
    return lo, hi


def with_ci(result: EffectSizeResult, a: SampleLike, other, req: CiRequest = CiRequest()) -> EffectSizeResult:
    return dataclasses.replace(result, ci=ci_for_effect(result, a, other, req), alpha=req.alpha)


def effect_size(kind, a: SampleLike, other, alpha: float = 0.05, ci: bool = True) -> EffectSizeResult:
    """Estimate plus (by default) its confidence interval in one call.

    >>> r = effect_size("c_biased", [0, 0, 1, 2, 2], 2.0, alpha=0.01)
    >>> round(r.estimate, 7), round(r.variance, 7)
    (-1.0, 0.9292037)
    """
    kind = EffectKind(kind)
    result = estimate(kind, a, other)
    if not ci or kind is EffectKind.GLASS_DELTA:
        return result
    return with_ci(result, a, other, CiRequest(alpha=alpha))
