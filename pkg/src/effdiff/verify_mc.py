"""Monte Carlo checks of unbiasedness, variance formulas, consistency and CI coverage.

Replications are simulated in fixed-size blocks. Each block draws from its
own Philox stream, spawned from ``SeedSequence(seed)``. Results therefore
depend only on (spec, seed), not on evaluation order, so blocks could run in
any order or in parallel. Per-block moments are reduced with numpy's
pairwise summation.

Every pass/fail decision is measured in Monte Carlo standard errors
estimated from the replications themselves. Some checks also allow a
stated modelling slack. The Welch-based e is unbiased only under the
chi-square(f) approximation, so its bias check allows
``max(4 SE, e_bias_floor)``.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .confidence import interval_from_pivot
from .effect_sizes import (
    EffectKind,
    EffectParameters,
    effect_from_parameters,
    n_tilde,
    nct_estimator_variance,
    one_sample_pivot,
    pooled_pivot,
    welch_pivot,
)
from .errors import DomainError
from .special import correction_j

BLOCK = 8192
SUPPORTED = (
    EffectKind.HEDGES_G,
    EffectKind.HEDGES_D,
    EffectKind.E_BIASED,
    EffectKind.E,
    EffectKind.C_BIASED,
    EffectKind.C,
    EffectKind.C_PRIME,
)
_UNBIASED = (EffectKind.HEDGES_D, EffectKind.E, EffectKind.C, EffectKind.C_PRIME)


@dataclass(frozen=True)
class PopulationSpec:
    """Normal populations N(mu1, sigma1_sq) and N(mu2, sigma2_sq).

    For one-sample kinds ``mu2`` is the constant C, and ``sigma2_sq`` and
    ``n2`` are ignored.
    """

    mu1: float
    mu2: float
    sigma1_sq: float
    sigma2_sq: float
    n1: int
    n2: int
    replications: int = 10_000
    seed: int = 20200101

    def __post_init__(self):
        if self.replications < 1:
            raise DomainError("replications must be >= 1")
        if not (self.sigma1_sq > 0 and self.sigma2_sq > 0):
            raise DomainError("population variances must be > 0")
        if self.n1 < 2 or self.n2 < 2:
            raise DomainError("group sizes must be >= 2")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class McReport:
    check: str
    kind: str
    n1: int
    n2: int
    replications: int
    valid_replications: int
    target_parameter: float
    mean_estimate: float
    estimate_sd: float
    empirical_variance: float
    mse: float
    formula_variance_mean: float | None = None
    ci_coverage: float | None = None
    standard_errors: dict = field(default_factory=dict)
    tolerance: float | None = None
    passed: bool | None = None
    diagnostics: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def target_parameter(spec: PopulationSpec, kind: EffectKind) -> float:
    """Population value the estimator of ``kind`` aims at under ``spec``."""
    kind = EffectKind(kind)
    if kind.one_sample:
        gamma = effect_from_parameters(EffectParameters("gamma", spec.mu1, spec.mu2, spec.sigma1_sq))
        return -gamma if kind is EffectKind.C_PRIME else gamma
    if kind in (EffectKind.E, EffectKind.E_BIASED):
        return effect_from_parameters(
            EffectParameters("epsilon_r", spec.mu1, spec.mu2, spec.sigma1_sq, spec.sigma2_sq, spec.n1 / spec.n2)
        )
    if spec.sigma1_sq == spec.sigma2_sq:
        return effect_from_parameters(EffectParameters("delta", spec.mu1, spec.mu2, spec.sigma1_sq))
    q = (spec.n1 - 1) / (spec.n2 - 1)
    return effect_from_parameters(
        EffectParameters("delta_prime_q", spec.mu1, spec.mu2, spec.sigma1_sq, spec.sigma2_sq, q)
    )


def _block_sizes(total: int) -> list[int]:
    full, rest = divmod(total, BLOCK)
    return [BLOCK] * full + ([rest] if rest else [])


def simulate_moments(spec: PopulationSpec, two_sample: bool = True):
    """Per-replication (mean1, var1, mean2, var2); group 2 entries are None for one sample."""
    sizes = _block_sizes(spec.replications)
    children = np.random.SeedSequence(spec.seed).spawn(len(sizes))
    s1 = math.sqrt(spec.sigma1_sq)
    s2 = math.sqrt(spec.sigma2_sq)
    m1, v1, m2, v2 = [], [], [], []
    for size, child in zip(sizes, children):
        rng = np.random.Generator(np.random.Philox(child))
        y1 = rng.normal(spec.mu1, s1, size=(size, spec.n1))
        m1.append(y1.mean(axis=1))
        v1.append(y1.var(axis=1, ddof=1))
        if two_sample:
            y2 = rng.normal(spec.mu2, s2, size=(size, spec.n2))
            m2.append(y2.mean(axis=1))
            v2.append(y2.var(axis=1, ddof=1))
    cat = np.concatenate
    if two_sample:
        return cat(m1), cat(v1), cat(m2), cat(v2)
    return cat(m1), cat(v1), None, None


def simulate_estimates(spec: PopulationSpec, kind: EffectKind):
    """Estimates and their pivots (t, df, scale) for every replication."""
    kind = EffectKind(kind)
    if kind not in SUPPORTED:
        raise DomainError(f"Monte Carlo checks do not cover {kind.value}")
    if kind.one_sample:
        if spec.n1 < 3 and kind in _UNBIASED:
            raise DomainError("unbiased c needs n1 >= 3")
        m1, v1, _, _ = simulate_moments(spec, two_sample=False)
        est, t, df, scale = one_sample_pivot(m1, v1, spec.n1, spec.mu2)
        df = np.full(est.shape, float(df))
        if kind is EffectKind.C_PRIME:
            est = -est
    else:
        m1, v1, m2, v2 = simulate_moments(spec)
        if kind in (EffectKind.HEDGES_G, EffectKind.HEDGES_D):
            est, t, df, scale = pooled_pivot(m1, v1, spec.n1, m2, v2, spec.n2)
            df = np.full(est.shape, float(df))
        else:
            est, t, df, scale = welch_pivot(m1, v1, spec.n1, m2, v2, spec.n2)
    scale = np.broadcast_to(scale, est.shape)
    valid = np.isfinite(est) & (df > 1)
    if kind in _UNBIASED:
        j = np.ones_like(est)
        j[valid] = correction_j(df[valid])
        est = est * j
    return est, t, df, scale, valid


def _summary_stats(x: np.ndarray):
    n = x.size
    mean = float(np.mean(x))
    var = float(np.var(x, ddof=1)) if n > 1 else 0.0
    centred = x - mean
    m4 = float(np.mean(centred**4))
    se_mean = math.sqrt(var / n)
    se_var = math.sqrt(max(m4 - var * var, 0.0) / n)
    return mean, var, se_mean, se_var


def _base_report(check, spec, kind, est, valid, target, **extra) -> McReport:
    x = est[valid]
    mean, var, se_mean, se_var = _summary_stats(x)
    sq = (x - target) ** 2
    mse = float(np.mean(sq))
    se_mse = float(np.std(sq, ddof=1) / math.sqrt(x.size)) if x.size > 1 else 0.0
    ses = {"mean": se_mean, "variance": se_var, "mse": se_mse}
    ses.update(extra.pop("standard_errors", {}))
    return McReport(
        check=check,
        kind=EffectKind(kind).value,
        n1=spec.n1,
        n2=spec.n2,
        replications=spec.replications,
        valid_replications=int(x.size),
        target_parameter=float(target),
        mean_estimate=mean,
        estimate_sd=math.sqrt(var),
        empirical_variance=var,
        mse=mse,
        standard_errors=ses,
        **extra,
    )


def run_bias_check(
    spec: PopulationSpec, kind: EffectKind = EffectKind.C, n_se: float = 4.0, e_bias_floor: float = 0.03
) -> McReport:
    """Mean of the estimator against its target parameter.

    Passes when |mean - target| <= n_se * SE. For e the bound is
    max(n_se * SE, e_bias_floor).
    """
    kind = EffectKind(kind)
    if kind not in _UNBIASED:
        raise DomainError("bias checks apply to the bias-corrected kinds d, e, c, c'")
    if kind is EffectKind.HEDGES_D and spec.sigma1_sq != spec.sigma2_sq:
        raise DomainError("d is unbiased only for equal population variances")
    est, _, _, _, valid = simulate_estimates(spec, kind)
    target = target_parameter(spec, kind)
    rep = _base_report("bias", spec, kind, est, valid, target)
    tol = n_se * rep.standard_errors["mean"]
    if kind is EffectKind.E:
        tol = max(tol, e_bias_floor)
    return dataclasses.replace(rep, tolerance=tol, passed=abs(rep.mean_estimate - target) <= tol)


def formula_variance(spec: PopulationSpec, kind: EffectKind, df=None):
    """Closed-form variance at the true parameter (per-replication array for Welch kinds)."""
    kind = EffectKind(kind)
    target = target_parameter(spec, kind)
    unbiased = kind in _UNBIASED
    if kind.one_sample:
        return nct_estimator_variance(target, spec.n1 - 1, 1.0 / (spec.n1 - 1), unbiased)
    inv = 1.0 / n_tilde(spec.n1, spec.n2)
    if kind in (EffectKind.HEDGES_G, EffectKind.HEDGES_D):
        return nct_estimator_variance(target, spec.n1 + spec.n2 - 2, inv, unbiased)
    return nct_estimator_variance(target, df, inv, unbiased)


def run_variance_check(
    spec: PopulationSpec, kind: EffectKind = EffectKind.C, rel_tol: float = 0.05, n_se: float = 4.0
) -> McReport:
    """Empirical variance against the formula evaluated at the true parameter.

    For e the formula depends on the random Welch df, so it is averaged over
    the replications with f > 2. Passes when the gap is within
    max(rel_tol * formula, n_se * SE).
    """
    kind = EffectKind(kind)
    est, _, df, _, valid = simulate_estimates(spec, kind)
    target = target_parameter(spec, kind)
    usable = valid & (df > 2)
    if not np.any(usable):
        rep = _base_report("variance", spec, kind, est, valid, target)
        return dataclasses.replace(rep, diagnostics=("df_le_2_in_every_replication",))
    fv = formula_variance(spec, kind, df[usable])
    fmean = float(np.mean(fv))
    rep = _base_report("variance", spec, kind, est, usable, target, formula_variance_mean=fmean)
    tol = max(rel_tol * fmean, n_se * rep.standard_errors["variance"])
    diag = () if usable.all() else ("replications_with_df_le_2_dropped",)
    return dataclasses.replace(
        rep, tolerance=tol, passed=abs(rep.empirical_variance - fmean) <= tol, diagnostics=diag
    )


def run_consistency_check(
    spec: PopulationSpec,
    kind: EffectKind = EffectKind.C,
    n_schedule: Sequence[int] = (5, 20, 80, 320),
    threshold: float | None = None,
) -> list[McReport]:
    """Mean squared error along a schedule of increasing group-1 sizes.

    n2 follows n1 at the fixed ratio spec.n1 / spec.n2. Each report's
    ``passed`` records whether its MSE is below the previous one. The last
    report must also be below ``threshold`` when one is given.
    """
    sizes = list(n_schedule)
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise DomainError("n_schedule must be strictly increasing")
    ratio = spec.n1 / spec.n2
    reports = []
    prev = math.inf
    for i, n1 in enumerate(sizes):
        n2 = max(2, int(round(n1 / ratio)))
        sub = dataclasses.replace(spec, n1=int(n1), n2=n2, seed=(spec.seed + i) % 2**64)
        est, _, _, _, valid = simulate_estimates(sub, kind)
        rep = _base_report("consistency", sub, kind, est, valid, target_parameter(sub, kind))
        ok = rep.mse < prev
        if i == len(sizes) - 1 and threshold is not None:
            ok = ok and rep.mse < threshold
        reports.append(dataclasses.replace(rep, tolerance=threshold, passed=ok))
        prev = rep.mse
    return reports


def consistency_passes(reports: Sequence[McReport], threshold: float | None = None) -> bool:
    mses = [r.mse for r in reports]
    decreasing = all(b < a for a, b in zip(mses, mses[1:]))
    return decreasing and (threshold is None or mses[-1] < threshold)


def run_coverage_check(
    spec: PopulationSpec,
    kind: EffectKind = EffectKind.C,
    alpha: float = 0.05,
    n_se: float = 4.0,
    band: float = 0.01,
    tol: float = 1e-6,
) -> McReport:
    """Fraction of replications whose CI contains the target parameter.

    Passes when |coverage - (1 - alpha)| <= max(n_se * binomial SE, band).
    The band absorbs the known slight miscalibration of approximate pivots
    (Welch df for e, and the sqrt(n1 - 1) scaling for c).
    """
    kind = EffectKind(kind)
    est, t, df, scale, valid = simulate_estimates(spec, kind)
    target = target_parameter(spec, kind)
    reverse = kind is EffectKind.C_PRIME
    lo, hi = interval_from_pivot(
        t[valid], df[valid], scale[valid], alpha, unbiased=kind in _UNBIASED, reverse=reverse, tol=tol
    )
    ok = np.isfinite(lo) & np.isfinite(hi)
    covered = (lo[ok] <= target) & (target <= hi[ok])
    cov = float(np.mean(covered))
    nominal = 1.0 - alpha
    se = math.sqrt(nominal * alpha / covered.size)
    rep = _base_report(
        "coverage", spec, kind, est, valid, target, ci_coverage=cov, standard_errors={"coverage": se}
    )
    bound = max(n_se * se, band)
    diag = () if ok.all() else ("ci_search_failures_dropped",)
    return dataclasses.replace(rep, tolerance=bound, passed=abs(cov - nominal) <= bound, diagnostics=diag)
