"""Effect sizes of mean differences and their sampling variances.

Two-sample estimators:

* Glass' delta: mean difference over the control SD.
* Hedges' g and its bias-corrected form d = J(n1 + n2 - 2) g. These assume
  equal population variances.
* e_biased = t_w / sqrt(n~), built on Welch's t, and e = e_biased J(f) with
  Welch-Satterthwaite df f. These need no equal-variance assumption.

One-sample estimators against a known constant C:

* c_biased = (mean - C) / s, c = c_biased J(n - 1), and the sign-reversed c'.

Every estimator accepts either a :class:`SampleSummary` or a raw sequence of
observations. Raw input is reduced with :func:`sample_summary` first.

The variance formulas contain the unknown population effect. Point
estimators plug in the *biased* estimate (g, e_biased or c_biased).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence, Union

import numpy as np

from .errors import DegenerateInputError, DomainError
from .special import correction_j


class EffectKind(str, Enum):
    GLASS_DELTA = "glass_delta"
    HEDGES_G = "hedges_g"
    HEDGES_D = "hedges_d"
    E_BIASED = "e_biased"
    E = "e"
    C_BIASED = "c_biased"
    C = "c"
    C_PRIME = "c_prime"

    @property
    def one_sample(self) -> bool:
        return self in (EffectKind.C_BIASED, EffectKind.C, EffectKind.C_PRIME)


UNBIASED_KINDS = (EffectKind.HEDGES_D, EffectKind.E, EffectKind.C, EffectKind.C_PRIME)

VARIANCE_UNDEFINED = "variance_undefined_df_le_2"


@dataclass(frozen=True)
class SampleSummary:
    """Sufficient statistics of one normal sample.

    ``variance`` is the unbiased (n - 1 denominator) sample variance. It is
    ``None`` for a single observation.
    """

    mean: float
    variance: float | None
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"sample size must be an integer >= 1, got {self.n!r}")
        if not math.isfinite(self.mean):
            raise DomainError("mean must be finite")
        if self.variance is not None:
            if self.n < 2:
                raise DomainError("a variance needs n >= 2")
            if not math.isfinite(self.variance) or self.variance < 0:
                raise DomainError("variance must be finite and >= 0")

    @property
    def sd(self) -> float:
        if self.variance is None:
            raise DomainError("standard deviation needs n >= 2")
        return math.sqrt(self.variance)


SampleLike = Union[SampleSummary, Sequence[float], np.ndarray]


@dataclass(frozen=True)
class EffectSizeResult:
    kind: EffectKind
    estimate: float
    variance: float | None
    df: float | None
    biased: bool
    ci: tuple[float, float] | None = None
    alpha: float | None = None
    diagnostics: tuple[str, ...] = field(default_factory=tuple)

    def as_dict(self) -> dict:
        lo, hi = self.ci if self.ci is not None else (None, None)
        return {
            "kind": self.kind.value,
            "estimate": self.estimate,
            "variance": self.variance,
            "ci_lower": lo,
            "ci_upper": hi,
            "alpha": self.alpha,
            "df": self.df,
            "biased": self.biased,
        }


@dataclass(frozen=True)
class EffectParameters:
    """Population quantities for :func:`effect_from_parameters`.

    kind is one of ``delta``, ``epsilon_r``, ``gamma`` and ``delta_prime_q``.
    ``mu2`` is the second mean, or the constant C for ``gamma``. ``ratio``
    is r = n1/n2 for epsilon_r and q = (n1 - 1)/(n2 - 1) for delta_prime_q.
    """

    kind: str
    mu1: float
    mu2: float
    sigma1_sq: float
    sigma2_sq: float | None = None
    ratio: float | None = None


def sample_summary(samples) -> SampleSummary:
    """Mean and unbiased variance of a sequence of observations."""
    arr = np.asarray(samples, dtype=np.float64).ravel()
    if arr.size == 0:
        raise DomainError("cannot summarize an empty sample")
    if not np.all(np.isfinite(arr)):
        raise DomainError("samples must be finite")
    var = float(arr.var(ddof=1)) if arr.size >= 2 else None
    return SampleSummary(mean=float(arr.mean()), variance=var, n=int(arr.size))


def _summary(x: SampleLike) -> SampleSummary:
    return x if isinstance(x, SampleSummary) else sample_summary(x)


def _with_variance(x: SampleLike, label: str) -> SampleSummary:
    s = _summary(x)
    if s.variance is None:
        raise DomainError(f"{label} needs at least 2 observations")
    return s


# ---- vectorized cores: accept floats or equal-shape arrays ------------------


def n_tilde(n1, n2):
    return n1 * n2 / (n1 + n2)


def pooled_variance(v1, n1, v2, n2):
    """Pooled variance with weights (n1 - 1) and (n2 - 1)."""
    return ((n1 - 1) * v1 + (n2 - 1) * v2) / (n1 + n2 - 2)


def welch_df(v1, n1, v2, n2):
    a = v1 / n1
    b = v2 / n2
    return (a + b) ** 2 / (a * a / (n1 - 1) + b * b / (n2 - 1))


def pooled_pivot(m1, v1, n1, m2, v2, n2):
    """(g, t, df, scale) for the equal-variance family; t = g * scale."""
    nt = n_tilde(n1, n2)
    g = (m1 - m2) / np.sqrt(pooled_variance(v1, n1, v2, n2))
    scale = np.sqrt(nt)
    return g, g * scale, n1 + n2 - 2, scale


def welch_pivot(m1, v1, n1, m2, v2, n2):
    """(e_biased, t_w, f, scale) for the Welch family; e_biased = t_w / scale."""
    tw = (m1 - m2) / np.sqrt(v1 / n1 + v2 / n2)
    scale = np.sqrt(n_tilde(n1, n2))
    return tw / scale, tw, welch_df(v1, n1, v2, n2), scale


def one_sample_pivot(m1, v1, n1, constant):
    """(c_biased, t, n1 - 1, sqrt(n1 - 1)), with t = sqrt(n1 - 1) * c_biased."""
    cb = (m1 - constant) / np.sqrt(v1)
    scale = np.sqrt(n1 - 1.0)
    return cb, cb * scale, n1 - 1, scale


def nct_estimator_variance(param, df, inv_size, unbiased=True):
    """Variance of an effect size whose scaled form is noncentral t.

    ``inv_size`` is 1/n~ for the two-sample kinds and 1/(n1 - 1) for c. The
    unbiased form is df/(df-2) J^2 (inv_size + p^2) - p^2, and the biased
    form is df/(df-2) (inv_size + p^2) - p^2 / J^2. Entries with df <= 2
    come back as NaN.
    """
    param, df, inv_size = np.broadcast_arrays(
        np.asarray(param, dtype=float), np.asarray(df, dtype=float), np.asarray(inv_size, dtype=float)
    )
    out = np.full(param.shape, np.nan)
    ok = df > 2
    if np.any(ok):
        p2 = param[ok] ** 2
        j2 = np.asarray(correction_j(df[ok])) ** 2
        r = df[ok] / (df[ok] - 2)
        out[ok] = r * j2 * (inv_size[ok] + p2) - p2 if unbiased else r * (inv_size[ok] + p2) - p2 / j2
    return out if out.ndim else float(out)


def variance_d(delta, n1, n2, unbiased=True):
    return nct_estimator_variance(delta, np.asarray(n1) + n2 - 2, 1.0 / n_tilde(n1, n2), unbiased)


def variance_e(epsilon, f, n1, n2, unbiased=True):
    return nct_estimator_variance(epsilon, f, 1.0 / n_tilde(n1, n2), unbiased)


def variance_c(gamma, n1, unbiased=True):
    n1 = np.asarray(n1, dtype=float)
    return nct_estimator_variance(gamma, n1 - 1, 1.0 / (n1 - 1), unbiased)


# ---- scalar estimators -------------------------------------------------------


def _variance_or_absent(param, df, inv_size, unbiased):
    if df <= 2:
        return None, (VARIANCE_UNDEFINED,)
    v = nct_estimator_variance(param, df, inv_size, unbiased)
    return float(v), ()


def glass_delta(experimental: SampleLike, control: SampleLike) -> EffectSizeResult:
    e = _summary(experimental)
    c = _with_variance(control, "control group")
    if c.variance == 0:
        raise DegenerateInputError("control group has zero variance")
    return EffectSizeResult(
        kind=EffectKind.GLASS_DELTA,
        estimate=(e.mean - c.mean) / math.sqrt(c.variance),
        variance=None,
        df=c.n - 1,
        biased=True,
    )


def _pooled(a, b):
    sa = _with_variance(a, "group a")
    sb = _with_variance(b, "group b")
    if pooled_variance(sa.variance, sa.n, sb.variance, sb.n) <= 0:
        raise DegenerateInputError("both groups have zero variance")
    return sa, sb


def hedges_g(a: SampleLike, b: SampleLike) -> EffectSizeResult:
    sa, sb = _pooled(a, b)
    g, _, df, _ = pooled_pivot(sa.mean, sa.variance, sa.n, sb.mean, sb.variance, sb.n)
    var, diag = _variance_or_absent(g, df, 1 / n_tilde(sa.n, sb.n), unbiased=False)
    return EffectSizeResult(EffectKind.HEDGES_G, float(g), var, df, True, diagnostics=diag)


def hedges_d(a: SampleLike, b: SampleLike) -> EffectSizeResult:
    """Hedges' unbiased d = J(n1 + n2 - 2) g.

    >>> r = hedges_d([0, 1, 2, 3, 4], [0, 0, 1, 2, 2])
    >>> round(r.estimate, 12), round(r.variance, 12)
    (0.682379579593, 0.484026380702)
    """
    sa, sb = _pooled(a, b)
    g, _, df, _ = pooled_pivot(sa.mean, sa.variance, sa.n, sb.mean, sb.variance, sb.n)
    var, diag = _variance_or_absent(g, df, 1 / n_tilde(sa.n, sb.n), unbiased=True)
    return EffectSizeResult(EffectKind.HEDGES_D, float(g * correction_j(df)), var, df, False, diagnostics=diag)


def _welch_inputs(a, b):
    sa = _with_variance(a, "group a")
    sb = _with_variance(b, "group b")
    if sa.variance / sa.n + sb.variance / sb.n <= 0:
        raise DegenerateInputError("both groups have zero variance")
    return sa, sb


def welch_t(a: SampleLike, b: SampleLike) -> float:
    sa, sb = _welch_inputs(a, b)
    return float((sa.mean - sb.mean) / math.sqrt(sa.variance / sa.n + sb.variance / sb.n))


def welch_satterthwaite_f(a: SampleLike, b: SampleLike) -> float:
    sa, sb = _welch_inputs(a, b)
    return float(welch_df(sa.variance, sa.n, sb.variance, sb.n))


def effect_e(a: SampleLike, b: SampleLike, unbiased: bool = True) -> EffectSizeResult:
    """Welch-based effect size e (or e_biased when ``unbiased`` is False)."""
    sa, sb = _welch_inputs(a, b)
    eb, _, f, _ = welch_pivot(sa.mean, sa.variance, sa.n, sb.mean, sb.variance, sb.n)
    f = float(f)
    if unbiased and f <= 1:
        raise DomainError(f"unbiased e needs Welch df > 1, got {f}")
    var, diag = _variance_or_absent(eb, f, 1 / n_tilde(sa.n, sb.n), unbiased)
    est = eb * correction_j(f) if unbiased else eb
    kind = EffectKind.E if unbiased else EffectKind.E_BIASED
    return EffectSizeResult(kind, float(est), var, f, not unbiased, diagnostics=diag)


def effect_c(a: SampleLike, constant: float, unbiased: bool = True, reverse: bool = False) -> EffectSizeResult:
    """Effect size between a sample mean and a known constant.

    ``reverse`` gives c' = (C - mean) J(n - 1) / s, i.e. the negation of c.
    The reported kind is C_PRIME for the reversed statistic whether or not
    it is bias-corrected, and ``biased`` tells the two apart.
    """
    s = _with_variance(a, "sample")
    if s.variance == 0:
        raise DegenerateInputError("sample has zero variance")
    if not math.isfinite(constant):
        raise DomainError("constant must be finite")
    df = s.n - 1
    if unbiased and df <= 1:
        raise DomainError("unbiased c needs n >= 3")
    cb, _, _, _ = one_sample_pivot(s.mean, s.variance, s.n, constant)
    if reverse:
        cb = -cb
    var, diag = _variance_or_absent(cb, df, 1 / df, unbiased)
    est = cb * correction_j(df) if unbiased else cb
    if reverse:
        kind = EffectKind.C_PRIME
    else:
        kind = EffectKind.C if unbiased else EffectKind.C_BIASED
    return EffectSizeResult(kind, float(est), var, df, not unbiased, diagnostics=diag)


def estimate(kind: EffectKind, a: SampleLike, other) -> EffectSizeResult:
    """Dispatch on ``kind``. ``other`` is the second sample, or the constant for c kinds."""
    kind = EffectKind(kind)
    if kind is EffectKind.GLASS_DELTA:
        return glass_delta(a, other)
    if kind is EffectKind.HEDGES_G:
        return hedges_g(a, other)
    if kind is EffectKind.HEDGES_D:
        return hedges_d(a, other)
    if kind in (EffectKind.E, EffectKind.E_BIASED):
        return effect_e(a, other, unbiased=kind is EffectKind.E)
    if kind is EffectKind.C_PRIME:
        return effect_c(a, other, unbiased=True, reverse=True)
    return effect_c(a, other, unbiased=kind is EffectKind.C)


def effect_from_parameters(params: EffectParameters) -> float:
    """Exact population effect size: delta, epsilon_r, gamma or delta'_q."""
    p = params
    if not p.sigma1_sq > 0 or (p.sigma2_sq is not None and not p.sigma2_sq > 0):
        raise DomainError("population variances must be > 0")
    diff = p.mu1 - p.mu2
    if p.kind == "delta":
        if p.ratio is not None:
            raise DomainError("delta takes no ratio")
        if p.sigma2_sq is not None and p.sigma2_sq != p.sigma1_sq:
            raise DomainError("delta assumes a common variance")
        return diff / math.sqrt(p.sigma1_sq)
    if p.kind == "gamma":
        if p.ratio is not None or p.sigma2_sq is not None:
            raise DomainError("gamma takes one variance and no ratio")
        return diff / math.sqrt(p.sigma1_sq)
    if p.kind in ("epsilon_r", "delta_prime_q"):
        if p.sigma2_sq is None or p.ratio is None or not p.ratio > 0:
            raise DomainError(f"{p.kind} needs sigma2_sq and a ratio > 0")
        r = p.ratio
        if p.kind == "epsilon_r":
            return diff / math.sqrt((p.sigma1_sq + r * p.sigma2_sq) / (r + 1))
        return diff / math.sqrt((r * p.sigma1_sq + p.sigma2_sq) / (1 + r))
    raise DomainError(f"unknown parameter kind {p.kind!r}")
