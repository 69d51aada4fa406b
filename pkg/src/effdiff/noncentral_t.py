"""Noncentral and central Student t distribution functions.

Degrees of freedom may be any positive real; Welch-Satterthwaite df are
never rounded.
"""

from __future__ import annotations

import numpy as np

from ._backend import as_1d, kernels
from .errors import DomainError
from .special import _unwrap


def _check(t, df, ncp=None):
    if not np.all(np.isfinite(t)):
        raise DomainError("t must be finite")
    if not np.all(np.isfinite(df)) or np.any(df <= 0.0):
        raise DomainError("degrees of freedom must be finite and > 0")
    if ncp is not None and not np.all(np.isfinite(ncp)):
        raise DomainError("noncentrality parameter must be finite")


def nct_cdf(t, df, ncp):
    """P(T <= t) for T ~ noncentral t(df, ncp).

    Uses the Poisson-mixture series of incomplete beta terms, summed outward
    from the Poisson mode. Absolute error is below 1e-8 for df in [1, 1000],
    |ncp| <= 40 and |t| <= 60, and is typically nearer 1e-13.
    """
    (ts, dfs, ncps), shape = as_1d(t, df, ncp)
    _check(ts, dfs, ncps)
    return _unwrap(kernels.nct_cdf_array(ts, dfs, ncps), shape)


def central_t_cdf(t, df):
    """Student t CDF through I_{df/(df+t^2)}(df/2, 1/2)."""
    (ts, dfs), shape = as_1d(t, df)
    _check(ts, dfs)
    return _unwrap(kernels.central_t_cdf_array(ts, dfs), shape)
