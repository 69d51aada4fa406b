"""Log-gamma and the small-sample correction coefficient J.

J(m) = Gamma(m/2) / (sqrt(m/2) Gamma((m-1)/2)) is evaluated in log space,
so it is exact (to rounding) for every finite df > 1. There is no switch to
an approximation at large df.
"""

from __future__ import annotations

import numpy as np

from ._backend import as_1d, kernels
from .errors import DomainError


def _unwrap(values, shape):
    return float(values[0]) if shape == () else values.reshape(shape)


def log_gamma(x):
    """ln Gamma(x) for x > 0 (scalar or array)."""
    (xs,), shape = as_1d(x)
    if not np.all(np.isfinite(xs)) or np.any(xs <= 0.0):
        raise DomainError("log_gamma requires finite x > 0")
    return _unwrap(kernels.lgamma_array(xs), shape)


def log_correction_j(m):
    (ms,), shape = as_1d(m)
    if not np.all(np.isfinite(ms)) or np.any(ms <= 1.0):
        raise DomainError("J(m) requires finite m > 1")
    return _unwrap(kernels.log_correction_j_array(ms), shape)


def correction_j(m):
    """Bias-correction coefficient J(m), 0 < J < 1, for finite m > 1.

    >>> round(correction_j(4), 12)
    0.797884560803
    """
    return np.exp(log_correction_j(m)) if np.ndim(m) else float(np.exp(log_correction_j(m)))


def correction_j_approx(m):
    """Hedges' classical approximation 1 - 3/(4m - 1)."""
    return 1.0 - 3.0 / (4.0 * np.asarray(m, dtype=float) - 1.0)


def regularized_beta(a, b, x):
    """Regularized incomplete beta I_x(a, b) for a, b > 0 and 0 <= x <= 1."""
    (aa, bb, xs), shape = as_1d(a, b, x)
    if np.any(aa <= 0.0) or np.any(bb <= 0.0) or np.any((xs < 0.0) | (xs > 1.0)):
        raise DomainError("regularized_beta requires a, b > 0 and 0 <= x <= 1")
    return _unwrap(kernels.betainc_array(aa, bb, xs), shape)
