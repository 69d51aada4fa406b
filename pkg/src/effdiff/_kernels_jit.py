"""Scalar numba kernels: log-gamma, J, incomplete beta, noncentral t CDF, ncp search.

Every function here is written in the numba nopython subset. The array
entry points at the bottom loop over 1-d float64 inputs of equal length.
The vectorized twin lives in ``_kernels_np``; both must agree to rounding.
"""

import math

import numpy as np
from numba import njit

from ._constants import (
    BETA_EPS as _BETA_EPS,
    BETA_FPMIN as _BETA_FPMIN,
    BETA_MAXIT as _BETA_MAXIT,
    HALF_LOG_2PI as _HALF_LOG_2PI,
    J_SERIES_MIN_DF as _J_SERIES_MIN_DF,
    LANCZOS as _LANCZOS,
    LANCZOS_G as _LANCZOS_G,
    NCP_CAP,
    NCT_MAXTERMS as _NCT_MAXTERMS,
    NCT_TAIL as _NCT_TAIL,
    SQRT2 as _SQRT2,
)


@njit(cache=True)
def lgamma(x):
    if x == 1.0 or x == 2.0:
        return 0.0
    if x < 0.5:
        return lgamma(x + 1.0) - math.log(x)
    z = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, 9):
        acc += _LANCZOS[i] / (z + i)
    tt = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(tt) - tt + math.log(acc)


@njit(cache=True)
def log_correction_j(m):
    if m < _J_SERIES_MIN_DF:
        return lgamma(0.5 * m) - lgamma(0.5 * (m - 1.0)) - 0.5 * math.log(0.5 * m)
    # Gamma(z + 1/2) / Gamma(z) asymptotic series; truncation error < 1e-16 here
    z = 0.5 * (m - 1.0)
    iz = 1.0 / z
    s = iz * (-1.0 / 8.0 + iz * (1.0 / 128.0 + iz * (5.0 / 1024.0 - iz * 21.0 / 32768.0)))
    return 0.5 * math.log1p(-1.0 / m) + math.log1p(s)


@njit(cache=True)
def _betacf(a, b, x):
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _BETA_FPMIN:
        d = _BETA_FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _BETA_MAXIT + 1):
        m2 = 2.0 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _BETA_FPMIN:
            d = _BETA_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _BETA_FPMIN:
            c = _BETA_FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _BETA_FPMIN:
            d = _BETA_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _BETA_FPMIN:
            c = _BETA_FPMIN
        d = 1.0 / d
        de = d * c
        h *= de
        if abs(de - 1.0) < _BETA_EPS:
            break
    return h


@njit(cache=True)
def betainc(a, b, x, y):
    """Regularized I_x(a, b); ``y`` is 1 - x supplied separately for precision."""
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    if x < (a + 1.0) / (a + b + 2.0):
        lf = lgamma(a + b) - lgamma(a) - lgamma(b) + a * math.log(x) + b * math.log(y)
        return math.exp(lf) * _betacf(a, b, x) / a
    lf = lgamma(a + b) - lgamma(a) - lgamma(b) + a * math.log(x) + b * math.log(y)
    return 1.0 - math.exp(lf) * _betacf(b, a, y) / b


@njit(cache=True)
def central_t_cdf(t, df):
    tt = t * t
    x = df / (df + tt)
    y = tt / (df + tt)
    tail = 0.5 * betainc(0.5 * df, 0.5, x, y)
    if t > 0.0:
        return 1.0 - tail
    return tail


@njit(cache=True)
def _nct_cdf_nonneg(t, df, delta):
    # Phi(-delta) + 1/2 sum_j [P_j I_x(j+1/2, df/2) + Q_j I_x(j+1, df/2)],
    # summed outward from the Poisson mode so large |delta| does not underflow.
    phi = 0.5 * math.erfc(delta / _SQRT2)
    if t == 0.0:
        return phi
    tt = t * t
    x = tt / (tt + df)
    y = df / (tt + df)
    if y <= 0.0:
        return 1.0
    if x <= 0.0:
        return phi
    b = 0.5 * df
    lam = 0.5 * delta * delta
    k = math.floor(lam)
    lw = -lam + k * math.log(lam) if lam > 0.0 else 0.0
    p0 = math.exp(lw - lgamma(k + 1.0))
    q0 = delta / _SQRT2 * math.exp(lw - lgamma(k + 1.5))
    ap = k + 0.5
    aq = k + 1.0
    lx = math.log(x)
    ly = math.log(y)
    lgb = lgamma(b)
    ip0 = betainc(ap, b, x, y)
    iq0 = betainc(aq, b, x, y)
    tp0 = math.exp(ap * lx + b * ly + lgamma(ap + b) - lgamma(ap + 1.0) - lgb)
    tq0 = math.exp(aq * lx + b * ly + lgamma(aq + b) - lgamma(aq + 1.0) - lgb)
    total = p0 * ip0 + q0 * iq0

    p, q, ip, iq, tp, tq, a1, a2, j = p0, q0, ip0, iq0, tp0, tq0, ap, aq, k
    for _ in range(_NCT_MAXTERMS):
        ip -= tp
        iq -= tq
        tp *= x * (a1 + b) / (a1 + 1.0)
        tq *= x * (a2 + b) / (a2 + 1.0)
        a1 += 1.0
        a2 += 1.0
        j += 1.0
        p *= lam / j
        q *= lam / (j + 0.5)
        total += p * ip + q * iq
        if (p + abs(q)) * max(ip, iq, 0.0) < _NCT_TAIL or p + abs(q) < _NCT_TAIL:
            break

    p, q, ip, iq, tp, tq, a1, a2, j = p0, q0, ip0, iq0, tp0, tq0, ap, aq, k
    while j > 0.0:
        tp = tp * a1 / (a1 + b - 1.0) / x
        tq = tq * a2 / (a2 + b - 1.0) / x
        a1 -= 1.0
        a2 -= 1.0
        ip += tp
        iq += tq
        p *= j / lam
        q *= (j + 0.5) / lam
        j -= 1.0
        total += p * ip + q * iq
        if p + abs(q) < _NCT_TAIL:
            break

    out = phi + 0.5 * total
    return min(max(out, 0.0), 1.0)


@njit(cache=True)
def nct_cdf(t, df, ncp):
    if t >= 0.0:
        return _nct_cdf_nonneg(t, df, ncp)
    return min(max(1.0 - _nct_cdf_nonneg(-t, df, -ncp), 0.0), 1.0)


@njit(cache=True)
def ncp_search(t, df, level, tol, half):
    """ncp with nct_cdf(t; df, ncp) == level, or NaN once the bracket leaves +-NCP_CAP.

    Starts from [t - half, t + half] and doubles the step outward until the
    level is bracketed; the CDF is strictly decreasing in ncp.
    """
    step = half
    lo = t - step
    hi = t + step
    while nct_cdf(t, df, lo) < level:
        hi = lo
        step *= 2.0
        lo -= step
        if lo < -NCP_CAP:
            return np.nan
    step = half
    while nct_cdf(t, df, hi) > level:
        lo = hi
        step *= 2.0
        hi += step
        if hi > NCP_CAP:
            return np.nan
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if nct_cdf(t, df, mid) > level:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@njit(cache=True)
def lgamma_array(x):
    out = np.empty(x.size)
    for i in range(x.size):
        out[i] = lgamma(x[i])
    return out


@njit(cache=True)
def log_correction_j_array(m):
    out = np.empty(m.size)
    for i in range(m.size):
        out[i] = log_correction_j(m[i])
    return out


@njit(cache=True)
def betainc_array(a, b, x):
    out = np.empty(x.size)
    for i in range(x.size):
        out[i] = betainc(a[i], b[i], x[i], 1.0 - x[i])
    return out


@njit(cache=True)
def central_t_cdf_array(t, df):
    out = np.empty(t.size)
    for i in range(t.size):
        out[i] = central_t_cdf(t[i], df[i])
    return out


@njit(cache=True)
def nct_cdf_array(t, df, ncp):
    out = np.empty(t.size)
    for i in range(t.size):
        out[i] = nct_cdf(t[i], df[i], ncp[i])
    return out


@njit(cache=True)
def ncp_search_array(t, df, level, tol, half):
    out = np.empty(t.size)
    for i in range(t.size):
        out[i] = ncp_search(t[i], df[i], level[i], tol, half)
    return out
