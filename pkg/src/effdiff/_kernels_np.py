"""Vectorized numpy kernels, used when numba is absent or disabled.

Same algorithms as ``_kernels_jit`` (Lanczos log-gamma, Lentz continued
fraction, mode-centred noncentral t series, bracketed bisection), evaluated
over whole arrays at once. Iterative parts shrink the working set as
elements converge.
"""

import math

import numpy as np

from ._constants import (
    BETA_EPS,
    BETA_FPMIN,
    BETA_MAXIT,
    HALF_LOG_2PI,
    J_SERIES_MIN_DF,
    LANCZOS,
    LANCZOS_G,
    NCP_CAP,
    NCT_MAXTERMS,
    NCT_TAIL,
    SQRT2,
)

_erfc = np.frompyfunc(math.erfc, 1, 1)


def lgamma_array(x):
    x = np.asarray(x, dtype=np.float64)
    small = x < 0.5
    xs = np.where(small, x + 1.0, x)
    z = xs - 1.0
    acc = np.full_like(z, LANCZOS[0])
    for i in range(1, 9):
        acc += LANCZOS[i] / (z + i)
    tt = z + LANCZOS_G + 0.5
    out = HALF_LOG_2PI + (z + 0.5) * np.log(tt) - tt + np.log(acc)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(small, out - np.log(x), out)
    out[(x == 1.0) | (x == 2.0)] = 0.0
    return out


def log_correction_j_array(m):
    m = np.asarray(m, dtype=np.float64)
    out = np.empty_like(m)
    exact = m < J_SERIES_MIN_DF
    me = m[exact]
    out[exact] = lgamma_array(0.5 * me) - lgamma_array(0.5 * (me - 1.0)) - 0.5 * np.log(0.5 * me)
    ml = m[~exact]
    iz = 1.0 / (0.5 * (ml - 1.0))
    s = iz * (-1.0 / 8.0 + iz * (1.0 / 128.0 + iz * (5.0 / 1024.0 - iz * 21.0 / 32768.0)))
    out[~exact] = 0.5 * np.log1p(-1.0 / ml) + np.log1p(s)
    return out


def _clamp_tiny(v):
    return np.where(np.abs(v) < BETA_FPMIN, BETA_FPMIN, v)


def _betacf(a, b, x):
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones_like(x)
    d = 1.0 / _clamp_tiny(1.0 - qab * x / qap)
    h = d.copy()
    idx = np.arange(x.size)
    for m in range(1, BETA_MAXIT + 1):
        if idx.size == 0:
            break
        aw, bw, xw, qabw, qapw, qamw = a[idx], b[idx], x[idx], qab[idx], qap[idx], qam[idx]
        cw, dw = c[idx], d[idx]
        m2 = 2.0 * m
        aa = m * (bw - m) * xw / ((qamw + m2) * (aw + m2))
        dw = 1.0 / _clamp_tiny(1.0 + aa * dw)
        cw = _clamp_tiny(1.0 + aa / cw)
        hw = h[idx] * dw * cw
        aa = -(aw + m) * (qabw + m) * xw / ((aw + m2) * (qapw + m2))
        dw = 1.0 / _clamp_tiny(1.0 + aa * dw)
        cw = _clamp_tiny(1.0 + aa / cw)
        de = dw * cw
        h[idx] = hw * de
        c[idx] = cw
        d[idx] = dw
        idx = idx[np.abs(de - 1.0) >= BETA_EPS]
    return h


def betainc_xy(a, b, x, y):
    a, b, x, y = (np.asarray(v, dtype=np.float64) for v in np.broadcast_arrays(a, b, x, y))
    out = np.where(x <= 0.0, 0.0, 1.0)
    inner = (x > 0.0) & (y > 0.0)
    if not inner.any():
        return out
    a, b, x, y = a[inner], b[inner], x[inner], y[inner]
    lf = lgamma_array(a + b) - lgamma_array(a) - lgamma_array(b) + a * np.log(x) + b * np.log(y)
    front = np.exp(lf)
    direct = x < (a + 1.0) / (a + b + 2.0)
    val = np.empty_like(x)
    val[direct] = front[direct] * _betacf(a[direct], b[direct], x[direct]) / a[direct]
    sw = ~direct
    val[sw] = 1.0 - front[sw] * _betacf(b[sw], a[sw], y[sw]) / b[sw]
    out[inner] = val
    return out


def betainc_array(a, b, x):
    x = np.asarray(x, dtype=np.float64)
    return betainc_xy(a, b, x, 1.0 - x)


def central_t_cdf_array(t, df):
    t, df = (np.asarray(v, dtype=np.float64) for v in np.broadcast_arrays(t, df))
    tt = t * t
    tail = 0.5 * betainc_xy(0.5 * df, 0.5, df / (df + tt), tt / (df + tt))
    return np.where(t > 0.0, 1.0 - tail, tail)


def _nct_cdf_nonneg(t, df, delta):
    phi = 0.5 * _erfc(delta / SQRT2).astype(np.float64)
    out = phi.copy()
    tt = t * t
    x = tt / (tt + df)
    y = df / (tt + df)
    out[y <= 0.0] = 1.0
    # x == 0 when t*t underflows: every I_x term vanishes and F = Phi(-delta)
    live = np.nonzero((x > 0.0) & (y > 0.0))[0]
    if live.size == 0:
        return out
    x, y, df, delta = x[live], y[live], df[live], delta[live]
    b = 0.5 * df
    lam = 0.5 * delta * delta
    k = np.floor(lam)
    with np.errstate(divide="ignore", invalid="ignore"):
        lw = np.where(lam > 0.0, -lam + k * np.log(lam), 0.0)
    p0 = np.exp(lw - lgamma_array(k + 1.0))
    q0 = delta / SQRT2 * np.exp(lw - lgamma_array(k + 1.5))
    ap = k + 0.5
    aq = k + 1.0
    lx = np.log(x)
    ly = np.log(y)
    lgb = lgamma_array(b)
    ip0 = betainc_xy(ap, b, x, y)
    iq0 = betainc_xy(aq, b, x, y)
    tp0 = np.exp(ap * lx + b * ly + lgamma_array(ap + b) - lgamma_array(ap + 1.0) - lgb)
    tq0 = np.exp(aq * lx + b * ly + lgamma_array(aq + b) - lgamma_array(aq + 1.0) - lgb)
    total = p0 * ip0 + q0 * iq0

    idx = np.arange(live.size)
    p, q, ip, iq, tp, tq, a1, a2, j = p0, q0, ip0, iq0, tp0, tq0, ap, aq, k
    for _ in range(NCT_MAXTERMS):
        if idx.size == 0:
            break
        xw, bw, lamw = x[idx], b[idx], lam[idx]
        ip = ip - tp
        iq = iq - tq
        tp = tp * xw * (a1 + bw) / (a1 + 1.0)
        tq = tq * xw * (a2 + bw) / (a2 + 1.0)
        a1 = a1 + 1.0
        a2 = a2 + 1.0
        j = j + 1.0
        p = p * lamw / j
        q = q * lamw / (j + 0.5)
        total[idx] += p * ip + q * iq
        w = p + np.abs(q)
        keep = (w * np.maximum(np.maximum(ip, iq), 0.0) >= NCT_TAIL) & (w >= NCT_TAIL)
        idx = idx[keep]
        p, q, ip, iq, tp, tq, a1, a2, j = (v[keep] for v in (p, q, ip, iq, tp, tq, a1, a2, j))

    keep = k > 0.0
    idx = np.arange(live.size)[keep]
    p, q, ip, iq, tp, tq, a1, a2, j = (v[keep] for v in (p0, q0, ip0, iq0, tp0, tq0, ap, aq, k))
    while idx.size:
        xw, bw, lamw = x[idx], b[idx], lam[idx]
        tp = tp * a1 / (a1 + bw - 1.0) / xw
        tq = tq * a2 / (a2 + bw - 1.0) / xw
        a1 = a1 - 1.0
        a2 = a2 - 1.0
        ip = ip + tp
        iq = iq + tq
        p = p * j / lamw
        q = q * (j + 0.5) / lamw
        j = j - 1.0
        total[idx] += p * ip + q * iq
        keep = (j > 0.0) & (p + np.abs(q) >= NCT_TAIL)
        idx = idx[keep]
        p, q, ip, iq, tp, tq, a1, a2, j = (v[keep] for v in (p, q, ip, iq, tp, tq, a1, a2, j))

    out[live] = np.clip(out[live] + 0.5 * total, 0.0, 1.0)
    return out


def nct_cdf_array(t, df, ncp):
    t, df, ncp = (np.array(v, dtype=np.float64) for v in np.broadcast_arrays(t, df, ncp))
    neg = t < 0.0
    core = _nct_cdf_nonneg(np.abs(t), df, np.where(neg, -ncp, ncp))
    return np.clip(np.where(neg, 1.0 - core, core), 0.0, 1.0)


def ncp_search_array(t, df, level, tol, half):
    t, df, level = (np.array(v, dtype=np.float64) for v in np.broadcast_arrays(t, df, level))
    lo = t - half
    hi = t + half
    failed = np.zeros(t.shape, dtype=bool)

    step = np.full(t.shape, float(half))
    idx = np.nonzero(nct_cdf_array(t, df, lo) < level)[0]
    while idx.size:
        hi[idx] = lo[idx]
        step[idx] *= 2.0
        lo[idx] -= step[idx]
        out = lo[idx] < -NCP_CAP
        failed[idx[out]] = True
        idx = idx[~out]
        idx = idx[nct_cdf_array(t[idx], df[idx], lo[idx]) < level[idx]]

    step = np.full(t.shape, float(half))
    idx = np.nonzero(~failed)[0]
    idx = idx[nct_cdf_array(t[idx], df[idx], hi[idx]) > level[idx]]
    while idx.size:
        lo[idx] = hi[idx]
        step[idx] *= 2.0
        hi[idx] += step[idx]
        out = hi[idx] > NCP_CAP
        failed[idx[out]] = True
        idx = idx[~out]
        idx = idx[nct_cdf_array(t[idx], df[idx], hi[idx]) > level[idx]]

    idx = np.nonzero(~failed & (hi - lo > tol))[0]
    while idx.size:
        mid = 0.5 * (lo[idx] + hi[idx])
        up = nct_cdf_array(t[idx], df[idx], mid) > level[idx]
        lo[idx[up]] = mid[up]
        hi[idx[~up]] = mid[~up]
        idx = idx[hi[idx] - lo[idx] > tol]

    res = 0.5 * (lo + hi)
    res[failed] = np.nan
    return res
