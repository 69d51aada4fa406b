import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from effdiff.errors import DomainError
from effdiff.noncentral_t import central_t_cdf, nct_cdf


def test_examples():
    assert nct_cdf(0.0, 5.0, 0.0) == pytest.approx(0.5, abs=1e-15)
    assert nct_cdf(-2.0, 4.0, -5.078125) == pytest.approx(0.995, abs=2e-3)
    assert central_t_cdf(0.0, 7.0) == 0.5
    assert central_t_cdf(1.0, 1.0) == pytest.approx(0.75, abs=1e-14)
    assert central_t_cdf(-1.0, 1.0) == pytest.approx(0.25, abs=1e-14)


def test_central_t_closed_forms():
    # df=2: F(t) = 1/2 + t / (2 sqrt(2 + t^2))
    for t in np.linspace(-30, 30, 41):
        assert central_t_cdf(t, 2.0) == pytest.approx(0.5 + t / (2 * math.sqrt(2 + t * t)), abs=1e-14)
        assert central_t_cdf(t, 1.0) == pytest.approx(0.5 + math.atan(t) / math.pi, abs=1e-14)


def test_ncp_zero_matches_central_grid():
    t = np.linspace(-8, 8, 10)
    df = np.array([0.7, 1, 2.5, 4, 6.76, 10, 33.3, 100, 400, 1000])
    tt, dd = np.meshgrid(t, df)
    err = np.abs(nct_cdf(tt, dd, 0.0) - central_t_cdf(tt, dd))
    assert err.max() < 1e-10


def test_against_scipy():
    rng = np.random.default_rng(7)
    n = 3000
    t = rng.uniform(-60, 60, n)
    df = np.exp(rng.uniform(0, math.log(1000), n))
    ncp = rng.uniform(-40, 40, n)
    ref = stats.nct.cdf(t, df, ncp)
    ok = np.isfinite(ref)  # scipy gives NaN for some far-tail points
    assert ok.mean() > 0.8
    err = np.abs(nct_cdf(t[ok], df[ok], ncp[ok]) - ref[ok])
    assert err.max() < 1e-8


def _quad_cdf(t, df, ncp):
    # P(T <= t) = E[ Phi(t sqrt(W/df) - ncp) ], W ~ chi2(df)
    mp = mpmath.mp
    t, df, ncp = mp.mpf(t), mp.mpf(df), mp.mpf(ncp)
    k = df / 2
    logc = -k * mp.log(2) - mp.loggamma(k)

    def integrand(w):
        return mp.ncdf(t * mp.sqrt(w / df) - ncp) * mp.exp(logc + (k - 1) * mp.log(w) - w / 2)

    return float(mp.quad(integrand, [0, df, 4 * df + 100, mp.inf]))


def test_where_scipy_fails_against_quadrature():
    rng = np.random.default_rng(7)
    t = rng.uniform(-60, 60, 3000)
    df = np.exp(rng.uniform(0, math.log(1000), 3000))
    ncp = rng.uniform(-40, 40, 3000)
    bad = np.nonzero(~np.isfinite(stats.nct.cdf(t, df, ncp)))[0][:20]
    mpmath.mp.dps = 30
    for i in bad:
        assert abs(nct_cdf(t[i], df[i], ncp[i]) - _quad_cdf(t[i], df[i], ncp[i])) < 1e-8, (t[i], df[i], ncp[i])


def test_tiny_t_is_phi_of_minus_ncp():
    assert nct_cdf(1e-307, 1.0, 0.0) == 0.5
    assert nct_cdf(-1e-300, 3.0, 1.0) == pytest.approx(0.15865525393145707, abs=1e-15)


def test_against_scipy_near_body():
    # scipy's nct is most trustworthy near the centre of the distribution
    rng = np.random.default_rng(8)
    ncp = rng.uniform(-40, 40, 2000)
    df = np.exp(rng.uniform(0, math.log(1000), 2000))
    t = ncp + rng.normal(0, 3, 2000)
    err = np.abs(nct_cdf(t, df, ncp) - stats.nct.cdf(t, df, ncp))
    assert err.max() < 1e-9


@settings(max_examples=200)
@given(
    st.floats(-60, 60),
    st.floats(-60, 60),
    st.floats(1, 1000),
    st.floats(-40, 40),
)
def test_monotone_in_t(t1, t2, df, ncp):
    # monotone up to rounding; series cancellation near F = 1 costs ~1e-14
    lo, hi = sorted((t1, t2))
    assert nct_cdf(lo, df, ncp) <= nct_cdf(hi, df, ncp) + 1e-12


@settings(max_examples=200)
@given(st.floats(-20, 20), st.floats(1, 200), st.floats(-15, 15), st.floats(0.05, 2))
def test_strictly_decreasing_in_ncp(t, df, ncp, step):
    a, b = nct_cdf(t, df, ncp), nct_cdf(t, df, ncp + step)
    if 1e-12 < a < 1 - 1e-12:
        assert b < a


def test_monte_carlo_agreement():
    df, ncp, n = 6.76, 1.9, 1_000_000
    rng = np.random.Generator(np.random.Philox(2024))
    z = rng.standard_normal(n)
    w = rng.chisquare(df, n)
    draws = (z + ncp) / np.sqrt(w / df)
    for q in [-0.5, 1.0, 2.0, 3.0, 6.0]:
        p = nct_cdf(q, df, ncp)
        emp = np.mean(draws <= q)
        se = math.sqrt(p * (1 - p) / n)
        assert abs(emp - p) <= 4 * se, q


def test_domain_errors():
    with pytest.raises(DomainError):
        nct_cdf(math.inf, 3.0, 0.0)
    with pytest.raises(DomainError):
        nct_cdf(1.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        nct_cdf(1.0, 3.0, math.nan)
    with pytest.raises(DomainError):
        central_t_cdf(math.nan, 3.0)


def test_extreme_tails_stay_in_unit_interval():
    vals = nct_cdf(np.array([-1e6, 1e6, 60, -60]), 1.0, np.array([40.0, -40.0, -40.0, 40.0]))
    assert np.all((vals >= 0) & (vals <= 1))


@pytest.mark.parametrize("t", [7.9e-159, 1e-200, 1e-300, 3e-310])
def test_subnormal_x_is_finite(t):
    for ncp in (2.0, 10.0, 38.0):
        v = nct_cdf(t, 1.0, ncp)
        assert v == pytest.approx(0.5 * math.erfc(ncp / math.sqrt(2)), abs=1e-15)
