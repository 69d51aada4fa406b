import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from effdiff.effect_sizes import (
    VARIANCE_UNDEFINED,
    EffectKind,
    EffectParameters,
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
from effdiff.errors import DegenerateInputError, DomainError

from conftest import DATA1, DATA2

A = SampleSummary(2, 2.5, 5)
B = SampleSummary(1, 1, 5)
P1 = SampleSummary(1, 2, 5)
P2 = SampleSummary(0, 1, 10)


def test_sample_summary():
    assert sample_summary([0, 1, 2, 3, 4]) == SampleSummary(2.0, 2.5, 5)
    assert sample_summary([0, 0, 1, 2, 2]) == SampleSummary(1.0, 1.0, 5)
    s = sample_summary([7])
    assert (s.mean, s.variance, s.n) == (7.0, None, 1)
    with pytest.raises(DomainError):
        sample_summary([])
    with pytest.raises(DomainError):
        s.sd


def test_summary_validation():
    with pytest.raises(DomainError):
        SampleSummary(0, -1, 5)
    with pytest.raises(DomainError):
        SampleSummary(0, 1, 0)
    with pytest.raises(DomainError):
        SampleSummary(0, 1, 1)


def test_glass_delta():
    assert glass_delta(A, B).estimate == 1.0
    assert glass_delta(A, A).estimate == 0.0
    with pytest.raises(DegenerateInputError):
        glass_delta(A, SampleSummary(1, 0, 5))
    r = glass_delta(A, B)
    assert r.variance is None and r.ci is None


def test_hedges_g():
    assert hedges_g(A, B).estimate == pytest.approx(1 / math.sqrt(1.75), rel=1e-14)
    assert hedges_g(A, A).estimate == 0.0
    assert hedges_g(P1, P2).estimate == pytest.approx(1 / math.sqrt(17 / 13), rel=1e-14)
    assert hedges_g(A, B).df == 8
    with pytest.raises(DegenerateInputError):
        hedges_g(SampleSummary(1, 0, 4), SampleSummary(0, 0, 4))


def test_hedges_d_golden():
    r = hedges_d(DATA1, DATA2)
    assert r.estimate == pytest.approx(0.682379579593354, abs=1e-12)
    assert r.variance == pytest.approx(0.484026380702367, abs=1e-12)
    r = hedges_d(P1, P2)
    assert r.estimate == pytest.approx(0.82286529714397, abs=1e-12)
    assert r.variance == pytest.approx(0.349443397657368, abs=1e-12)
    assert hedges_d(A, A).estimate == 0.0


def test_variance_absent_at_small_df():
    r = hedges_d([0, 1], [2, 4])
    assert r.variance is None and VARIANCE_UNDEFINED in r.diagnostics
    r = effect_c([0, 1, 3], 0.0)
    assert r.variance is None and VARIANCE_UNDEFINED in r.diagnostics
    r = effect_c([0, 1, 3, 5], 0.0)
    assert r.variance is not None


def test_welch_t_and_f():
    assert welch_t(A, B) == pytest.approx(1 / math.sqrt(0.7), rel=1e-14)
    assert welch_t(A, SampleSummary(2, 1, 5)) == 0.0
    assert welch_t(P1, P2) == pytest.approx(math.sqrt(2), rel=1e-14)
    assert welch_satterthwaite_f(A, B) == pytest.approx(0.49 / 0.0725, rel=1e-14)
    assert welch_satterthwaite_f(SampleSummary(0, 3, 7), SampleSummary(1, 3, 7)) == pytest.approx(12, rel=1e-14)
    f = welch_satterthwaite_f(SampleSummary(1, 10, 3), SampleSummary(0, 1e-12, 3))
    assert f == pytest.approx(2, rel=1e-9)
    with pytest.raises(DegenerateInputError):
        welch_t(SampleSummary(1, 0, 3), SampleSummary(0, 0, 3))


def test_effect_e_golden():
    r = effect_e(DATA1, DATA2)
    assert r.estimate == pytest.approx(0.668264936033828, abs=1e-12)
    assert r.variance == pytest.approx(0.506830833214916, abs=1e-12)
    r = effect_e(P1, P2)
    assert r.estimate == pytest.approx(0.674259756444758, abs=1e-12)
    assert r.variance == pytest.approx(0.41613476136966, abs=1e-12)
    eq = SampleSummary(1, 2, 6), SampleSummary(0, 2, 6)
    assert effect_e(*eq).estimate == pytest.approx(hedges_d(*eq).estimate, rel=1e-14)


def test_effect_c_golden():
    r = effect_c(DATA2, 2.0, unbiased=False)
    assert r.estimate == -1.0
    assert r.variance == pytest.approx(0.9292037, abs=1e-7)
    assert effect_c([1, 2, 3], 2.0).estimate == 0.0
    rp = effect_c(DATA2, 2.0, reverse=True)
    assert rp.kind is EffectKind.C_PRIME
    assert rp.estimate == -effect_c(DATA2, 2.0).estimate > 0
    assert effect_c(DATA2, 2.0, unbiased=False, reverse=True).estimate == 1.0
    with pytest.raises(DegenerateInputError):
        effect_c([1, 1, 1], 0.0)


def test_effect_from_parameters():
    assert effect_from_parameters(EffectParameters("delta", 1, 0, 1)) == 1.0
    v = effect_from_parameters(EffectParameters("epsilon_r", 1, 0, 2, 1, 0.5))
    assert v == pytest.approx(1 / math.sqrt(2.5 / 1.5), rel=1e-14)
    assert effect_from_parameters(EffectParameters("gamma", 1, 2, 1)) == -1.0
    q = effect_from_parameters(EffectParameters("delta_prime_q", 1, 0, 2, 1, 4 / 9))
    assert q == pytest.approx(1 / math.sqrt((4 / 9 * 2 + 1) / (13 / 9)), rel=1e-14)
    with pytest.raises(DomainError):
        effect_from_parameters(EffectParameters("epsilon_r", 1, 0, 2))
    with pytest.raises(DomainError):
        effect_from_parameters(EffectParameters("delta", 1, 0, 0))
    with pytest.raises(DomainError):
        effect_from_parameters(EffectParameters("nope", 1, 0, 1))


# ---- properties -------------------------------------------------------------

TWO_SAMPLE = [EffectKind.HEDGES_G, EffectKind.HEDGES_D, EffectKind.E_BIASED, EffectKind.E]
finite = st.floats(-100, 100, allow_nan=False)


def samples(min_size=3, max_size=25):
    return st.lists(finite, min_size=min_size, max_size=max_size).filter(lambda xs: np.std(xs) > 1e-3)


@settings(max_examples=150, deadline=None)
@given(samples(), samples(), st.floats(0.01, 100), st.floats(-50, 50), st.booleans())
def test_scale_translation_equivariance(x, y, scale, shift, negate):
    a = -scale if negate else scale
    xt = [a * v + shift for v in x]
    yt = [a * v + shift for v in y]
    sign = -1.0 if negate else 1.0
    for kind in TWO_SAMPLE + [EffectKind.GLASS_DELTA]:
        e0 = estimate(kind, x, y).estimate
        e1 = estimate(kind, xt, yt).estimate
        assert e1 == pytest.approx(sign * e0, rel=1e-7, abs=1e-9)
    for kind in (EffectKind.C_BIASED, EffectKind.C, EffectKind.C_PRIME):
        c0 = estimate(kind, x, 1.5).estimate
        c1 = estimate(kind, xt, a * 1.5 + shift).estimate
        assert c1 == pytest.approx(sign * c0, rel=1e-7, abs=1e-9)


@settings(max_examples=150, deadline=None)
@given(samples(), samples(), finite)
def test_antisymmetry(x, y, c):
    for kind in TWO_SAMPLE:
        assert estimate(kind, y, x).estimate == -estimate(kind, x, y).estimate
    assert effect_c(x, c).estimate == -effect_c(x, c, reverse=True).estimate


@settings(max_examples=300)
@given(
    st.floats(1e-3, 1e3), st.floats(1e-3, 1e3), st.integers(2, 500), st.integers(2, 500)
)
def test_f_bounds(v1, v2, n1, n2):
    f = welch_satterthwaite_f(SampleSummary(0, v1, n1), SampleSummary(0, v2, n2))
    assert min(n1 - 1, n2 - 1) * (1 - 1e-12) <= f <= (n1 + n2 - 2) * (1 + 1e-12)


@settings(max_examples=200)
@given(finite, finite, st.floats(1e-3, 1e3), st.integers(2, 300))
def test_equal_n_equal_variance_collapse(m1, m2, v, n):
    a, b = SampleSummary(m1, v, n), SampleSummary(m2, v, n)
    assert effect_e(a, b).estimate == pytest.approx(hedges_d(a, b).estimate, rel=1e-12, abs=1e-300)
    assert effect_e(a, b, unbiased=False).estimate == pytest.approx(hedges_g(a, b).estimate, rel=1e-12, abs=1e-300)


@settings(max_examples=200, deadline=None)
@given(samples(), samples(), finite)
def test_variances_nonnegative(x, y, c):
    for kind in list(EffectKind):
        if kind is EffectKind.GLASS_DELTA:
            continue
        other = c if kind.one_sample else y
        try:
            r = estimate(kind, x, other)
        except DomainError:
            continue
        assert r.variance is None or r.variance >= 0


@settings(max_examples=150, deadline=None)
@given(samples(2), samples(2), finite)
def test_raw_and_summary_agree(x, y, c):
    sx, sy = sample_summary(x), sample_summary(y)
    for kind in list(EffectKind):
        other, sother = (c, c) if kind.one_sample else (y, sy)
        try:
            raw = estimate(kind, x, other)
        except DomainError:
            continue
        assert raw == estimate(kind, sx, sother)
