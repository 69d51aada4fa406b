import math

import numpy as np
import pytest

from effdiff.effect_sizes import EffectKind
from effdiff.errors import DomainError
from effdiff.special import correction_j
from effdiff.verify_mc import (
    PopulationSpec,
    consistency_passes,
    run_bias_check,
    run_consistency_check,
    run_coverage_check,
    run_variance_check,
    simulate_moments,
    target_parameter,
)


def test_determinism():
    spec = PopulationSpec(1, 0, 2, 1, 5, 10, replications=20000, seed=99)
    assert run_bias_check(spec, EffectKind.E) == run_bias_check(spec, EffectKind.E)
    other = run_bias_check(PopulationSpec(1, 0, 2, 1, 5, 10, replications=20000, seed=100), EffectKind.E)
    assert other.mean_estimate != run_bias_check(spec, EffectKind.E).mean_estimate


def test_normal_sampling():
    # 500k samples of size 2: 10^6 draws from N(3, 4); sample means are N(3, 2)
    spec = PopulationSpec(3.0, 0.0, 4.0, 1.0, 2, 2, replications=500_000, seed=5)
    m1, v1, _, _ = simulate_moments(spec, two_sample=False)
    n = m1.size
    assert abs(m1.mean() - 3.0) <= 5 * math.sqrt(2.0 / n)
    assert abs(m1.var(ddof=1) - 2.0) <= 5 * math.sqrt(2 * 2.0**2 / n)
    # mean of sample variances estimates sigma^2 = 4, var(s^2) = 2 sigma^4 / (n - 1)
    assert abs(v1.mean() - 4.0) <= 5 * math.sqrt(2 * 16.0 / n)


def test_targets():
    assert target_parameter(PopulationSpec(1, 0, 2, 1, 5, 10), EffectKind.E) == pytest.approx(0.7745966692, abs=1e-9)
    assert target_parameter(PopulationSpec(1, 2, 1, 1, 5, 5), EffectKind.C) == -1.0
    assert target_parameter(PopulationSpec(1, 2, 1, 1, 5, 5), EffectKind.C_PRIME) == 1.0
    assert target_parameter(PopulationSpec(1, 0, 1, 1, 5, 5), EffectKind.HEDGES_D) == 1.0


def test_bias_c_zero_parameter():
    rep = run_bias_check(PopulationSpec(2, 2, 3, 3, 8, 8, replications=10_000), EffectKind.C)
    assert rep.passed and rep.target_parameter == 0.0
    assert rep.mse == pytest.approx(rep.empirical_variance * (rep.valid_replications - 1) / rep.valid_replications + rep.mean_estimate**2, rel=1e-10)


def test_bias_d_requires_equal_variances():
    with pytest.raises(DomainError):
        run_bias_check(PopulationSpec(1, 0, 2, 1, 5, 5), EffectKind.HEDGES_D)


def test_variance_check_large_n_c():
    rep = run_variance_check(PopulationSpec(1, 0, 1, 1, 1000, 1000, replications=20_000), EffectKind.C)
    assert rep.formula_variance_mean < 0.002
    assert rep.passed


def test_e_and_d_variance_coincide_for_equal_designs():
    spec = PopulationSpec(1, 0, 1, 1, 15, 15, replications=40_000)
    re = run_variance_check(spec, EffectKind.E)
    rd = run_variance_check(spec, EffectKind.HEDGES_D)
    se = math.hypot(re.standard_errors["variance"], rd.standard_errors["variance"])
    assert abs(re.empirical_variance - rd.empirical_variance) <= 4 * se


def test_c_variance_matches_exact_moment():
    # sqrt(n) c_biased ~ nct(n - 1, sqrt(n) gamma), so the exact variance of c is
    # (n-1)/(n-3) J^2(n-1) (1/n + gamma^2) - gamma^2
    n, gamma = 10, 1.0
    rep = run_variance_check(PopulationSpec(1, 0, 1, 1, n, n, replications=100_000), EffectKind.C)
    j = correction_j(n - 1)
    exact = (n - 1) / (n - 3) * j * j * (1 / n + gamma**2) - gamma**2
    assert abs(rep.empirical_variance - exact) <= 4 * rep.standard_errors["variance"]


def test_consistency_zero_parameter_mse_is_variance():
    reps = run_consistency_check(PopulationSpec(0, 0, 1, 1, 5, 5, replications=5000), EffectKind.C, (5, 20, 80))
    for r in reps:
        n = r.valid_replications
        assert r.mse == pytest.approx(r.empirical_variance * (n - 1) / n + r.mean_estimate**2, rel=1e-10)
    assert consistency_passes(reps)
    assert [r.n1 for r in reps] == [5, 20, 80]


def test_consistency_keeps_ratio():
    reps = run_consistency_check(PopulationSpec(1, 0, 2, 1, 5, 10, replications=2000), EffectKind.E, (5, 20, 80))
    assert [(r.n1, r.n2) for r in reps] == [(5, 10), (20, 40), (80, 160)]
    with pytest.raises(DomainError):
        run_consistency_check(PopulationSpec(1, 0, 1, 1, 5, 5), EffectKind.C, (20, 5))


def test_coverage_half_alpha():
    rep = run_coverage_check(PopulationSpec(1, 0, 1, 1, 12, 12, replications=10_000), EffectKind.C, alpha=0.5)
    assert abs(rep.ci_coverage - 0.5) <= 4 * rep.standard_errors["coverage"]


def test_coverage_c_prime():
    rep = run_coverage_check(PopulationSpec(1, 0, 1, 1, 20, 20, replications=5000), EffectKind.C_PRIME)
    assert rep.target_parameter == -1.0
    assert rep.passed


def test_report_dict():
    rep = run_bias_check(PopulationSpec(1, 0, 1, 1, 5, 5, replications=1000), EffectKind.C)
    d = rep.as_dict()
    assert d["check"] == "bias" and d["kind"] == "c" and isinstance(d["standard_errors"], dict)


def test_spec_validation():
    with pytest.raises(DomainError):
        PopulationSpec(0, 0, -1, 1, 5, 5)
    with pytest.raises(DomainError):
        PopulationSpec(0, 0, 1, 1, 5, 5, replications=0)
