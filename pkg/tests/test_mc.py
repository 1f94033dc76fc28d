import math

import numpy as np
import pytest

from czic import (ChannelParams, CodebookCapError, ParameterError, SimConfig,
                  estimate_rates, run_trials, wilson_interval)

P66 = ChannelParams(4.0, 6.0, 6.0)

# closed-form scheme rates, frozen from a 50-digit evaluation (p1 = p2 = 6)
CLOSED = {
    (4.0, 0.0): (1.4036774610288021, 1.4036774610288021, 3.3432502635916092),
    (4.0, 1.0): (3.6192023696625395, 0.0, 3.6192023696625395),
}


def cfg(**kw):
    base = dict(params=P66, alpha=0.5, n=8, r1=0.5, r2=0.2, trials=20, seed=0)
    base.update(kw)
    return SimConfig(**base)


def test_config_validation():
    with pytest.raises(ParameterError):
        cfg(alpha=1.5)
    with pytest.raises(ParameterError):
        cfg(n=0)
    with pytest.raises(ParameterError):
        cfg(r1=-0.2)
    with pytest.raises(ParameterError):
        cfg(trials=0)
    with pytest.raises(ParameterError):
        cfg(decoder1="genie")


def test_codebook_sizes():
    c = cfg(n=4, r1=1.8870171127756969, r2=0.24220647661728123)
    assert (c.m1, c.m2) == (188, 2)
    assert cfg(r1=0.0, r2=0.0).m1 == 1


def test_wilson_interval():
    lo, hi = wilson_interval(0, 100)
    assert lo == pytest.approx(0.0, abs=1e-12) and 0.0 < hi < 0.05
    lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi
    assert 0.0 <= lo and hi <= 1.0
    with pytest.raises(ParameterError):
        wilson_interval(0, 0)


def test_zero_rate_trials_never_err():
    agg = run_trials(cfg(r1=0.0, r2=0.0, trials=40))
    assert agg.err1_rate == 0.0 and agg.err2_rate == 0.0
    assert agg.ci1[0] == 0.0


def test_trials_deterministic(monkeypatch):
    c = cfg(trials=50, r1=0.9, r2=0.25, seed=7)
    a = run_trials(c)
    b = run_trials(c)
    assert a.to_dict() == b.to_dict()
    monkeypatch.setenv("CZIC_THREADS", "3")
    c3 = run_trials(c)
    assert c3.to_dict() == a.to_dict()


def test_successive_decoder_runs():
    agg = run_trials(cfg(decoder1="successive", trials=60, r1=0.4, r2=0.1, n=12))
    assert 0.0 <= agg.err1_rate <= 1.0
    zero = run_trials(cfg(decoder1="successive", trials=20, r1=0.0, r2=0.0))
    assert zero.err1_rate == 0.0


def test_power_compliance():
    # mean per-block powers concentrate at (p1, p2) within 2% once
    # n * trials >= 1e4 samples contribute
    agg = run_trials(cfg(n=16, trials=700, r1=0.3, r2=0.3, seed=3))
    assert abs(agg.empirical_power[0] - 6.0) / 6.0 < 0.02
    assert abs(agg.empirical_power[1] - 6.0) / 6.0 < 0.02


def test_cap_enforced_before_sampling():
    c = cfg(n=12, r1=1.8870171127756969, r2=0.24220647661728123, trials=1)
    with pytest.raises(CodebookCapError):
        run_trials(c)


def test_inside_outside_dichotomy():
    # scaling the boundary point: harder operating points never get easier
    corner_r1, corner_r2 = 3.1450285212928282, 0.40367746102880205
    errs = []
    for lam in (0.6, 0.9, 1.2):
        rates = []
        for seed in (0, 1, 2):
            agg = run_trials(SimConfig(params=P66, alpha=0.5, n=4,
                                       r1=lam * corner_r1, r2=lam * corner_r2,
                                       trials=160, seed=seed))
            rates.append(agg.err1_rate)
        errs.append(np.mean(rates))
    assert errs[0] <= errs[1] + 1e-9 <= errs[2] + 2e-9


def test_estimate_rates_matches_closed_forms():
    for (a, al), (r1, r2, rs) in CLOSED.items():
        est = estimate_rates(ChannelParams(a, 6, 6), al, samples=200_000, seed=2)
        assert est.r1 == pytest.approx(r1, abs=0.02)
        assert est.r2 == pytest.approx(r2, abs=0.02)
        assert est.rsum == pytest.approx(rs, abs=0.02)
        assert est.se_r1 < 0.02 and est.se_r2 < 0.02


def test_estimate_rates_error_shrinks_with_samples():
    # O(1/sqrt(N)) consistency, pinned at two sample sizes with fixed seeds
    truth = CLOSED[(4.0, 0.0)]
    small = estimate_rates(P66, 0.0, samples=10_000, seed=6)
    large = estimate_rates(P66, 0.0, samples=160_000, seed=6)
    err_small = abs(small.r1 - truth[0]) + abs(small.r2 - truth[1]) + abs(small.rsum - truth[2])
    err_large = abs(large.r1 - truth[0]) + abs(large.r2 - truth[1]) + abs(large.rsum - truth[2])
    assert err_small <= 3 * (0.01 + 1.0 / math.sqrt(10_000))
    assert err_large <= 3 * (0.01 + 1.0 / math.sqrt(160_000))
    assert err_large < err_small


def test_estimate_rates_validation():
    with pytest.raises(ParameterError):
        estimate_rates(P66, 0.5, samples=10)
    with pytest.raises(ParameterError):
        estimate_rates(P66, -0.5, samples=10_000)
