import math

import numpy as np
import pytest

from czic import (BoundParams, ChannelParams, CorrelationTriple, ParameterError,
                  RegimeError, ValidityError, bound_frontier, capacity_cor4,
                  capacity_strong, capacity_thm3, capacity_weak, directed_gap,
                  inner_lemma2, lemma1_frontier_boundary2d, outer_cor1, outer_cor2,
                  outer_cor3, outer_lemma1, rho_axis, scalar_parameter_grid)

P66 = ChannelParams(4.0, 6.0, 6.0)

# frozen from a 50-digit evaluation of the closed forms at p1 = p2 = 6
HL7 = 1.4036774610288021       # (1/2) log2 7
HL103 = 3.3432502635916092     # (1/2) log2 103
HL151 = 3.6192023696625395     # (1/2) log2 151
HL25 = 2.3219280948873623      # (1/2) log2 25
HL13 = 1.8502198590705461      # (1/2) log2 13
HL1177 = 5.1004493025192221    # (1/2) log2 1177
COR3_SUM1_HALF = 3.6410668390980609   # first sum cap at alpha=0.5, beta=1, a=4
COR3_SUM2_HALF = 3.5487059823216302   # second sum cap at alpha=0.5, a=4
R2M_HALF = 0.40367746102880205        # r2 cap at alpha=0.5
WEAK_A1_AL0_R1 = 0.44654239804174403  # (1/2) log2 (1 + 6/7)

APPROX = {"rel": 1e-12}


def test_inner_lemma2_examples():
    cs = inner_lemma2(P66, 1.0)
    assert cs.r1_max == pytest.approx(HL151, **APPROX)
    assert cs.r2_max == 0.0
    assert cs.sum_max == pytest.approx(HL151, **APPROX)
    cs = inner_lemma2(P66, 0.0)
    assert cs.r1_max == pytest.approx(HL7, **APPROX)
    assert cs.r2_max == pytest.approx(HL7, **APPROX)
    assert cs.sum_max == pytest.approx(HL103, **APPROX)
    cs = inner_lemma2(ChannelParams(2.5, 6.0, 0.0), 0.7)
    assert cs.r2_max == 0.0
    assert cs.r1_max == pytest.approx(HL7, **APPROX)
    with pytest.raises(ParameterError):
        inner_lemma2(P66, 1.2)


def test_outer_lemma1_examples():
    cs = outer_lemma1(P66, CorrelationTriple(0.0, 0.0, 0.0))
    assert cs.r2_max == 0.0
    assert cs.sum_max == pytest.approx(HL103, **APPROX)
    assert math.isinf(cs.r1_max)
    cs = outer_lemma1(P66, CorrelationTriple(0.0, 1.0, 0.0))
    assert cs.r2_max == pytest.approx(HL7, **APPROX)
    assert cs.sum_max == pytest.approx(2 * HL7, **APPROX)
    with pytest.raises(ValidityError):
        outer_lemma1(P66, CorrelationTriple(1.0, 0.0, 0.5))
    with pytest.raises(RegimeError, match=r"requires \|a\| >= 1.0"):
        outer_lemma1(ChannelParams(0.99, 6, 6), CorrelationTriple(0.0, 0.0, 0.0))
    with pytest.raises(ParameterError):
        CorrelationTriple(0.0, 1.2, 0.0)


def test_psd_predicate():
    assert CorrelationTriple(0.0, 0.0, 1.0).is_valid()
    assert CorrelationTriple(0.5, 0.5, 0.25 + math.sqrt(0.75 * 0.75)).is_valid()
    assert not CorrelationTriple(1.0, 0.0, 0.5).is_valid()


def test_outer_cor1_examples():
    cs = outer_cor1(P66, 1.0)
    assert cs.sum_max == pytest.approx(HL151, **APPROX)
    assert cs.r2_max == 0.0
    cs = outer_cor1(P66, 0.0)
    assert cs.sum_max == pytest.approx(HL103, **APPROX)
    assert cs.r2_max == pytest.approx(HL7, **APPROX)
    cs = outer_cor1(ChannelParams(3.0, 6.0, 0.0), 0.3)
    assert cs.r2_max == 0.0
    assert cs.sum_max == pytest.approx(HL7, **APPROX)


def test_outer_cor2_examples():
    cs = outer_cor2(P66, 0.0)
    assert cs.r2_max == pytest.approx(HL7, **APPROX)
    assert cs.sum_max == pytest.approx(2 * HL7, **APPROX)
    cs = outer_cor2(P66, 1.0)
    assert cs.r2_max == 0.0
    assert cs.sum_max == pytest.approx(HL151, **APPROX)
    # p1 = 0 collapses to the single-user rate
    cs = outer_cor2(ChannelParams(1.0, 0.0, 6.0), 0.0)
    assert cs.sum_max == pytest.approx(cs.r2_max, **APPROX)
    assert cs.r2_max == pytest.approx(HL7, **APPROX)


def test_outer_cor3_examples():
    cs = outer_cor3(P66, 0.5, 1.0)
    assert cs.r2_max == pytest.approx(R2M_HALF, **APPROX)
    assert cs.sum_max == pytest.approx(COR3_SUM2_HALF, **APPROX)
    assert cs.sum_max <= COR3_SUM1_HALF
    # corner coefficient sqrt(alpha*beta) + sqrt((1-alpha)(1-beta)) hits 1 at both
    # diagonal corners; at (0, 0) the first sum cap collapses to the r2 cap
    cs = outer_cor3(P66, 1.0, 1.0)
    assert cs.sum_max == pytest.approx(HL151, **APPROX)
    cs = outer_cor3(P66, 0.0, 0.0)
    assert cs.sum_max == pytest.approx(HL7, **APPROX)


def test_cor3_beta1_reduces_to_thm3():
    for alpha in (0.0, 0.5, 1.0):
        a = outer_cor3(P66, alpha, 1.0)
        b = capacity_thm3(P66, alpha)
        assert a.r2_max == pytest.approx(b.r2_max, abs=1e-12)
        assert a.sum_max == pytest.approx(b.sum_max, abs=1e-12)


def test_capacity_thm3_examples():
    cs = capacity_thm3(P66, 0.0)
    assert cs.r2_max == pytest.approx(HL7, **APPROX)
    assert cs.sum_max == pytest.approx(2 * HL7, **APPROX)
    cs = capacity_thm3(P66, 1.0)
    assert cs.r2_max == 0.0
    assert cs.sum_max == pytest.approx(HL151, **APPROX)
    capacity_thm3(ChannelParams(math.sqrt(7.0), 6, 6), 0.0)  # boundary admissible
    with pytest.raises(RegimeError, match="2.645751311064590"):
        capacity_thm3(ChannelParams(2.64, 6, 6), 0.0)
    # outside the regime the formulas are still reachable as a bound
    cs = capacity_thm3(ChannelParams(1.5, 6, 6), 0.5, check_regime=False)
    assert cs.r2_max == pytest.approx(R2M_HALF, **APPROX)


def test_capacity_cor4_examples():
    p13 = ChannelParams(13.0, 6.0, 6.0)
    cs = capacity_cor4(p13, 1.0)
    assert cs.r1_max == pytest.approx(HL1177, **APPROX)
    assert cs.r2_max == 0.0
    assert math.isinf(cs.sum_max)
    cs = capacity_cor4(p13, 0.0)
    assert cs.r1_max == pytest.approx(HL7, **APPROX)
    assert cs.r2_max == pytest.approx(HL7, **APPROX)
    with pytest.raises(RegimeError, match="12.5574385243"):
        capacity_cor4(ChannelParams(12.0, 6, 6), 0.0)


def test_capacity_weak_examples():
    p1 = ChannelParams(1.0, 6.0, 6.0)
    cs = capacity_weak(p1, 1.0)
    assert cs.r1_max == pytest.approx(HL25, **APPROX)
    assert cs.r2_max == 0.0
    cs = capacity_weak(ChannelParams(0.0, 6, 6), 0.0)
    assert cs.r1_max == pytest.approx(HL7, **APPROX)
    assert cs.r2_max == pytest.approx(HL7, **APPROX)
    cs = capacity_weak(p1, 0.0)
    assert cs.r1_max == pytest.approx(WEAK_A1_AL0_R1, **APPROX)
    assert cs.r2_max == pytest.approx(HL7, **APPROX)
    with pytest.raises(RegimeError, match=r"requires \|a\| <= 1.0"):
        capacity_weak(ChannelParams(1.01, 6, 6), 0.5)


def test_capacity_strong_examples():
    p1 = ChannelParams(1.0, 6.0, 6.0)
    cs = capacity_strong(p1, 0.0)
    assert cs.sum_max == pytest.approx(HL13, **APPROX)
    assert cs.r2_max == pytest.approx(HL7, **APPROX)
    cs = capacity_strong(p1, 1.0)
    assert cs.sum_max == pytest.approx(HL25, **APPROX)
    assert cs.r2_max == 0.0
    capacity_strong(ChannelParams(math.sqrt(1 + 6 / 7), 6, 6), 0.5)  # boundary admissible
    with pytest.raises(RegimeError):
        capacity_strong(ChannelParams(1.37, 6, 6), 0.5)
    with pytest.raises(RegimeError, match=r"requires \|a\| >= 1.0"):
        capacity_strong(ChannelParams(0.95, 6, 6), 0.5)


def test_sign_invariance():
    rng = np.random.default_rng(6)
    for _ in range(40):
        a = rng.uniform(1.0, 15.0)
        p = ChannelParams(a, rng.uniform(0, 15), rng.uniform(0, 15))
        m = ChannelParams(-a, p.p1, p.p2)
        al = float(rng.uniform(0, 1))
        for op in (inner_lemma2, outer_cor1, outer_cor2):
            x, y = op(p, al), op(m, al)
            assert (x.r1_max, x.r2_max, x.sum_max) == (y.r1_max, y.r2_max, y.sum_max)
        x = outer_cor3(p, al, 0.3)
        y = outer_cor3(m, al, 0.3)
        assert (x.r2_max, x.sum_max) == (y.r2_max, y.sum_max)


def test_bound_params_validation():
    BoundParams(0.2, 1.0, 0.0)
    with pytest.raises(ParameterError):
        BoundParams(alpha=-0.1)
    with pytest.raises(ParameterError):
        BoundParams(gamma=1.5)


def test_grids():
    g = scalar_parameter_grid(P66)
    assert g[0] == 0.0 and g[-1] == 1.0
    assert np.all(np.diff(g) > 0)
    assert np.all((g >= 0) & (g <= 1))
    ax = rho_axis(101)
    assert ax.size == 101
    assert ax[0] == -1.0 and ax[-1] == 1.0 and ax[50] == 0.0
    with pytest.raises(ParameterError):
        rho_axis(100)
    # degenerate p2 = 0 still yields a valid grid
    g0 = scalar_parameter_grid(ChannelParams(1.0, 6.0, 0.0))
    assert g0[0] == 0.0 and g0[-1] == 1.0


def test_bound_frontier_gates_and_ids():
    with pytest.raises(ParameterError):
        bound_frontier("nope", P66)
    with pytest.raises(RegimeError):
        bound_frontier("lemma1", ChannelParams(0.5, 6, 6))
    with pytest.raises(RegimeError):
        bound_frontier("thm3", ChannelParams(2.0, 6, 6))
    with pytest.raises(RegimeError):
        bound_frontier("weak", P66)
    with pytest.raises(RegimeError):
        bound_frontier("cor4", P66)
    with pytest.raises(RegimeError):
        bound_frontier("strongcap", P66)


def test_inner_frontier_corner_values():
    fr = bound_frontier("inner", P66, r2_grid=201)
    assert fr.r1_at(0.0) == pytest.approx(HL151, **APPROX)
    assert fr.r2_max == pytest.approx(HL7, **APPROX)
    assert fr.r1_at(fr.r2_max) == pytest.approx(HL7, **APPROX)


def test_lemma1_dominated_by_corollaries():
    rng = np.random.default_rng(8)
    for _ in range(6):
        p = ChannelParams(rng.uniform(1.0, 10.0), rng.uniform(0.2, 12), rng.uniform(0.2, 12))
        lem = bound_frontier("lemma1", p, rho_grid=41, r2_grid=201)
        for b in ("cor1", "cor2", "cor3"):
            assert directed_gap(lem, bound_frontier(b, p, rho_grid=41, r2_grid=201)) <= 1e-9


def test_boundary2d_mode():
    # the 2-D boundary sweep drops the second r2 cap, so it dominates the full
    # 3-D sweep and stays inside the matching single-parameter outer bound
    lem = bound_frontier("lemma1", P66, rho_grid=41, r2_grid=201)
    b2d = lemma1_frontier_boundary2d(P66, rho_grid=41, r2_grid=201)
    assert directed_gap(lem, b2d) <= 1e-9
    cor2 = bound_frontier("cor2", P66, rho_grid=41, r2_grid=201)
    assert directed_gap(b2d, cor2) <= 1e-9
    with pytest.raises(RegimeError):
        lemma1_frontier_boundary2d(ChannelParams(0.5, 6, 6))


def test_frontier_monotone_in_power():
    base = bound_frontier("inner", P66, r2_grid=201)
    richer1 = bound_frontier("inner", ChannelParams(4.0, 8.0, 6.0), r2_grid=201)
    richer2 = bound_frontier("inner", ChannelParams(4.0, 6.0, 8.0), r2_grid=201)
    for t in np.linspace(0, base.r2_max, 41):
        assert richer1.r1_at(t) >= base.r1_at(t) - 1e-12
        assert richer2.r1_at(t) >= base.r1_at(t) - 1e-12


def test_weak_strong_sum_identity_at_a1():
    # per-alpha algebraic identity: r1_weak + r2_weak = sum_strong at |a| = 1
    p = ChannelParams(1.0, 6.0, 6.0)
    for al in np.linspace(0, 1, 101):
        w = capacity_weak(p, float(al))
        s = capacity_strong(p, float(al))
        assert w.r1_max + w.r2_max == pytest.approx(s.sum_max, abs=1e-12)


def test_convexified_frontier_dominates():
    fr = bound_frontier("cor1", P66, r2_grid=201)
    env = bound_frontier("cor1", P66, r2_grid=201, convexify=True)
    assert env.convexified
    assert np.all(env.r1 >= fr.r1 - 1e-15)
