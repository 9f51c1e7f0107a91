import numpy as np
import pytest

from threshold_cascade import analytic
from threshold_cascade.analytic import (ALL_ACTIVE, ALL_INACTIVE, BOUNDARY,
                                        FROZEN, OSCILLATING2, RegionKind,
                                        RegionLabel, alpha_pattern,
                                        classify_complete, classify_ring,
                                        classify_star, compute_q,
                                        ring_region_edges, thresholds_complete,
                                        thresholds_ring, thresholds_star)
from threshold_cascade.dynamics import ModelConfig, initial_state, step
from threshold_cascade.errors import ParameterError, UnsupportedRegimeError
from threshold_cascade.graph import build_ring
from threshold_cascade.weights import ActivityMode, InfluenceMatrices

BETAS = [0.1, 0.5, 1.0, 2.0, 3.7, 10.0, 50.0]


def test_curve_identities():
    for n in (5, 20, 53):
        for beta in BETAS:
            assert analytic.gamma2(n, beta) == pytest.approx(
                beta * analytic.gamma1(n, beta), abs=1e-14)
            assert analytic.delta3(n, beta) == pytest.approx(
                beta * analytic.delta1(n, beta), abs=1e-14)
            assert analytic.delta2(n, beta) == pytest.approx(
                beta * (beta + 1) / (beta + n - 1) * analytic.delta1(n, beta),
                abs=1e-14)


def test_curve_intersections():
    for n in (5, 21):
        pivot = 1.0 / (n - 1)
        assert analytic.gamma1(n, 1.0) == pytest.approx(pivot, abs=1e-15)
        assert analytic.gamma2(n, 1.0) == pytest.approx(pivot, abs=1e-15)
        assert analytic.gamma3(n, 1.0) == pytest.approx(pivot, abs=1e-15)
        s = np.sqrt(n - 1.0)
        assert analytic.delta1(n, s) == pytest.approx(analytic.delta2(n, s),
                                                      abs=1e-14)
        assert analytic.delta1(n, 1.0) == pytest.approx(analytic.delta3(n, 1.0),
                                                        abs=1e-15)


def test_spectral_scalars():
    for n in (5, 21):
        for beta in BETAS:
            assert -1 < analytic.lambda_complete(n, beta) < 1
            assert -1 < analytic.lambda_star(n, beta) < 1
            assert analytic.star_ratio(n, beta) > 0
        assert analytic.lambda_complete(n, 1.0) == 0.0
        assert analytic.lambda_star(n, np.sqrt(n - 1.0)) == pytest.approx(
            0.0, abs=1e-15)


def test_thresholds_at_zero():
    for fn, n in ((thresholds_complete, 6), (thresholds_star, 6),
                  (thresholds_ring, 7)):
        theta = fn(n, 2.0, 0.4, 0)
        assert theta[0] == pytest.approx(0.0, abs=1e-12)
        assert np.allclose(theta[1:], 0.4, atol=1e-12)


def test_thresholds_complete_beta_one_consensus():
    theta = thresholds_complete(5, 1.0, 0.3, 1)
    assert np.allclose(theta, 4 / 5 * 0.3, atol=0)


def test_thresholds_limits():
    for n in (5, 21):
        tau = 0.7
        assert np.allclose(thresholds_complete(n, 2.0, tau, 500),
                           (n - 1) / n * tau, atol=1e-12)
        assert np.allclose(thresholds_ring(n, 2.0, tau, 5000),
                           (n - 1) / n * tau, atol=1e-12)
        r = analytic.star_ratio(n, 2.0)
        assert np.allclose(thresholds_star(n, 2.0, tau, 500),
                           r / (1 + r) * tau, atol=1e-12)


def test_thresholds_star_consensus_at_sqrt():
    n = 5
    theta = thresholds_star(n, 2.0, 0.5, 1)  # beta = sqrt(n-1) = 2
    assert theta[0] == pytest.approx(1 / 3, abs=1e-15)
    assert np.allclose(theta, theta[0], atol=1e-15)


def test_thresholds_match_iteration():
    from threshold_cascade.graph import build_complete, build_star
    for builder, fn, n in ((build_complete, thresholds_complete, 5),
                           (build_star, thresholds_star, 9),
                           (build_ring, thresholds_ring, 11)):
        g = builder(n)
        beta, tau = 2.3, 0.45
        m = InfluenceMatrices.build(g, beta, ActivityMode.WAL)
        theta = np.full(n, tau)
        theta[0] = 0.0
        for t in range(60):
            assert np.allclose(theta, fn(n, beta, tau, t), atol=1e-12)
            theta = m.f @ theta


def test_thresholds_ring_even_n_rejected():
    with pytest.raises(UnsupportedRegimeError):
        thresholds_ring(6, 2.0, 0.5, 1)


def test_thresholds_ring_symmetry():
    n = 21
    theta = thresholds_ring(n, 3.0, 0.6, 17)
    for i in range(1, n):
        assert theta[i] == pytest.approx(theta[n - i], abs=1e-14)


def test_q0_exact():
    assert compute_q(5, 2.0, 0) == pytest.approx(0.4, abs=0)
    for n in (5, 21):
        for beta in (1.0, 2.0, 7.5):
            assert compute_q(n, beta, 0) == (n - 1) / (n * beta)


def brute_force_q(n, beta, j, t_max=10_000):
    h = (n - 1) // 2
    lam = analytic.ring_eigenvalues(n, beta)
    k = np.arange(1, h + 1)
    c = np.cos(j * k * 2 * np.pi / n)
    best = (n - 1) / n
    for t in range(t_max):
        best = min(best, (n - 1) / n - 2 / n * float(c @ lam**t))
    return best


def test_q_matches_brute_force():
    for n, beta, j in ((5, 2.0, 1), (5, 1.3, 1), (21, 2.0, 3), (21, 9.0, 5)):
        assert compute_q(n, beta, j) == pytest.approx(
            brute_force_q(n, beta, j), abs=1e-12)


def test_q1_strictly_below_limit():
    assert compute_q(5, 2.0, 1) < 4 / 5


def test_q_bounds_and_errors():
    for j in range(1, 6):
        assert compute_q(21, 2.0, j) <= 20 / 21
    with pytest.raises(UnsupportedRegimeError):
        compute_q(5, 0.5, 1)
    with pytest.raises(UnsupportedRegimeError):
        compute_q(6, 2.0, 1)
    with pytest.raises(ParameterError):
        compute_q(5, 2.0, 3)


def test_alpha_pattern():
    assert alpha_pattern(5, 1) == (1, 1, 0, 0, 1)
    assert alpha_pattern(9, 2) == (1, 1, 1, 0, 0, 0, 0, 1, 1)
    assert alpha_pattern(5, 0) == (1, 0, 0, 0, 0)
    with pytest.raises(ParameterError):
        alpha_pattern(5, 3)


def test_classify_complete_wal():
    # gamma1(2) = 5/24, gamma2(2) = 5/12 at n=5
    assert classify_complete(5, 2.0, 0.1, ActivityMode.WAL) == ALL_ACTIVE
    assert classify_complete(5, 2.0, 0.3, ActivityMode.WAL) == FROZEN
    assert classify_complete(5, 2.0, 0.5, ActivityMode.WAL) == ALL_INACTIVE
    # beta <= 1: single curve gamma3, tau = gamma3 still active
    g3 = analytic.gamma3(5, 0.5)
    assert classify_complete(5, 0.5, g3, ActivityMode.WAL) == ALL_ACTIVE
    assert classify_complete(5, 0.5, g3 + 1e-6, ActivityMode.WAL) == ALL_INACTIVE


def test_classify_complete_ual():
    assert classify_complete(5, 3.0, 0.25, ActivityMode.UAL) == FROZEN
    assert classify_complete(5, 3.0, 0.2, ActivityMode.UAL) == ALL_ACTIVE
    assert classify_complete(5, 3.0, 0.3, ActivityMode.UAL) == ALL_INACTIVE
    e = analytic.eta(5, 0.5)
    assert classify_complete(5, 0.5, e, ActivityMode.UAL) == ALL_ACTIVE
    assert classify_complete(5, 0.5, e + 1e-6, ActivityMode.UAL) == ALL_INACTIVE


def test_classify_complete_boundary_band():
    g1 = analytic.gamma1(5, 2.0)
    assert classify_complete(5, 2.0, g1 + 1e-11, ActivityMode.WAL) == BOUNDARY


def test_classify_star_wal():
    assert classify_star(5, 0.5, 0.8, ActivityMode.WAL) == OSCILLATING2
    # n=20, beta=10 > sqrt(19): frozen strip between delta1 and delta2
    d1, d2 = analytic.delta1(20, 10.0), analytic.delta2(20, 10.0)
    assert classify_star(20, 10.0, (d1 + d2) / 2, ActivityMode.WAL) == FROZEN
    assert classify_star(20, 10.0, d1 / 2, ActivityMode.WAL) == ALL_ACTIVE
    assert classify_star(20, 10.0, d2 + 0.01, ActivityMode.WAL) == ALL_INACTIVE


def test_classify_star_ual_floor():
    for n in (5, 20, 53):
        for beta in (0.5, 2.0, 9.0):
            assert classify_star(n, beta, 0.4, ActivityMode.UAL) == ALL_ACTIVE


def test_classify_star_beta_below_one_bands():
    d1, d3 = analytic.delta1(5, 0.5), analytic.delta3(5, 0.5)
    assert classify_star(5, 0.5, d3, ActivityMode.WAL) == ALL_ACTIVE
    assert classify_star(5, 0.5, min(d1, 0.999), ActivityMode.WAL) == OSCILLATING2


def test_classify_ring_wal():
    assert classify_ring(5, 2.0, 0.2, ActivityMode.WAL) == ALL_ACTIVE
    edges = ring_region_edges(5, 2.0, ActivityMode.WAL)
    mid_alpha1 = (edges[2] + edges[1]) / 2
    assert classify_ring(5, 2.0, mid_alpha1, ActivityMode.WAL) == \
        RegionLabel(RegionKind.ALPHA, 1)
    mid_frozen = (edges[1] + edges[0]) / 2
    assert classify_ring(5, 2.0, mid_frozen, ActivityMode.WAL) == FROZEN
    assert classify_ring(5, 2.0, 0.9, ActivityMode.WAL) == ALL_INACTIVE


def test_classify_ring_ual():
    # all-active up to n/(3(n-1)) = 5/12
    assert classify_ring(5, 4.0, 0.3, ActivityMode.UAL) == ALL_ACTIVE
    assert classify_ring(5, 4.0, 0.9, ActivityMode.UAL) == ALL_INACTIVE


def test_classify_ring_rejects_unsupported():
    with pytest.raises(UnsupportedRegimeError):
        classify_ring(6, 2.0, 0.5, ActivityMode.WAL)
    with pytest.raises(UnsupportedRegimeError):
        classify_ring(5, 0.5, 0.5, ActivityMode.WAL)


def test_ring_edges_ordered():
    for n in (5, 21):
        for beta in (1.0, 2.0, 8.0):
            for mode in ActivityMode:
                edges = ring_region_edges(n, beta, mode)
                # the all-active edge is the smallest; alpha brackets nest
                assert edges[-1] == min(edges)
                assert all(e > 0 for e in edges)


def test_outcome_to_region():
    from threshold_cascade.dynamics import OutcomeClass, OutcomeKind
    assert analytic.outcome_to_region(
        OutcomeClass(kind=OutcomeKind.ALL_ACTIVE), 5) == ALL_ACTIVE
    assert analytic.outcome_to_region(
        OutcomeClass(kind=OutcomeKind.FIXED_PATTERN,
                     pattern=(1, 1, 0, 0, 1)), 5) == \
        RegionLabel(RegionKind.ALPHA, 1)
    assert analytic.outcome_to_region(
        OutcomeClass(kind=OutcomeKind.INDETERMINATE, reason="budget"), 5) is None
    osc = OutcomeClass(kind=OutcomeKind.PERIODIC, period=2,
                       patterns=((1, 0, 0, 0, 0), (0, 1, 1, 1, 1)))
    assert analytic.outcome_to_region(osc, 5) == OSCILLATING2


def test_region_label_text():
    assert ALL_ACTIVE.label() == "AllActive"
    assert RegionLabel(RegionKind.ALPHA, 3).label() == "Alpha(3)"
