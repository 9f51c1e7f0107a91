"""Closed-form threshold trajectories and asymptotic classifiers.

Covers the three analyzed topologies (complete, star with the radical at
the center, odd ring).  These results are independent of the simulator and
serve as its oracle: the threshold trajectories come from the spectral
structure of the weight matrix, the classifiers from the region curves in
the (beta, tau) plane plus, for the star graph, first-violation times of
the underlying threshold inequalities.

Comparisons that land within ``eps_margin`` of a region curve (without
being exact in floating point) are reported as Boundary rather than
forced onto one side.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import sqrt

import numpy as np

from .errors import ParameterError, UnsupportedRegimeError
from .weights import ActivityMode

logger = logging.getLogger(__name__)

DEFAULT_EPS_MARGIN = 1e-9

_SCAN_DECAY_TOL = 1e-18
_SCAN_CAP = 100_000
_Q_DECAY_TOL = 1e-15


# ---------------------------------------------------------------------------
# Region curves and spectral scalars


def lambda_complete(n: int, beta: float) -> float:
    """Second eigenvalue of the complete-graph weight matrix."""
    return (beta - 1.0) / (beta + n - 1.0)


def lambda_star(n: int, beta: float) -> float:
    """Second eigenvalue of the reduced star-graph threshold system."""
    return beta * (2.0 * beta + n) / ((beta + 1.0) * (beta + n - 1.0)) - 1.0


def star_ratio(n: int, beta: float) -> float:
    """Weight ratio r between ordinary and radical agents in the star limit."""
    return (n - 1.0) * (beta + 1.0) / (beta + n - 1.0)


def gamma1(n: int, beta: float) -> float:
    return n / (n - 1.0) / (beta + n - 1.0)


def gamma2(n: int, beta: float) -> float:
    return n / (n - 1.0) * beta / (beta + n - 1.0)


def gamma3(n: int, beta: float) -> float:
    return 1.0 / (beta + n - 2.0)


def eta(n: int, beta: float) -> float:
    return (beta + n - 1.0) / (n * (beta + n - 2.0))


def delta1(n: int, beta: float) -> float:
    return (n * beta + 2.0 * (n - 1.0)) / ((n - 1.0) * (beta + 1.0) ** 2)


def delta2(n: int, beta: float) -> float:
    return beta * (beta + 1.0) / (beta + n - 1.0) * delta1(n, beta)


def delta3(n: int, beta: float) -> float:
    return beta * delta1(n, beta)


def mu(n: int, beta: float) -> float:
    return (n * beta + 2.0 * (n - 1.0)) / (2.0 * (n - 1.0) * (beta + 1.0))


def ring_eigenvalues(n: int, beta: float) -> np.ndarray:
    """Eigenvalues lambda_k, k = 1..h, of the odd-ring weight matrix."""
    h = (n - 1) // 2
    k = np.arange(1, h + 1)
    return (beta + 2.0 * np.cos(2.0 * np.pi * k / n)) / (beta + 2.0)


# ---------------------------------------------------------------------------
# Closed-form threshold trajectories


def _check_params(n: int, beta: float, tau: float, t: int, n_min: int = 2) -> None:
    if n < n_min:
        raise ParameterError(f"n must be >= {n_min}, got {n}")
    if beta <= 0:
        raise ParameterError(f"beta must be positive, got {beta}")
    if not 0 < tau < 1:
        raise ParameterError(f"tau must be in (0, 1), got {tau}")
    if t < 0:
        raise ParameterError(f"t must be >= 0, got {t}")


def thresholds_complete(n: int, beta: float, tau: float, t: int) -> np.ndarray:
    """Threshold vector at step t on the complete graph (radical at index 0)."""
    _check_params(n, beta, tau, t)
    lam_t = lambda_complete(n, beta) ** t
    base = (n - 1.0) / n * tau
    theta = np.full(n, base * (1.0 + lam_t / (n - 1.0)))
    theta[0] = base * (1.0 - lam_t)
    return theta


def thresholds_star(n: int, beta: float, tau: float, t: int) -> np.ndarray:
    """Threshold vector at step t on the star graph (radical at the center)."""
    _check_params(n, beta, tau, t)
    r = star_ratio(n, beta)
    lam_t = lambda_star(n, beta) ** t
    base = r / (1.0 + r) * tau
    theta = np.full(n, base * (1.0 + lam_t / r))
    theta[0] = base * (1.0 - lam_t)
    return theta


def thresholds_ring(n: int, beta: float, tau: float, t: int) -> np.ndarray:
    """Threshold vector at step t on the odd ring (radical at index 0)."""
    _check_params(n, beta, tau, t, n_min=3)
    if n % 2 == 0:
        raise UnsupportedRegimeError(f"ring closed form requires odd n, got {n}")
    h = (n - 1) // 2
    k = np.arange(1, h + 1)
    lam_t = ring_eigenvalues(n, beta) ** t
    l = np.arange(n)
    # v_k has entries (2/n) cos(l k 2 pi / n)
    v = (2.0 / n) * np.cos(np.outer(l, k) * (2.0 * np.pi / n))
    return (n - 1.0) / n * tau - tau * (v @ lam_t)


# ---------------------------------------------------------------------------
# Ring infimum coefficients q_j


@lru_cache(maxsize=4096)
def _ring_q_all(n: int, beta: float, decay_tol: float = _Q_DECAY_TOL) -> tuple[float, ...]:
    """q_j for j = 0..h on the odd ring, beta >= 1.

    q_0 is exact; for j >= 1 the bracketed expression is scanned over t until
    the spectral powers decay below ``decay_tol``, then compared against the
    asymptotic value (n-1)/n.
    """
    h = (n - 1) // 2
    lam = ring_eigenvalues(n, beta)
    k = np.arange(1, h + 1)
    j = np.arange(1, h + 1)
    c = np.cos(np.outer(j, k) * (2.0 * np.pi / n))  # c[j-1, k-1]
    limit = (n - 1.0) / n
    best = np.full(h, np.inf)
    lam_t = np.ones(h)
    for _ in range(_SCAN_CAP):
        vals = limit - (2.0 / n) * (c @ lam_t)
        np.minimum(best, vals, out=best)
        lam_t *= lam
        if np.max(np.abs(lam_t)) < decay_tol:
            break
    np.minimum(best, limit, out=best)
    q0 = (n - 1.0) / (n * beta)
    return (q0, *best.tolist())


def compute_q(n: int, beta: float, j: int, t_cap_tol: float = _Q_DECAY_TOL) -> float:
    """Infimum coefficient q_j(beta) of the ring classifier, beta >= 1."""
    if n < 3 or n % 2 == 0:
        raise UnsupportedRegimeError(f"q_j requires odd n >= 3, got {n}")
    if beta < 1.0:
        raise UnsupportedRegimeError(f"q_j requires beta >= 1, got {beta}")
    h = (n - 1) // 2
    if not 0 <= j <= h:
        raise ParameterError(f"j must be in 0..{h}, got {j}")
    return _ring_q_all(n, beta, t_cap_tol)[j]


# ---------------------------------------------------------------------------
# Region labels


class RegionKind(enum.Enum):
    ALL_ACTIVE = "AllActive"
    ALL_INACTIVE = "AllInactive"
    FROZEN = "Frozen"
    ALPHA = "Alpha"
    OSCILLATING2 = "Oscillating2"
    BOUNDARY = "Boundary"


@dataclass(frozen=True)
class RegionLabel:
    kind: RegionKind
    j: int | None = None

    def label(self) -> str:
        if self.kind is RegionKind.ALPHA:
            return f"Alpha({self.j})"
        return self.kind.value


ALL_ACTIVE = RegionLabel(RegionKind.ALL_ACTIVE)
ALL_INACTIVE = RegionLabel(RegionKind.ALL_INACTIVE)
FROZEN = RegionLabel(RegionKind.FROZEN)
OSCILLATING2 = RegionLabel(RegionKind.OSCILLATING2)
BOUNDARY = RegionLabel(RegionKind.BOUNDARY)


def alpha_pattern(n: int, j: int) -> tuple[int, ...]:
    """Fixed ring pattern: j+1 leading ones, zeros, then j trailing ones."""
    if not 0 <= j <= (n - 1) // 2:
        raise ParameterError(f"alpha index j must be in 0..{(n - 1) // 2}, got {j}")
    bits = [0] * n
    for i in range(j + 1):
        bits[i] = 1
    for i in range(n - j, n):
        bits[i] = 1
    return tuple(bits)


def _near(tau: float, curve: float, eps: float) -> bool:
    return tau != curve and abs(tau - curve) < eps


# ---------------------------------------------------------------------------
# Complete graph classifier


def classify_complete(n: int, beta: float, tau: float, mode: ActivityMode,
                      eps_margin: float = DEFAULT_EPS_MARGIN) -> RegionLabel:
    _check_params(n, beta, tau, 0)
    if mode is ActivityMode.WAL:
        if beta > 1.0:
            g1, g2 = gamma1(n, beta), gamma2(n, beta)
            if _near(tau, g1, eps_margin) or _near(tau, g2, eps_margin):
                return BOUNDARY
            if tau < g1:
                return ALL_ACTIVE
            if tau > g2:
                return ALL_INACTIVE
            return FROZEN
        g3 = gamma3(n, beta)
        if _near(tau, g3, eps_margin):
            return BOUNDARY
        return ALL_ACTIVE if tau <= g3 else ALL_INACTIVE
    # UAL
    if beta > 1.0:
        pivot = 1.0 / (n - 1.0)
        if _near(tau, pivot, eps_margin):
            return BOUNDARY
        if tau < pivot:
            return ALL_ACTIVE
        if tau > pivot:
            return ALL_INACTIVE
        return FROZEN
    e = eta(n, beta)
    if _near(tau, e, eps_margin):
        return BOUNDARY
    return ALL_ACTIVE if tau <= e else ALL_INACTIVE


# ---------------------------------------------------------------------------
# Star graph classifier


def _star_theta_ordinary(n: int, beta: float, tau: float):
    """Closed-form theta of an ordinary star agent as a function of t."""
    r = star_ratio(n, beta)
    lam = lambda_star(n, beta)
    limit = r / (1.0 + r) * tau
    return lam, limit, lambda lam_t: limit * (1.0 + lam_t / r)


def _first_violation_parity(n: int, beta: float, tau: float,
                            eps_margin: float) -> RegionLabel:
    """Star WAL, 1 <= beta <= sqrt(n-1): race between the even-step and
    odd-step threshold inequalities of the oscillating transient.

    The ordinary agents' threshold must stay above beta/(beta+1) at even
    steps and at or below 1/(beta+1) at odd steps for the oscillation to
    continue; the parity of the first violated step decides the outcome.
    """
    lam, limit, theta2 = _star_theta_ordinary(n, beta, tau)
    c_even = beta / (beta + 1.0)
    c_odd = 1.0 / (beta + 1.0)
    lam_t = lam  # lambda_s^t starting at t = 1
    for t in range(1, _SCAN_CAP):
        val = theta2(lam_t)
        if t % 2 == 0 and val <= c_even:
            return BOUNDARY if c_even - val < eps_margin else ALL_ACTIVE
        if t % 2 == 1 and val > c_odd:
            return BOUNDARY if val - c_odd < eps_margin else ALL_INACTIVE
        lam_t *= lam
        if abs(lam_t) < _SCAN_DECAY_TOL:
            break
    # spectral term exhausted: decide by the limit
    if abs(limit - c_even) < eps_margin or abs(limit - c_odd) < eps_margin:
        return BOUNDARY
    if limit < c_even:
        return ALL_ACTIVE
    if limit > c_odd:
        return ALL_INACTIVE
    return BOUNDARY


def _first_violation_ual(n: int, beta: float, tau: float,
                         eps_margin: float) -> RegionLabel:
    """Star UAL, beta >= sqrt(n-1): race between the radical's threshold
    exceeding 1/n and the ordinary agents' threshold dropping to 1/2."""
    r = star_ratio(n, beta)
    lam = lambda_star(n, beta)
    limit = r / (1.0 + r) * tau
    lam_t = lam
    t0 = None  # first t with theta_radical(t) > 1/n  (radical turns off)
    t1 = None  # first t with theta_ordinary(t) <= 1/2  (ordinary turn on)
    margin = np.inf
    for t in range(1, _SCAN_CAP):
        th1 = limit * (1.0 - lam_t)
        th2 = limit * (1.0 + lam_t / r)
        if t0 is None and th1 > 1.0 / n:
            t0 = t
            margin = min(margin, th1 - 1.0 / n)
        if t1 is None and th2 <= 0.5:
            t1 = t
            margin = min(margin, 0.5 - th2)
        if t0 is not None and t1 is not None:
            break
        lam_t *= lam
        if abs(lam_t) < _SCAN_DECAY_TOL:
            break
    if t0 is None and abs(limit - 1.0 / n) < eps_margin:
        return BOUNDARY
    if t1 is None and abs(limit - 0.5) < eps_margin:
        return BOUNDARY
    if t0 is None:
        t0 = _SCAN_CAP + 1
    if t1 is None:
        t1 = _SCAN_CAP + 1
    if t0 == t1 == _SCAN_CAP + 1:
        return BOUNDARY
    if margin < eps_margin:
        return BOUNDARY
    return ALL_ACTIVE if t0 >= t1 else ALL_INACTIVE


def classify_star(n: int, beta: float, tau: float, mode: ActivityMode,
                  eps_margin: float = DEFAULT_EPS_MARGIN) -> RegionLabel:
    _check_params(n, beta, tau, 0)
    s = sqrt(n - 1.0)
    if mode is ActivityMode.WAL:
        if beta > s:
            d1, d2 = delta1(n, beta), delta2(n, beta)
            if _near(tau, d1, eps_margin) or _near(tau, d2, eps_margin):
                return BOUNDARY
            if tau < d1:
                return ALL_ACTIVE
            if tau > d2:
                return ALL_INACTIVE
            return FROZEN
        if beta >= 1.0:
            lo = beta / (n - 1.0)
            hi = 1.0 / beta
            if _near(tau, lo, eps_margin) or _near(tau, hi, eps_margin):
                return BOUNDARY
            if tau <= lo:
                return ALL_ACTIVE
            if tau > hi:
                return ALL_INACTIVE
            return _first_violation_parity(n, beta, tau, eps_margin)
        d1, d3 = delta1(n, beta), delta3(n, beta)
        if _near(tau, d1, eps_margin) or _near(tau, d3, eps_margin):
            return BOUNDARY
        if tau <= d3:
            return ALL_ACTIVE
        if tau > d1:
            return ALL_INACTIVE
        return OSCILLATING2
    # UAL
    if beta >= s:
        c1 = (beta + n - 1.0) / (n * (n - 1.0))
        c2 = (beta + 1.0) / (2.0 * beta)
        if _near(tau, c1, eps_margin) or _near(tau, c2, eps_margin):
            return BOUNDARY
        if tau <= min(c1, c2):
            return ALL_ACTIVE
        if tau > max(c1, c2):
            return ALL_INACTIVE
        return _first_violation_ual(n, beta, tau, eps_margin)
    m = mu(n, beta)
    if _near(tau, m, eps_margin):
        return BOUNDARY
    if tau < m:
        return ALL_ACTIVE
    if tau > m:
        return ALL_INACTIVE
    return OSCILLATING2


# ---------------------------------------------------------------------------
# Ring graph classifier


def ring_region_edges(n: int, beta: float, mode: ActivityMode) -> list[float]:
    """Upper tau edges of the ring regions: edges[j] bounds the alpha_j
    bracket from above (j = 0..hbar); edges[hbar+1] is the all-active bound."""
    hbar = ((n - 1) // 2) // 2
    scale = (beta + 2.0) if mode is ActivityMode.WAL else 3.0
    qs = [compute_q(n, beta, j) for j in range(hbar + 1)]
    qs.append((n - 1.0) / n)  # asymptotic value past the attained infima
    return [1.0 / (scale * q) for q in qs]


def classify_ring(n: int, beta: float, tau: float, mode: ActivityMode,
                  eps_margin: float = DEFAULT_EPS_MARGIN,
                  simulation_fallback: bool = True) -> RegionLabel:
    _check_params(n, beta, tau, 0, n_min=5)
    if n % 2 == 0:
        raise UnsupportedRegimeError(f"ring classifier requires odd n, got {n}")
    if beta < 1.0:
        raise UnsupportedRegimeError(f"ring classifier requires beta >= 1, got {beta}")
    hbar = ((n - 1) // 2) // 2
    edges = ring_region_edges(n, beta, mode)
    for e in edges:
        if _near(tau, e, eps_margin):
            return BOUNDARY
    if tau <= edges[hbar + 1]:
        return ALL_ACTIVE
    j_min = 0 if mode is ActivityMode.WAL else 1
    for j in range(hbar, j_min - 1, -1):
        if edges[j + 1] <= tau <= edges[j]:
            return FROZEN if j == 0 else RegionLabel(RegionKind.ALPHA, j)
    if mode is ActivityMode.WAL:
        inactive_floor = max(edges[0], edges[1])
    else:
        # Matching the proof (the radical's activity level is 1/3 while the
        # first switching never occurs), not the looser stated constant.
        inactive_floor = edges[1]
    if tau > inactive_floor:
        return ALL_INACTIVE
    if simulation_fallback:
        logger.warning("ring cell (n=%d, beta=%g, tau=%g, %s) not covered by the "
                       "region brackets; falling back to simulation",
                       n, beta, tau, mode.value)
        return _simulate_ring_cell(n, beta, tau, mode)
    return BOUNDARY


def _simulate_ring_cell(n: int, beta: float, tau: float,
                        mode: ActivityMode) -> RegionLabel:
    from . import dynamics
    from .graph import build_ring

    config = dynamics.ModelConfig(graph=build_ring(n), beta=beta, tau=tau, mode=mode)
    outcome = dynamics.classify(dynamics.simulate(config, keep_states=False))
    mapped = outcome_to_region(outcome, n)
    return mapped if mapped is not None else BOUNDARY


# ---------------------------------------------------------------------------
# Outcome/region correspondence


def outcome_to_region(outcome, n: int) -> RegionLabel | None:
    """Map a simulated outcome onto the analytic taxonomy; None if flagged."""
    from .dynamics import OutcomeKind

    if outcome.kind is OutcomeKind.INDETERMINATE:
        return None
    if outcome.kind is OutcomeKind.ALL_ACTIVE:
        return ALL_ACTIVE
    if outcome.kind is OutcomeKind.ALL_INACTIVE:
        return ALL_INACTIVE
    if outcome.kind is OutcomeKind.FROZEN:
        return FROZEN
    if outcome.kind is OutcomeKind.FIXED_PATTERN:
        for j in range(1, (n - 1) // 2 + 1):
            if outcome.pattern == alpha_pattern(n, j):
                return RegionLabel(RegionKind.ALPHA, j)
        return None
    if outcome.kind is OutcomeKind.PERIODIC:
        radical_only = tuple(1 if i == 0 else 0 for i in range(n))
        complement = tuple(0 if i == 0 else 1 for i in range(n))
        if outcome.period == 2 and set(outcome.patterns) == {radical_only, complement}:
            return OSCILLATING2
        return None
    return None
