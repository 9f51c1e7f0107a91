"""Coupled threshold/activity dynamics: iteration, certification, classification.

Update rule per step::

    theta' = F theta
    p'     = G a
    a'_i   = 1  iff  p'_i >= theta'_i  and  p'_i > 0

The p > 0 override is applied componentwise, which makes the all-inactive
state absorbing agent by agent.  Simulation terminates with a certificate:
once the thresholds are within ``eps_theta`` of their consensus limit the
set of reachable activity-level vectors is finite, so a repeated action
vector proves absorption or a cycle, provided every comparison margin
stays above ``eps_margin``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import NumericError, ParameterError
from .graph import Graph
from .weights import ActivityMode, InfluenceMatrices

DEFAULT_BUDGET = 100_000
DEFAULT_EPS_THETA = 1e-12
DEFAULT_EPS_MARGIN = 1e-9

_PERRON_RESIDUAL = 1e-14
_PERRON_MAX_ITER = 5_000_000


@dataclass(frozen=True)
class ModelConfig:
    graph: Graph
    beta: float
    tau: float
    mode: ActivityMode
    radicals: frozenset[int] = frozenset({0})

    def __post_init__(self):
        if not 0 < self.tau < 1:
            raise ParameterError(f"tau must be in (0, 1), got {self.tau}")
        if self.beta <= 0:
            raise ParameterError(f"beta must be positive, got {self.beta}")
        if not self.radicals:
            raise ParameterError("radical set must be nonempty")
        if not all(0 <= i < self.graph.n for i in self.radicals):
            raise ParameterError(f"radical indices out of range 0..{self.graph.n - 1}")

    def matrices(self) -> InfluenceMatrices:
        return InfluenceMatrices.build(self.graph, self.beta, self.mode)


@dataclass
class SimState:
    t: int
    theta: np.ndarray
    p: np.ndarray
    a: np.ndarray  # float vector of 0.0/1.0

    def action_bits(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.a)


class Termination(enum.Enum):
    ABSORBED = "absorbed"
    PERIODIC = "periodic"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass
class Trajectory:
    states: list[SimState]
    termination: Termination
    final_action: np.ndarray
    initial_action: np.ndarray
    absorbed_at: int | None = None       # step at which the final pattern last changed into place
    cycle_start: int | None = None
    period: int = 0
    patterns: list[np.ndarray] = field(default_factory=list)
    certified: bool = True
    flag_reason: str | None = None
    steps_run: int = 0


class OutcomeKind(enum.Enum):
    ALL_ACTIVE = "AllActive"
    ALL_INACTIVE = "AllInactive"
    FROZEN = "Frozen"
    FIXED_PATTERN = "FixedPattern"
    PERIODIC = "Periodic"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class OutcomeClass:
    kind: OutcomeKind
    pattern: tuple[int, ...] | None = None
    period: int = 0
    patterns: tuple[tuple[int, ...], ...] = ()
    reason: str | None = None

    def label(self) -> str:
        if self.kind is OutcomeKind.FIXED_PATTERN:
            return f"FixedPattern({''.join(map(str, self.pattern))})"
        if self.kind is OutcomeKind.PERIODIC:
            return f"Periodic({self.period})"
        if self.kind is OutcomeKind.INDETERMINATE:
            return f"Indeterminate({self.reason})"
        return self.kind.value


def initial_state(config: ModelConfig) -> SimState:
    """Radicals start with threshold 0 and action 1; ordinary agents with
    threshold tau and action 0.  p at t=0 is a placeholder, never consulted."""
    n = config.graph.n
    theta = np.full(n, config.tau)
    a = np.zeros(n)
    for i in config.radicals:
        theta[i] = 0.0
        a[i] = 1.0
    return SimState(t=0, theta=theta, p=np.zeros(n), a=a)


def step(state: SimState, m: InfluenceMatrices) -> SimState:
    """One synchronous update of (theta, p, a)."""
    theta = m.f @ state.theta
    p = m.g @ state.a
    a = ((p >= theta) & (p > 0.0)).astype(float)
    return SimState(t=state.t + 1, theta=theta, p=p, a=a)


@lru_cache(maxsize=4096)
def _perron_vector_cached(graph: Graph, beta: float) -> np.ndarray:
    f = InfluenceMatrices.build(graph, beta, ActivityMode.WAL).f
    ft = np.ascontiguousarray(f.T)
    pi = np.full(graph.n, 1.0 / graph.n)
    for _ in range(_PERRON_MAX_ITER):
        nxt = ft @ pi
        nxt /= nxt.sum()
        if np.max(np.abs(nxt - pi)) < _PERRON_RESIDUAL:
            pi = nxt
            break
        pi = nxt
    else:
        raise NumericError("power iteration for the Perron vector did not converge")
    pi.setflags(write=False)
    return pi


def perron_vector(m: InfluenceMatrices) -> np.ndarray:
    """Left Perron vector of F (pi' F = pi', pi >= 0, sum 1) by power iteration."""
    return _perron_vector_cached(m.graph, m.beta)


def threshold_limit(m: InfluenceMatrices, theta0: np.ndarray) -> np.ndarray:
    """Consensus limit of the threshold iteration: (pi' theta0) * ones."""
    pi = perron_vector(m)
    return np.full(m.graph.n, float(pi @ theta0))


def simulate(config: ModelConfig,
             budget: int = DEFAULT_BUDGET,
             eps_theta: float = DEFAULT_EPS_THETA,
             eps_margin: float = DEFAULT_EPS_MARGIN,
             keep_states: bool = True) -> Trajectory:
    """Iterate the dynamics until a certified absorption/cycle or budget end.

    The all-active and all-inactive states are absorbing for any thresholds,
    so reaching either terminates immediately.  Any other repetition is only
    certified once the thresholds are inside the ``eps_theta`` consensus band;
    if a comparison margin inside the band falls below ``eps_margin`` the
    trajectory is flagged rather than silently classified.
    """
    if budget < 1:
        raise ParameterError(f"budget must be >= 1, got {budget}")
    if eps_theta <= 0 or eps_margin <= 0:
        raise ParameterError("tolerances must be positive")

    m = config.matrices()
    n = config.graph.n
    state = initial_state(config)
    states = [state] if keep_states else []
    theta_inf = threshold_limit(m, state.theta)

    initial_action = state.a.copy()
    last_change = 0
    in_band = False
    min_margin = np.inf
    seen: dict[bytes, int] = {}
    band_actions: list[tuple[int, np.ndarray]] = []
    prev_a = state.a

    for _ in range(budget):
        state = step(state, m)
        if keep_states:
            states.append(state)
        if not np.array_equal(state.a, prev_a):
            last_change = state.t
        prev_a = state.a

        n_active = state.a.sum()
        if n_active == 0.0 or n_active == n:
            return Trajectory(
                states=states, termination=Termination.ABSORBED,
                final_action=state.a.copy(), initial_action=initial_action,
                absorbed_at=last_change, patterns=[state.a.copy()],
                certified=True, steps_run=state.t)

        if not in_band and np.max(np.abs(state.theta - theta_inf)) < eps_theta:
            in_band = True
        if in_band:
            active_cmp = state.p > 0.0
            if np.any(active_cmp):
                margin = np.min(np.abs(state.p[active_cmp] - state.theta[active_cmp]))
                min_margin = min(min_margin, margin)
            key = state.a.tobytes()
            if key in seen:
                t0 = seen[key]
                period = state.t - t0
                certified = min_margin >= eps_margin
                reason = None if certified else "margin"
                if period == 1:
                    return Trajectory(
                        states=states, termination=Termination.ABSORBED,
                        final_action=state.a.copy(), initial_action=initial_action,
                        absorbed_at=last_change, patterns=[state.a.copy()],
                        certified=certified, flag_reason=reason, steps_run=state.t)
                patterns = [a.copy() for t, a in band_actions if t >= t0]
                return Trajectory(
                    states=states, termination=Termination.PERIODIC,
                    final_action=state.a.copy(), initial_action=initial_action,
                    cycle_start=t0, period=period, patterns=patterns,
                    certified=certified, flag_reason=reason, steps_run=state.t)
            seen[key] = state.t
            band_actions.append((state.t, state.a))

    return Trajectory(
        states=states, termination=Termination.BUDGET_EXHAUSTED,
        final_action=state.a.copy(), initial_action=initial_action,
        certified=False, flag_reason="budget", steps_run=state.t)


def classify(trajectory: Trajectory) -> OutcomeClass:
    """Map a terminated trajectory to its asymptotic outcome class."""
    if trajectory.termination is Termination.BUDGET_EXHAUSTED:
        return OutcomeClass(kind=OutcomeKind.INDETERMINATE, reason="budget")
    if not trajectory.certified:
        return OutcomeClass(kind=OutcomeKind.INDETERMINATE,
                            reason=trajectory.flag_reason or "uncertified")
    if trajectory.termination is Termination.PERIODIC:
        patterns = tuple(tuple(int(x) for x in a) for a in trajectory.patterns)
        return OutcomeClass(kind=OutcomeKind.PERIODIC,
                            period=trajectory.period, patterns=patterns)
    final = trajectory.final_action
    bits = tuple(int(x) for x in final)
    if all(b == 1 for b in bits):
        return OutcomeClass(kind=OutcomeKind.ALL_ACTIVE, pattern=bits)
    if all(b == 0 for b in bits):
        return OutcomeClass(kind=OutcomeKind.ALL_INACTIVE, pattern=bits)
    if np.array_equal(final, trajectory.initial_action):
        return OutcomeClass(kind=OutcomeKind.FROZEN, pattern=bits)
    return OutcomeClass(kind=OutcomeKind.FIXED_PATTERN, pattern=bits)
