"""Phase-diagram grids and ego-network experiments with deterministic CSV output."""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import analytic, dynamics
from .errors import ParameterError, UnsupportedRegimeError
from .graph import Graph, build_complete, build_ring, build_star, load_edge_list
from .weights import ActivityMode


class Engine(enum.Enum):
    SIMULATE = "simulate"
    ANALYTIC = "analytic"
    BOTH = "both"


class Topology(enum.Enum):
    COMPLETE = "complete"
    STAR = "star"
    RING = "ring"
    FILE = "file"


def grid(lo: float, hi: float, count: int) -> list[float]:
    """Evenly spaced grid, value_i = lo + i*(hi-lo)/(count-1)."""
    if count < 1:
        raise ParameterError(f"grid count must be >= 1, got {count}")
    if count == 1:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def cell_centered_grid(lo: float, hi: float, count: int) -> list[float]:
    """Midpoints of an even partition of [lo, hi] into count cells."""
    if count < 1:
        raise ParameterError(f"grid count must be >= 1, got {count}")
    step = (hi - lo) / count
    return [lo + (i + 0.5) * step for i in range(count)]


@dataclass(frozen=True)
class SweepSpec:
    topology: Topology
    mode: ActivityMode
    n: int
    beta_grid: tuple[float, ...]
    tau_grid: tuple[float, ...]
    engine: Engine = Engine.SIMULATE
    graph_path: str | None = None
    budget: int = dynamics.DEFAULT_BUDGET
    eps_theta: float = dynamics.DEFAULT_EPS_THETA
    eps_margin: float = dynamics.DEFAULT_EPS_MARGIN
    jobs: int = 1

    def __post_init__(self):
        for name, g in (("beta", self.beta_grid), ("tau", self.tau_grid)):
            if not g:
                raise ParameterError(f"{name} grid must be nonempty")
            if any(b >= a for a, b in zip(g[1:], g)):
                raise ParameterError(f"{name} grid must be strictly increasing")
        if self.engine is not Engine.SIMULATE and self.topology is Topology.FILE:
            raise ParameterError("analytic engine supports only complete/star/ring")
        if self.topology is Topology.FILE and not self.graph_path:
            raise ParameterError("file topology requires a graph path")


@dataclass
class PhaseCell:
    beta: float
    tau: float
    label: str
    steps: int = -1
    period: int = 0
    agreement: str = "n/a"


def _build_graph(spec: SweepSpec) -> Graph:
    if spec.topology is Topology.COMPLETE:
        return build_complete(spec.n)
    if spec.topology is Topology.STAR:
        return build_star(spec.n)
    if spec.topology is Topology.RING:
        return build_ring(spec.n)
    with open(spec.graph_path, encoding="utf-8") as fh:
        return load_edge_list(fh)


def _analytic_label(spec: SweepSpec, beta: float, tau: float) -> analytic.RegionLabel | str:
    try:
        if spec.topology is Topology.COMPLETE:
            return analytic.classify_complete(spec.n, beta, tau, spec.mode, spec.eps_margin)
        if spec.topology is Topology.STAR:
            return analytic.classify_star(spec.n, beta, tau, spec.mode, spec.eps_margin)
        return analytic.classify_ring(spec.n, beta, tau, spec.mode, spec.eps_margin)
    except UnsupportedRegimeError as exc:
        return f"NA({exc})"


def _evaluate_cell(spec: SweepSpec, graph: Graph, beta: float, tau: float) -> PhaseCell:
    cell = PhaseCell(beta=beta, tau=tau, label="")
    outcome = None
    if spec.engine in (Engine.SIMULATE, Engine.BOTH):
        config = dynamics.ModelConfig(graph=graph, beta=beta, tau=tau, mode=spec.mode)
        traj = dynamics.simulate(config, budget=spec.budget, eps_theta=spec.eps_theta,
                                 eps_margin=spec.eps_margin, keep_states=False)
        outcome = dynamics.classify(traj)
        cell.label = outcome.label()
        cell.period = outcome.period
        if traj.termination is dynamics.Termination.ABSORBED:
            cell.steps = traj.absorbed_at
        elif traj.termination is dynamics.Termination.PERIODIC:
            cell.steps = traj.cycle_start
    if spec.engine in (Engine.ANALYTIC, Engine.BOTH):
        region = _analytic_label(spec, beta, tau)
        if spec.engine is Engine.ANALYTIC:
            cell.label = region if isinstance(region, str) else region.label()
        else:
            if isinstance(region, str):
                cell.agreement = "n/a"
            elif region.kind is analytic.RegionKind.BOUNDARY:
                cell.agreement = "n/a"
            else:
                mapped = analytic.outcome_to_region(outcome, graph.n)
                if mapped is None:
                    cell.agreement = "n/a"
                else:
                    cell.agreement = "match" if mapped == region else "mismatch"
    return cell


def _cell_worker(args) -> PhaseCell:
    spec, graph, beta, tau = args
    return _evaluate_cell(spec, graph, beta, tau)


def phase_diagram(spec: SweepSpec) -> list[PhaseCell]:
    """One PhaseCell per (beta, tau) grid point, in row-major grid order."""
    graph = None
    if spec.engine is not Engine.ANALYTIC:
        graph = _build_graph(spec)
    tasks = [(spec, graph, beta, tau)
             for beta in spec.beta_grid for tau in spec.tau_grid]
    if spec.jobs > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            return list(pool.map(_cell_worker, tasks, chunksize=16))
    return [_cell_worker(task) for task in tasks]


# ---------------------------------------------------------------------------
# Ego-network experiments


@dataclass(frozen=True)
class EgoExperimentSpec:
    graph_path: str
    ego_id: int
    xi: float
    trials: int
    seed: int
    beta_grid: tuple[float, ...]
    tau_grid: tuple[float, ...]
    mode: ActivityMode = ActivityMode.WAL
    budget: int = dynamics.DEFAULT_BUDGET
    eps_theta: float = dynamics.DEFAULT_EPS_THETA
    eps_margin: float = dynamics.DEFAULT_EPS_MARGIN
    jobs: int = 1


@dataclass
class EgoCell:
    beta: float
    tau: float
    mean_active: float
    indeterminate_trials: int = 0


def radical_count(xi: float, n: int) -> int:
    return int(np.floor(xi * n + 0.5))


def draw_radical_sets(spec: EgoExperimentSpec, graph: Graph) -> list[frozenset[int]]:
    """One radical set per trial: the ego plus round(xi*n)-1 others, drawn
    by a counter-based generator keyed on (seed, trial index)."""
    n = graph.n
    ego = graph.index_of(spec.ego_id)
    k = radical_count(spec.xi, n)
    if k < 1:
        raise ParameterError(f"xi={spec.xi} yields zero radicals on n={n}")
    others = [i for i in range(n) if i != ego]
    sets = []
    for trial in range(spec.trials):
        rng = np.random.Generator(np.random.Philox(key=(spec.seed, trial)))
        extra = rng.choice(len(others), size=k - 1, replace=False) if k > 1 else []
        sets.append(frozenset({ego} | {others[i] for i in extra}))
    return sets


def final_active_fraction(traj: dynamics.Trajectory) -> tuple[float, bool]:
    """Active fraction of the certified asymptotic pattern.

    Cycles report the time-average over one period; uncertified trajectories
    report the last observed fraction, flagged.
    """
    n = len(traj.final_action)
    if traj.termination is dynamics.Termination.BUDGET_EXHAUSTED or not traj.certified:
        return float(traj.final_action.sum()) / n, True
    if traj.termination is dynamics.Termination.PERIODIC:
        return float(np.mean([a.sum() for a in traj.patterns])) / n, False
    return float(traj.final_action.sum()) / n, False


def _ego_cell(spec: EgoExperimentSpec, graph: Graph,
              radical_sets: list[frozenset[int]],
              beta: float, tau: float) -> EgoCell:
    fractions = []
    flagged = 0
    for radicals in radical_sets:
        config = dynamics.ModelConfig(graph=graph, beta=beta, tau=tau,
                                      mode=spec.mode, radicals=radicals)
        traj = dynamics.simulate(config, budget=spec.budget,
                                 eps_theta=spec.eps_theta,
                                 eps_margin=spec.eps_margin, keep_states=False)
        frac, is_flagged = final_active_fraction(traj)
        fractions.append(frac)
        flagged += is_flagged
    return EgoCell(beta=beta, tau=tau, mean_active=float(np.mean(fractions)),
                   indeterminate_trials=flagged)


def _ego_worker(args) -> EgoCell:
    return _ego_cell(*args)


def ego_experiment(spec: EgoExperimentSpec) -> list[EgoCell]:
    with open(spec.graph_path, encoding="utf-8") as fh:
        graph = load_edge_list(fh)
    radical_sets = draw_radical_sets(spec, graph)
    tasks = [(spec, graph, radical_sets, beta, tau)
             for beta in spec.beta_grid for tau in spec.tau_grid]
    if spec.jobs > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            return list(pool.map(_ego_worker, tasks, chunksize=4))
    return [_ego_worker(task) for task in tasks]


# ---------------------------------------------------------------------------
# CSV output


def _fmt(x: float) -> str:
    return format(x, ".17g")


def table_to_csv(table: list) -> str:
    """Render a phase or ego table as CSV text (LF newlines)."""
    if table and isinstance(table[0], EgoCell):
        lines = ["beta,tau,mean_active,indeterminate_trials"]
        lines += [f"{_fmt(c.beta)},{_fmt(c.tau)},{_fmt(c.mean_active)},{c.indeterminate_trials}"
                  for c in table]
    else:
        lines = ["beta,tau,label,steps,period,agreement"]
        lines += [f"{_fmt(c.beta)},{_fmt(c.tau)},{c.label},{c.steps},{c.period},{c.agreement}"
                  for c in table]
    return "\n".join(lines) + "\n"


def write_csv(table: list, destination: str | Path) -> None:
    path = Path(destination)
    try:
        path.write_text(table_to_csv(table), encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OSError(f"cannot write table to {path}: {exc}") from exc
