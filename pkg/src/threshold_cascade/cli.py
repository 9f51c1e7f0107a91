"""Command-line front end: simulate, classify, sweep, ego, dump-weights."""

from __future__ import annotations

import argparse
import os
import sys


from . import analytic, dynamics, sweep
from .errors import ParameterError, ThresholdCascadeError
from .graph import build_complete, build_ring, build_star, load_edge_list
from .weights import ActivityMode, InfluenceMatrices

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2

JOBS_ENV = "THRESHOLD_CASCADE_JOBS"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _parse_grid(text: str) -> tuple[float, ...]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ParameterError(f"grid must be lo:hi:count, got {text!r}")
    lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    return tuple(sweep.grid(lo, hi, count))


def _default_jobs() -> int:
    env = os.environ.get(JOBS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _build_graph(args):
    if args.topology == "file":
        if not args.graph:
            raise ParameterError("--topology file requires --graph PATH")
        with open(args.graph, encoding="utf-8") as fh:
            return load_edge_list(fh)
    builders = {"complete": build_complete, "star": build_star, "ring": build_ring}
    if args.n is None:
        raise ParameterError("--n is required for generated topologies")
    return builders[args.topology](args.n)


def _add_model_flags(p, needs_tau=True):
    p.add_argument("--topology", required=True,
                   choices=["complete", "star", "ring", "file"])
    p.add_argument("--graph", help="edge-list file for --topology file")
    p.add_argument("--n", type=int)
    p.add_argument("--beta", type=float, required=True)
    if needs_tau:
        p.add_argument("--tau", type=float, required=True)
    p.add_argument("--mode", required=True, choices=["wal", "ual"])


def build_parser() -> _Parser:
    parser = _Parser(prog="threshold-cascade",
                     description="Dynamic threshold models of collective action "
                                 "on social networks")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("simulate", help="run one simulation and classify it")
    _add_model_flags(p)
    p.add_argument("--radicals", help="comma-separated agent indices, default 0")
    p.add_argument("--budget", type=int, default=dynamics.DEFAULT_BUDGET)
    p.add_argument("--trace", action="store_true",
                   help="dump one tab-separated line per step: t, theta, p, a")

    p = sub.add_parser("classify", help="analytic classification of one cell")
    _add_model_flags(p)

    p = sub.add_parser("sweep", help="phase-diagram grid to CSV")
    p.add_argument("--topology", required=True,
                   choices=["complete", "star", "ring", "file"])
    p.add_argument("--graph")
    p.add_argument("--n", type=int)
    p.add_argument("--mode", required=True, choices=["wal", "ual"])
    p.add_argument("--beta", required=True, help="grid lo:hi:count")
    p.add_argument("--tau", required=True, help="grid lo:hi:count")
    p.add_argument("--engine", default="simulate",
                   choices=["simulate", "analytic", "both"])
    p.add_argument("--budget", type=int, default=dynamics.DEFAULT_BUDGET)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--config", help="key=value file supplying defaults for the flags")

    p = sub.add_parser("ego", help="ego-network experiment to CSV")
    p.add_argument("--graph", required=True)
    p.add_argument("--ego", type=int, required=True, help="ego node id (file ids)")
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", default="wal", choices=["wal", "ual"])
    p.add_argument("--beta", required=True, help="grid lo:hi:count")
    p.add_argument("--tau", required=True, help="grid lo:hi:count")
    p.add_argument("--budget", type=int, default=dynamics.DEFAULT_BUDGET)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--config", help="key=value file supplying defaults for the flags")

    p = sub.add_parser("dump-weights", help="print the F and G matrices")
    _add_model_flags(p, needs_tau=False)
    return parser


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _cmd_simulate(args) -> int:
    graph = _build_graph(args)
    radicals = frozenset({0})
    if args.radicals:
        radicals = frozenset(int(tok) for tok in args.radicals.split(","))
    config = dynamics.ModelConfig(graph=graph, beta=args.beta, tau=args.tau,
                                  mode=ActivityMode.parse(args.mode),
                                  radicals=radicals)
    traj = dynamics.simulate(config, budget=args.budget, keep_states=args.trace)
    outcome = dynamics.classify(traj)
    if args.trace:
        for s in traj.states:
            theta = ",".join(_fmt(x) for x in s.theta)
            p = ",".join(_fmt(x) for x in s.p)
            a = ",".join(str(int(x)) for x in s.a)
            print(f"{s.t}\t{theta}\t{p}\t{a}")
    if traj.termination is dynamics.Termination.ABSORBED:
        print(f"{outcome.label()}, absorbed at t={traj.absorbed_at}")
    elif traj.termination is dynamics.Termination.PERIODIC:
        print(f"{outcome.label()}, cycle from t={traj.cycle_start}, "
              f"period {traj.period}")
    else:
        print(f"{outcome.label()} after {traj.steps_run} steps")
    return EXIT_OK


def _cmd_classify(args) -> int:
    mode = ActivityMode.parse(args.mode)
    n = args.n
    if n is None:
        raise ParameterError("--n is required")
    if args.topology == "complete":
        label = analytic.classify_complete(n, args.beta, args.tau, mode)
        curves = {"gamma1": analytic.gamma1(n, args.beta),
                  "gamma2": analytic.gamma2(n, args.beta),
                  "gamma3": analytic.gamma3(n, args.beta),
                  "eta": analytic.eta(n, args.beta)}
    elif args.topology == "star":
        label = analytic.classify_star(n, args.beta, args.tau, mode)
        curves = {"delta1": analytic.delta1(n, args.beta),
                  "delta2": analytic.delta2(n, args.beta),
                  "delta3": analytic.delta3(n, args.beta),
                  "mu": analytic.mu(n, args.beta)}
    elif args.topology == "ring":
        label = analytic.classify_ring(n, args.beta, args.tau, mode)
        edges = analytic.ring_region_edges(n, args.beta, mode)
        curves = {f"edge_q{j}": e for j, e in enumerate(edges)}
    else:
        raise ParameterError("analytic classification needs complete/star/ring")
    print(f"topology={args.topology} mode={mode.value} n={n} "
          f"beta={_fmt(args.beta)} tau={_fmt(args.tau)}")
    print(f"label={label.label()}")
    for name, value in curves.items():
        print(f"{name}={_fmt(value)}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    spec = sweep.SweepSpec(
        topology=sweep.Topology(args.topology),
        mode=ActivityMode.parse(args.mode),
        n=args.n if args.n is not None else 0,
        beta_grid=_parse_grid(args.beta),
        tau_grid=_parse_grid(args.tau),
        engine=sweep.Engine(args.engine),
        graph_path=args.graph,
        budget=args.budget,
        jobs=args.jobs if args.jobs is not None else _default_jobs(),
    )
    table = sweep.phase_diagram(spec)
    sweep.write_csv(table, args.out)
    mismatches = sum(1 for c in table if c.agreement == "mismatch")
    flagged = sum(1 for c in table
                  if c.label.startswith(("Indeterminate", "Boundary", "NA")))
    print(f"{len(table)} cells -> {args.out} "
          f"(mismatches={mismatches}, flagged={flagged})")
    return EXIT_OK


def _cmd_ego(args) -> int:
    spec = sweep.EgoExperimentSpec(
        graph_path=args.graph, ego_id=args.ego, xi=args.xi,
        trials=args.trials, seed=args.seed,
        beta_grid=_parse_grid(args.beta), tau_grid=_parse_grid(args.tau),
        mode=ActivityMode.parse(args.mode), budget=args.budget,
        jobs=args.jobs if args.jobs is not None else _default_jobs(),
    )
    table = sweep.ego_experiment(spec)
    sweep.write_csv(table, args.out)
    print(f"{len(table)} cells -> {args.out}")
    return EXIT_OK


def _cmd_dump_weights(args) -> int:
    graph = _build_graph(args)
    m = InfluenceMatrices.build(graph, args.beta, ActivityMode.parse(args.mode))
    for name, matrix in (("F", m.f), ("G", m.g)):
        print(name)
        for row in matrix:
            print("\t".join(_fmt(x) for x in row))
    return EXIT_OK


_COMMANDS = {
    "simulate": _cmd_simulate,
    "classify": _cmd_classify,
    "sweep": _cmd_sweep,
    "ego": _cmd_ego,
    "dump-weights": _cmd_dump_weights,
}


def _expand_config(argv: list[str]) -> list[str]:
    """Splice `--config FILE` key=value pairs in before the explicit flags,
    so flags given on the command line take precedence."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        return argv
    path = argv[idx + 1]
    extra: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            extra += [f"--{key.strip()}", value.strip()]
    head, tail = argv[:1], argv[1:]
    return head + extra + tail


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        if argv:
            argv = _expand_config(argv)
        args = parser.parse_args(argv)
    except OSError as exc:
        print(f"threshold-cascade: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.subcommand](args)
    except ParameterError as exc:
        print(f"threshold-cascade: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ThresholdCascadeError, OSError) as exc:
        print(f"threshold-cascade: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
