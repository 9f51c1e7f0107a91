"""Dynamic threshold models of collective action on social networks.

A simulator for the coupled threshold/activity dynamics together with an
exact analytic classifier for complete, star and ring interconnections,
phase-diagram sweeps, ego-network experiments and a CLI.
"""

from .graph import (Graph, build_complete, build_ring, build_star,
                    load_edge_list, serialize_edge_list)
from .weights import ActivityMode, InfluenceMatrices, build_f, build_g
from .dynamics import (ModelConfig, OutcomeClass, OutcomeKind, SimState,
                       Termination, Trajectory, classify, initial_state,
                       perron_vector, simulate, step, threshold_limit)
from .analytic import (RegionKind, RegionLabel, alpha_pattern,
                       classify_complete, classify_ring, classify_star,
                       compute_q, thresholds_complete, thresholds_ring,
                       thresholds_star)
from .sweep import (EgoExperimentSpec, Engine, PhaseCell, SweepSpec, Topology,
                    ego_experiment, phase_diagram, write_csv)

__version__ = "0.1.0"

__all__ = [
    "Graph", "build_complete", "build_star", "build_ring", "load_edge_list",
    "serialize_edge_list",
    "ActivityMode", "InfluenceMatrices", "build_f", "build_g",
    "ModelConfig", "SimState", "Trajectory", "Termination", "OutcomeClass",
    "OutcomeKind", "initial_state", "step", "simulate", "classify",
    "threshold_limit", "perron_vector",
    "RegionKind", "RegionLabel", "alpha_pattern", "classify_complete",
    "classify_star", "classify_ring", "compute_q", "thresholds_complete",
    "thresholds_star", "thresholds_ring",
    "SweepSpec", "PhaseCell", "EgoExperimentSpec", "Engine", "Topology",
    "phase_diagram", "ego_experiment", "write_csv",
]
