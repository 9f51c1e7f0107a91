"""Row-stochastic influence matrices.

The threshold matrix F gives each agent a relative self-weight beta against
a unit weight per neighbor.  The activity matrix G either equals F (weighted
activity level, WAL) or is uniform over the closed neighborhood (uniform
activity level, UAL).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .graph import Graph


class ActivityMode(enum.Enum):
    WAL = "wal"
    UAL = "ual"

    @classmethod
    def parse(cls, text: str) -> "ActivityMode":
        try:
            return cls(text.lower())
        except ValueError:
            raise ParameterError(f"unknown activity mode {text!r}") from None


def build_f(graph: Graph, beta: float) -> np.ndarray:
    """Threshold weight matrix: f_ii = beta/(beta+n_i-1), f_ij = 1/(beta+n_i-1).

    Each entry is a single division, so every row sums to 1 to machine
    precision without post-hoc normalization.
    """
    if beta <= 0:
        raise ParameterError(f"beta must be positive, got {beta}")
    n = graph.n
    f = np.zeros((n, n))
    for i in range(n):
        denom = beta + graph.degree_with_self(i) - 1
        f[i, i] = beta / denom
        for j in graph.adjacency[i]:
            f[i, j] = 1.0 / denom
    return f


def build_g(graph: Graph, beta: float, mode: ActivityMode) -> np.ndarray:
    """Activity weight matrix: equal to F under WAL, uniform 1/n_i under UAL."""
    if mode is ActivityMode.WAL:
        return build_f(graph, beta)
    if beta <= 0:
        raise ParameterError(f"beta must be positive, got {beta}")
    n = graph.n
    g = np.zeros((n, n))
    for i in range(n):
        w = 1.0 / graph.degree_with_self(i)
        g[i, i] = w
        for j in graph.adjacency[i]:
            g[i, j] = w
    return g


@dataclass(frozen=True)
class InfluenceMatrices:
    """The (F, G) pair driving the threshold and activity dynamics."""

    f: np.ndarray
    g: np.ndarray
    beta: float
    mode: ActivityMode
    graph: Graph = field(repr=False)

    @classmethod
    def build(cls, graph: Graph, beta: float, mode: ActivityMode) -> "InfluenceMatrices":
        f = build_f(graph, beta)
        g = f if mode is ActivityMode.WAL else build_g(graph, beta, mode)
        return cls(f=f, g=g, beta=beta, mode=mode, graph=graph)
