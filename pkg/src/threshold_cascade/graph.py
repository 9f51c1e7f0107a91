"""Interconnection graphs: generators, edge-list ingestion, serialization.

Graphs are simple, undirected and connected.  Self-loops are never stored;
the "every agent is a neighbor of itself" convention is applied by the
weight builders, not here.  Nodes are indexed 0..n-1; graphs loaded from
edge lists keep the original node ids in ``node_ids`` for reporting.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, TextIO

from .errors import ConnectivityError, EdgeListParseError, GraphError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Graph:
    """Undirected simple connected graph on nodes 0..n-1.

    ``adjacency[i]`` is the sorted tuple of neighbors of i, excluding i.
    ``node_ids[i]`` is the external label of node i (identity for generated
    graphs, original file ids for loaded ones).
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    node_ids: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.node_ids:
            object.__setattr__(self, "node_ids", tuple(range(self.n)))

    def degree_with_self(self, i: int) -> int:
        """n_i: degree counting the implicit self-loop."""
        return len(self.adjacency[i]) + 1

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in self.adjacency[i] if i < j]

    def index_of(self, node_id: int) -> int:
        """Internal index of an external node id."""
        try:
            return self.node_ids.index(node_id)
        except ValueError:
            raise GraphError(f"unknown node id {node_id}") from None


def _from_edge_set(n: int, edges: Iterable[tuple[int, int]],
                   node_ids: tuple[int, ...] = ()) -> Graph:
    neighbors: list[set[int]] = [set() for _ in range(n)]
    for i, j in edges:
        neighbors[i].add(j)
        neighbors[j].add(i)
    adjacency = tuple(tuple(sorted(s)) for s in neighbors)
    return Graph(n=n, adjacency=adjacency, node_ids=node_ids)


def build_complete(n: int) -> Graph:
    """Complete graph: every pair of distinct agents is an edge."""
    if n < 2:
        raise GraphError(f"complete graph needs n >= 2, got {n}")
    return _from_edge_set(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def build_star(n: int) -> Graph:
    """Star graph with the radical agent (index 0) at the center."""
    if n < 2:
        raise GraphError(f"star graph needs n >= 2, got {n}")
    return _from_edge_set(n, ((0, j) for j in range(1, n)))


def build_ring(n: int) -> Graph:
    """Ring graph: agent i adjacent to i-1 and i+1, indices mod n."""
    if n < 3:
        raise GraphError(f"ring graph needs n >= 3, got {n}")
    return _from_edge_set(n, ((i, (i + 1) % n) for i in range(n)))


def _connected(n: int, adjacency: list[set[int]]) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in adjacency[i]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def load_edge_list(source: TextIO) -> Graph:
    """Parse a whitespace-separated edge list into a connected Graph.

    One edge per line, ``#`` starts a comment line.  Node ids are arbitrary
    non-negative integers, remapped to 0..n-1 in first-appearance order;
    the original ids are kept in ``Graph.node_ids``.  Self-loop lines are
    ignored (a warning with the count is logged).
    """
    index: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    self_loops = 0
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(lineno, line)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(lineno, line) from None
        if u < 0 or v < 0:
            raise EdgeListParseError(lineno, line, "node ids must be non-negative")
        if u == v:
            self_loops += 1
            continue
        for node in (u, v):
            if node not in index:
                index[node] = len(index)
        edges.append((index[u], index[v]))
    if self_loops:
        logger.warning("ignored %d self-loop line(s) in edge list", self_loops)
    n = len(index)
    if n == 0:
        raise GraphError("edge list contains no edges")
    neighbors: list[set[int]] = [set() for _ in range(n)]
    for i, j in edges:
        neighbors[i].add(j)
        neighbors[j].add(i)
    if not _connected(n, neighbors):
        raise ConnectivityError(f"graph with {n} nodes is not connected")
    adjacency = tuple(tuple(sorted(s)) for s in neighbors)
    return Graph(n=n, adjacency=adjacency, node_ids=tuple(index))


def serialize_edge_list(graph: Graph) -> str:
    """Edge-list text for ``graph``, using its external node ids."""
    lines = [f"{graph.node_ids[i]} {graph.node_ids[j]}" for i, j in graph.edges()]
    return "\n".join(lines) + "\n"
