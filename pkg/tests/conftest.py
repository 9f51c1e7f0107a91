import numpy as np
import pytest

from threshold_cascade.graph import Graph


def random_connected_graph(rng: np.random.Generator, n: int) -> Graph:
    """Random tree on n nodes plus up to n extra edges."""
    edges = set()
    for i in range(1, n):
        j = int(rng.integers(0, i))
        edges.add((j, i))
    for _ in range(int(rng.integers(0, n))):
        a, b = rng.choice(n, size=2, replace=False)
        a, b = int(min(a, b)), int(max(a, b))
        edges.add((a, b))
    adjacency = [set() for _ in range(n)]
    for a, b in edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    return Graph(n=n, adjacency=tuple(tuple(sorted(s)) for s in adjacency),
                 node_ids=tuple(range(n)))


@pytest.fixture
def ego_graph_path():
    from importlib.resources import files
    return str(files("threshold_cascade") / "data" / "ego_53.edges")
