"""Shared small-graph builders used across the suite."""

import numpy as np

from cyclerank import WeightedDigraph, build_graph


def k3():
    """Undirected triangle, unit weights; spectrum {2, -1, -1}."""
    return build_graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)], directed=False)


def c4():
    """Undirected 4-cycle; spectrum {2, 0, 0, -2}."""
    return build_graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)], directed=False)


def p3():
    """Undirected path 0-1-2; spectrum {sqrt2, 0, -sqrt2}."""
    return build_graph(3, [(0, 1, 1), (1, 2, 1)], directed=False)


def star(k=3):
    """Star K_{1,k} with center 0; spectrum {sqrt k, 0.., -sqrt k}."""
    return build_graph(k + 1, [(0, i, 1.0) for i in range(1, k + 1)], directed=False)


def directed_cycle(n=3):
    """Directed n-cycle; spectrum = n-th roots of unity."""
    return build_graph(n, [(i, (i + 1) % n, 1.0) for i in range(n)], directed=True)


def directed_path(n=3):
    """Directed path (nilpotent adjacency)."""
    return build_graph(n, [(i, i + 1, 1.0) for i in range(n - 1)], directed=True)


def complete_digraph(n, weight=1.0, rng=None):
    """Complete digraph on n vertices, optionally with random weights."""
    w = np.full((n, n), weight, dtype=float)
    if rng is not None:
        w = rng.uniform(0.1, 2.0, (n, n))
    np.fill_diagonal(w, 0.0)
    return WeightedDigraph(w, directed=True)


def random_graph(rng, n, density=0.4, directed=True, ensure_edges=True, unit_weights=False):
    """Random nonnegative weighted graph; retries until it has an edge.

    Self-loops appear with probability 0.2 (symmetric in the undirected
    case, which also keeps n = 1 satisfiable)."""
    while True:
        mask = rng.random((n, n)) < density
        w = np.where(mask, rng.uniform(0.1, 3.0, (n, n)), 0.0)
        if not directed:
            w = np.triu(w, 1)
            w = w + w.T
        loops = np.where(rng.random(n) < 0.2, rng.uniform(0.1, 1.0, n), 0.0)
        np.fill_diagonal(w, loops)
        if unit_weights:
            w = (w != 0).astype(float)
        if not ensure_edges or w.any():
            return WeightedDigraph(w, directed=directed)


def random_connected_undirected(rng, n, density=0.3):
    """Random connected undirected nonnegative graph (rejection sampling)."""
    while True:
        g = random_graph(rng, n, density=density, directed=False)
        if _connected(g.weights):
            return g


def _connected(w):
    n = w.shape[0]
    seen = {0}
    frontier = [0]
    adj = w != 0
    while frontier:
        v = frontier.pop()
        for u in np.flatnonzero(adj[v]):
            if int(u) not in seen:
                seen.add(int(u))
                frontier.append(int(u))
    return len(seen) == n
