"""Weighted directed graphs as dense matrices, plus vertex-set views.

Graphs are immutable after construction; every operation returns a new
value, so they are safe to share across worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    DuplicateEdgeError,
    NegativeWeightError,
    ParameterError,
    UnresolvedLabelError,
    VertexIndexError,
)


class VertexSet(tuple):
    """Sorted, deduplicated tuple of vertex indices.

    Accepts any iterable of ints; when ``n`` is given, indices are
    validated against [0, n).
    """

    def __new__(cls, indices: Iterable[int] = (), n: int | None = None):
        members = sorted({int(i) for i in indices})
        if members:
            if members[0] < 0:
                raise VertexIndexError(f"negative vertex index {members[0]}")
            if n is not None and members[-1] >= n:
                raise VertexIndexError(
                    f"vertex {members[-1]} out of range for a {n}-vertex graph"
                )
        return super().__new__(cls, members)

    def complement(self, n: int) -> "VertexSet":
        """Indices in [0, n) not in this set, ascending."""
        inside = set(self)
        return VertexSet((i for i in range(n) if i not in inside), n)


@dataclass(frozen=True)
class WeightedDigraph:
    """Dense nonnegative-weighted directed graph.

    ``weights[i, j]`` is the weight of the edge i -> j; 0 means absent.
    Diagonal entries are legal self-loops and are kept verbatim.  When
    ``directed`` is False the matrix must be exactly symmetric.  Negative
    weights are rejected unless ``allow_negative`` is set, in which case
    every [0, 1] bound documented elsewhere is void.
    """

    weights: np.ndarray
    directed: bool = True
    labels: Optional[tuple[str, ...]] = None
    allow_negative: bool = False
    nonnegative: bool = field(init=False, repr=False)

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ParameterError(f"weights must be square, got shape {w.shape}")
        nonneg = bool((w >= 0).all()) if w.size else True
        if not nonneg and not self.allow_negative:
            raise NegativeWeightError(
                "negative edge weight; pass allow_negative=True to permit them"
            )
        if not self.directed and w.size and not (w == w.T).all():
            raise ParameterError("undirected graph requires an exactly symmetric matrix")
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != w.shape[0]:
                raise ParameterError(
                    f"{len(labels)} labels for a {w.shape[0]}-vertex graph"
                )
            object.__setattr__(self, "labels", labels)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "nonnegative", nonneg)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def label_of(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def index_of(self, label: str) -> int:
        """Resolve a vertex label (or stringified index when unlabeled)."""
        if self.labels is not None:
            try:
                return self.labels.index(label)
            except ValueError:
                raise UnresolvedLabelError(f"unknown vertex label {label!r}") from None
        try:
            i = int(label)
        except ValueError:
            raise UnresolvedLabelError(
                f"graph has no labels and {label!r} is not an index"
            ) from None
        if not 0 <= i < self.n:
            raise UnresolvedLabelError(f"index {i} out of range for n={self.n}")
        return i

    def vertex_set(self, names: Iterable[str]) -> VertexSet:
        """Resolve an iterable of labels to a VertexSet."""
        return VertexSet((self.index_of(x) for x in names), self.n)


def build_graph(
    n: int,
    edges: Iterable[tuple[int, int, float]],
    directed: bool = True,
    labels: Optional[Sequence[str]] = None,
    allow_negative: bool = False,
) -> WeightedDigraph:
    """Assemble a graph from an edge list.

    Duplicate (src, dst) pairs are an error.  For undirected graphs each
    listed edge populates both (i, j) and (j, i); listing both orientations
    counts as a duplicate.
    """
    if n < 0:
        raise ParameterError("vertex count must be >= 0")
    w = np.zeros((n, n))
    seen: set[tuple[int, int]] = set()
    for src, dst, weight in edges:
        src, dst = int(src), int(dst)
        if not (0 <= src < n and 0 <= dst < n):
            raise VertexIndexError(f"edge ({src}, {dst}) out of range for n={n}")
        key = (src, dst) if directed else (min(src, dst), max(src, dst))
        if key in seen:
            raise DuplicateEdgeError(f"edge ({src}, {dst}) listed twice")
        seen.add(key)
        if weight < 0 and not allow_negative:
            raise NegativeWeightError(f"edge ({src}, {dst}) has negative weight {weight}")
        w[src, dst] = weight
        if not directed:
            w[dst, src] = weight
    return WeightedDigraph(w, directed=directed, labels=tuple(labels) if labels else None,
                           allow_negative=allow_negative)


def induced_subgraph(g: WeightedDigraph, s: Iterable[int]) -> WeightedDigraph:
    """Principal submatrix on the vertex set s, labels filtered along."""
    s = VertexSet(s, g.n)
    keep = list(s)
    w = g.weights[np.ix_(keep, keep)]
    labels = tuple(g.labels[i] for i in keep) if g.labels is not None else None
    return WeightedDigraph(w, directed=g.directed, labels=labels,
                           allow_negative=g.allow_negative)


def remove_vertex_set(g: WeightedDigraph, s: Iterable[int]) -> WeightedDigraph:
    """Graph with the vertices in s and all their incident edges removed.

    The result is compacted: position p corresponds to the original index
    ``VertexSet(s).complement(g.n)[p]``, which is the retained index map.
    Removing every vertex yields the legal empty graph.
    """
    s = VertexSet(s, g.n)
    return induced_subgraph(g, s.complement(g.n))


def weighted_degrees(g: WeightedDigraph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-vertex (in, out, total) weight sums.

    in(j) is the column sum, out(i) the row sum.  For directed graphs
    total = in + out (a self-loop counts once in each); for undirected
    graphs each edge is incident once, so total is the row sum.
    """
    w = g.weights
    in_deg = w.sum(axis=0)
    out_deg = w.sum(axis=1)
    total = in_deg + out_deg if g.directed else out_deg.copy()
    return in_deg, out_deg, total
