"""Enumeration of the vertex supports the pipelines rank, plus parallel ranking.

Families are stored as dense (m, k) integer arrays: every support has the
same arity, each row is ascending, and rows are in lexicographic order, so
output is canonical and deduplicated by construction.

The centrality of a subgraph depends only on its vertex support, so one
support stands for every cycle realized on it; cycle enumeration therefore
yields k-subsets admitting a spanning simple cycle, not labeled cycles.
On sparse graphs the extension-tree path costs on the order of
n * max_degree**(k-1) candidate extensions, which is what keeps
thousand-vertex sparse graphs cheap; dense graphs fall back to filtering
all C(n, k) subsets.
"""

from __future__ import annotations

import os
import pickle
from array import array
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

from .errors import ParameterError, UnsupportedCycleLengthError, VertexIndexError
from .graph import WeightedDigraph

FAMILY_KINDS = ("pairs", "triads", "cycles3", "cycles4", "cycles5")

#: subsets-vs-extension-tree switch: brute subset filtering is faster on
#: dense graphs, extension trees on sparse ones where C(n, k) explodes
_SUBSET_BUDGET = 8_000_000

#: fixed scoring chunk so results are byte-identical for any worker count
_CHUNK_ROWS = 4096


@dataclass(frozen=True)
class SupportFamily:
    """A family of same-arity vertex supports in canonical order."""

    kind: str
    supports: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.supports, dtype=np.int32)
        arr.setflags(write=False)
        object.__setattr__(self, "supports", arr)

    @property
    def arity(self) -> int:
        return self.supports.shape[1]

    def __len__(self) -> int:
        return self.supports.shape[0]

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        for row in self.supports.tolist():
            yield tuple(row)


@dataclass(frozen=True)
class RankedSupports:
    """Supports with scores, sorted descending (lexicographic tie-break)."""

    kind: str
    supports: np.ndarray
    scores: np.ndarray
    method: str

    def __len__(self) -> int:
        return self.supports.shape[0]


def _skeleton(g: WeightedDigraph) -> np.ndarray:
    """Undirected adjacency skeleton, self-loops dropped (they cannot sit
    on a simple cycle over >= 2 distinct vertices)."""
    nz = g.weights != 0
    und = nz | nz.T
    np.fill_diagonal(und, False)
    return und


def _bitrows(adj: np.ndarray) -> list[int]:
    masks = []
    for row in adj:
        m = 0
        for j in np.flatnonzero(row):
            m |= 1 << int(j)
        masks.append(m)
    return masks


def _canonical(rows: np.ndarray, k: int) -> np.ndarray:
    if rows.size == 0:
        return np.empty((0, k), dtype=np.int32)
    keys = tuple(rows[:, c] for c in range(k - 1, -1, -1))
    return rows[np.lexsort(keys)]


def pair_supports(g: WeightedDigraph) -> SupportFamily:
    """All unordered pairs linked by at least one edge in either direction."""
    und = _skeleton(g)
    i, j = np.nonzero(np.triu(und, 1))
    rows = np.column_stack([i, j]).astype(np.int32)
    return SupportFamily("pairs", rows)


def connected_triple_supports(g: WeightedDigraph) -> SupportFamily:
    """All 3-subsets whose induced undirected skeleton is connected.

    Star expansion: every connected triple has a vertex adjacent to both
    others, so enumerating neighbor pairs around each center finds them
    all; duplicates (triangles appear three times) are removed at the end.
    """
    und = _skeleton(g)
    chunks = []
    for v in range(g.n):
        nb = np.flatnonzero(und[v])
        if nb.size < 2:
            continue
        iu, ju = np.triu_indices(nb.size, 1)
        trip = np.column_stack([np.full(iu.size, v, dtype=np.int64), nb[iu], nb[ju]])
        chunks.append(np.sort(trip, axis=1))
    if not chunks:
        return SupportFamily("triads", np.empty((0, 3), dtype=np.int32))
    rows = np.unique(np.concatenate(chunks), axis=0).astype(np.int32)
    return SupportFamily("triads", rows)


def _spanning_cycle_directed(members, out_bits, in_bits) -> bool:
    mask = 0
    for m in members:
        mask |= 1 << m
    for m in members:
        inside = mask & ~(1 << m)
        if not out_bits[m] & inside or not in_bits[m] & inside:
            return False
    first = members[0]
    for perm in permutations(members[1:]):
        prev = first
        for v in perm:
            if not out_bits[prev] >> v & 1:
                break
            prev = v
        else:
            if out_bits[prev] >> first & 1:
                return True
    return False


def _spanning_cycle_undirected(members, und_bits) -> bool:
    mask = 0
    for m in members:
        mask |= 1 << m
    for m in members:
        if (und_bits[m] & mask).bit_count() < 2:
            return False
    first = members[0]
    for perm in permutations(members[1:]):
        prev = first
        for v in perm:
            if not und_bits[prev] >> v & 1:
                break
            prev = v
        else:
            if und_bits[prev] >> first & 1:
                return True
    return False


def _connected_subsets(und_bits: list[int], n: int, k: int) -> np.ndarray:
    """Extension-tree enumeration of connected k-subsets, each exactly once.

    Candidates for growth are neighbors of the newest vertex that are
    neither in nor adjacent to the current subset and are above the root,
    which is the standard uniqueness argument.
    """
    out = array("i")
    above = [~((1 << (v + 1)) - 1) for v in range(n)]

    def extend(sub: tuple[int, ...], ext: int, nbh: int, v: int):
        if len(sub) == k - 1:
            e = ext
            while e:
                low = e & -e
                e ^= low
                out.extend(sorted(sub + (low.bit_length() - 1,)))
            return
        e = ext
        while e:
            low = e & -e
            u = low.bit_length() - 1
            e ^= low
            cand = und_bits[u] & ~nbh & above[v]
            extend(sub + (u,), e | cand, nbh | cand, v)

    for v in range(n):
        if k == 1:
            out.append(v)
            continue
        ext = und_bits[v] & above[v]
        extend((v,), ext, und_bits[v] | (1 << v), v)
    return _canonical(np.asarray(out, dtype=np.int32).reshape(-1, k), k)


def cycle_supports(g: WeightedDigraph, k: int) -> SupportFamily:
    """All k-subsets whose induced subgraph has a simple cycle through all
    k vertices (directed or undirected per the graph's flag), k in {3,4,5}.

    Spanning-cycle existence is decided by brute force over the (k-1)!
    orderings.  Subsets come from plain combination filtering when C(n, k)
    is small, otherwise from connected-subset extension trees.
    """
    if k not in (3, 4, 5):
        raise UnsupportedCycleLengthError(f"cycle supports need k in {{3,4,5}}, got {k}")
    n = g.n
    und_bits = _bitrows(_skeleton(g))
    if g.directed:
        nz = g.weights != 0
        np.fill_diagonal(nz, False)
        out_bits = _bitrows(nz)
        in_bits = _bitrows(nz.T)
        test = lambda ms: _spanning_cycle_directed(ms, out_bits, in_bits)
    else:
        test = lambda ms: _spanning_cycle_undirected(ms, und_bits)

    winners = array("i")
    if comb(n, k) <= _SUBSET_BUDGET:
        for members in combinations(range(n), k):
            if test(members):
                winners.extend(members)
        rows = np.asarray(winners, dtype=np.int32).reshape(-1, k)
    else:
        for row in _connected_subsets(und_bits, n, k).tolist():
            if test(tuple(row)):
                winners.extend(row)
        rows = np.asarray(winners, dtype=np.int32).reshape(-1, k)
    return SupportFamily(f"cycles{k}", rows)


def enumerate_family(g: WeightedDigraph, kind: str) -> SupportFamily:
    """Dispatch on the family names used by the CLI."""
    if kind == "pairs":
        return pair_supports(g)
    if kind == "triads":
        return connected_triple_supports(g)
    if kind in ("cycles3", "cycles4", "cycles5"):
        return cycle_supports(g, int(kind[-1]))
    raise ParameterError(f"unknown family kind {kind!r}; choose from {FAMILY_KINDS}")


def worker_count(requested: Optional[int] = None) -> int:
    """Worker-pool size: explicit argument, else CYCLERANK_THREADS, else
    the logical core count."""
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get("CYCLERANK_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ParameterError(f"CYCLERANK_THREADS={env!r} is not an integer") from None
    return os.cpu_count() or 1


def _score_rows(scorer, rows: list[list[int]]) -> list[float]:
    out = []
    for row in rows:
        try:
            out.append(float(scorer(row)))
        except Exception as exc:
            exc.args = exc.args + (f"while scoring support {tuple(row)}",)
            raise
    return out


def _score_chunk(payload) -> list[float]:
    scorer, chunk = payload
    return _score_rows(scorer, chunk.tolist())


def _score_supports(supports: np.ndarray, scorer, workers: int) -> np.ndarray:
    m = supports.shape[0]
    if m == 0:
        return np.empty(0)
    chunks = [supports[i : i + _CHUNK_ROWS] for i in range(0, m, _CHUNK_ROWS)]
    parallel = workers > 1 and len(chunks) > 1
    if parallel:
        try:
            pickle.dumps(scorer)
        except Exception:
            parallel = False  # unpicklable scorers (lambdas) score in-process
    if not parallel:
        scores: list[float] = []
        for chunk in chunks:
            scores.extend(_score_rows(scorer, chunk.tolist()))
        return np.asarray(scores)
    scores = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_score_chunk, ((scorer, c) for c in chunks)):
            scores.extend(part)
    return np.asarray(scores)


def score_supports(
    g: WeightedDigraph,
    family: SupportFamily,
    scorer: Callable[[Iterable[int]], float],
    workers: Optional[int] = None,
) -> np.ndarray:
    """Scores aligned with the family's canonical order (no sorting)."""
    supports = family.supports
    if supports.size and int(supports.max()) >= g.n:
        raise VertexIndexError("family references vertices outside the graph")
    return _score_supports(supports, scorer, worker_count(workers))


def rank_supports(
    g: WeightedDigraph,
    family: SupportFamily,
    scorer: Callable[[Iterable[int]], float],
    top_m: Optional[int] = None,
    workers: Optional[int] = None,
    method: Optional[str] = None,
) -> RankedSupports:
    """Score every support with a pure scorer and sort descending.

    Ties break toward the lexicographically smaller support, so the output
    is deterministic and independent of the worker count.
    """
    supports = family.supports
    scores = score_supports(g, family, scorer, workers)
    if len(scores):
        k = supports.shape[1]
        keys = tuple(supports[:, c] for c in range(k - 1, -1, -1)) + (-scores,)
        order = np.lexsort(keys)
        supports = supports[order]
        scores = scores[order]
    if top_m is not None:
        supports = supports[:top_m]
        scores = scores[:top_m]
    if method is None:
        method = getattr(scorer, "describe", lambda: "custom")()
    return RankedSupports(kind=family.kind, supports=supports, scores=scores,
                          method=method)
