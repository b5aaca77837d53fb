"""The determinant-based cycle/subgraph centrality and the baseline measures.

The core quantity for a vertex set s on a graph with dominant eigenvalue
lam is det(I - A_rest/lam), where A_rest is the adjacency of the graph
with s and all incident edges removed.  It is the asymptotic fraction of
closed-walk flow intersecting s, so on nonnegative graphs it lies in
[0, 1].  lam is computed once on the full graph and reused for every s.

Baselines (degree, eigenvector, resolvent, exponential) are deliberately
independent code paths so comparisons against them stay honest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
import scipy.linalg

from .errors import (
    AlphaTooLargeError,
    CentralityBoundsError,
    ExponentialOverflowError,
    LambdaMismatchError,
    NumericalError,
    ParameterError,
    ZeroSpectralRadiusError,
)
from .graph import VertexSet, WeightedDigraph, remove_vertex_set, weighted_degrees
from .spectral import det_scaled, dominant_eigenpair, eta, full_spectrum

#: numerical slack around [0, 1]: clamp inside, hard error beyond
CLAMP_EPS = 1e-9


@dataclass(frozen=True)
class CentralityValue:
    """A centrality result: the value plus how it was obtained.

    ``q`` is the retained-eigenvalue count for the approximate method
    (None for exact).  ``clamped`` records that the raw determinant fell
    outside [0, 1] by at most CLAMP_EPS and was pulled back in.
    """

    value: float
    method: str = "exact"
    q: Optional[int] = None
    clamped: bool = False

    def __float__(self) -> float:
        return self.value

    def describe(self) -> str:
        return self.method if self.q is None else f"{self.method}({self.q})"


def _check_lambda(g: WeightedDigraph, lam: float) -> None:
    recomputed, _ = dominant_eigenpair(g)
    if abs(recomputed - lam) > 1e-6 * max(abs(recomputed), 1e-300):
        raise LambdaMismatchError(
            f"supplied lambda {lam:.12g} vs recomputed {recomputed:.12g}"
        )


def _bounded(raw: float, enforce: bool, method: str, q: Optional[int]) -> CentralityValue:
    if not enforce:
        return CentralityValue(raw, method, q)
    if -CLAMP_EPS <= raw < 0.0:
        return CentralityValue(0.0, method, q, clamped=True)
    if 1.0 < raw <= 1.0 + CLAMP_EPS:
        return CentralityValue(1.0, method, q, clamped=True)
    if raw < -CLAMP_EPS or raw > 1.0 + CLAMP_EPS:
        raise CentralityBoundsError(
            f"centrality {raw:.17g} outside [0, 1] beyond the clamping window"
        )
    return CentralityValue(raw, method, q)


def subgraph_centrality(
    g: WeightedDigraph,
    s: Iterable[int],
    lam: float,
    check_lambda: bool = False,
) -> CentralityValue:
    """Exact centrality of the vertex set s: det(I - A_{G minus s}/lam).

    ``lam`` must be the dominant eigenvalue of the *full* graph; compute it
    once and reuse it across all s.  Empty s gives whole-graph flow
    det(I - A/lam) (which is 0, lam being an eigenvalue); s covering all
    vertices gives exactly 1.  On nonnegative graphs the value is clamped
    into [0, 1] within CLAMP_EPS and errors beyond that.
    """
    if lam <= 0:
        raise ParameterError("lam must be positive")
    if check_lambda:
        _check_lambda(g, lam)
    s = VertexSet(s, g.n)
    raw = det_scaled(remove_vertex_set(g, s), lam)
    return _bounded(raw, enforce=g.nonnegative, method="exact", q=None)


def _dominant_first(vals: np.ndarray) -> np.ndarray:
    """Sort eigenvalues by modulus descending, ties toward positive real
    part, conjugates adjacent with +imag first."""
    order = np.lexsort((-vals.imag, -vals.real, -np.abs(vals)))
    return vals[order]


def subgraph_centrality_approx(
    g: WeightedDigraph,
    s: Iterable[int],
    lam: float,
    q: int,
    check_lambda: bool = False,
) -> CentralityValue:
    """Approximate centrality from the q largest-modulus eigenvalues of the
    remainder graph.

    Conjugate pairs are never split (q grows by one when a split would
    occur) so the product stays real.  Truncation error can legitimately
    push the value outside [0, 1]; only the clamp window is applied, never
    the hard bounds error of the exact method.
    """
    if lam <= 0:
        raise ParameterError("lam must be positive")
    if check_lambda:
        _check_lambda(g, lam)
    s = VertexSet(s, g.n)
    rest = remove_vertex_set(g, s)
    if not 1 <= q <= rest.n:
        raise ParameterError(f"q must be in [1, {rest.n}], got {q}")
    vals = _dominant_first(full_spectrum(rest))
    q_eff = int(q)
    if q_eff < rest.n:
        head = vals[q_eff - 1]
        tol = 1e-9 * (1.0 + abs(head))
        if abs(head.imag) > tol and abs(vals[q_eff] - head.conjugate()) <= tol:
            q_eff += 1
    prod = complex(np.prod(1.0 - vals[:q_eff] / lam))
    if abs(prod.imag) > 1e-8 * max(1.0, abs(prod)):
        raise NumericalError(
            f"approximate centrality has non-real residue {prod.imag:g}"
        )
    raw = float(prod.real)
    value = _clamp_window_only(raw) if g.nonnegative else (raw, False)
    return CentralityValue(value[0], "approx", q_eff, clamped=value[1])


def _clamp_window_only(raw: float) -> tuple[float, bool]:
    if -CLAMP_EPS <= raw < 0.0:
        return 0.0, True
    if 1.0 < raw <= 1.0 + CLAMP_EPS:
        return 1.0, True
    return raw, False


@dataclass(frozen=True)
class VertexCentralityProfile:
    """Per-vertex centralities c(i) with the eigenvector cross-check.

    ``residuals[i] = |c(i) - eta * vec[i]**2|``; only computed for
    undirected graphs, where the identity is established.
    """

    lam: float
    eta: float
    values: np.ndarray
    eigenvector: np.ndarray
    residuals: Optional[np.ndarray]


def vertex_centrality_profile(g: WeightedDigraph) -> VertexCentralityProfile:
    """c(i) for every vertex plus the eta * eig(i)^2 residuals."""
    lam, vec = dominant_eigenpair(g)
    et = eta(g)
    values = np.array([subgraph_centrality(g, (i,), lam).value for i in range(g.n)])
    residuals = None
    if not g.directed:
        residuals = np.abs(values - et * vec**2)
    return VertexCentralityProfile(lam=lam, eta=et, values=values,
                                   eigenvector=vec, residuals=residuals)


def eigenvector_centrality(g: WeightedDigraph) -> np.ndarray:
    """Entries of the unit-norm right Perron vector."""
    _, vec = dominant_eigenpair(g)
    return vec


def degree_centrality(g: WeightedDigraph) -> np.ndarray:
    """Total weighted degree per vertex."""
    return weighted_degrees(g)[2]


def resolvent_centrality(g: WeightedDigraph, alpha: float) -> np.ndarray:
    """Katz-style scores: the solution of (I - alpha*A) x = 1.

    Requires 0 <= alpha < 1/lam for the underlying walk sum to converge.
    """
    if alpha < 0:
        raise ParameterError("alpha must be >= 0")
    n = g.n
    if alpha == 0:
        return np.ones(n)
    try:
        lam, _ = dominant_eigenpair(g)
    except ZeroSpectralRadiusError:
        lam = 0.0
    if alpha * lam >= 1.0:
        raise AlphaTooLargeError(f"alpha*lambda = {alpha * lam:g} >= 1")
    return np.linalg.solve(np.eye(n) - alpha * g.weights, np.ones(n))


def exponential_centrality(g: WeightedDigraph, r: float = 1.0) -> np.ndarray:
    """Row sums of e^{A/r} via scaling-and-squaring.

    Raises when the result is non-finite; callers should raise r.
    """
    if r <= 0:
        raise ParameterError("r must be positive")
    with np.errstate(over="ignore", invalid="ignore"):
        result = scipy.linalg.expm(g.weights / r) @ np.ones(g.n)
    if not np.isfinite(result).all():
        raise ExponentialOverflowError(f"e^(A/{r:g}) overflows; increase r")
    return result


def default_exponential_divisor(g: WeightedDigraph) -> float:
    """Smallest power of 10 (from 1 upward) making e^{A/r} finite."""
    r = 1.0
    while r < 1e308:
        try:
            exponential_centrality(g, r)
            return r
        except ExponentialOverflowError:
            r *= 10.0
    raise ExponentialOverflowError("no power-of-10 divisor keeps e^(A/r) finite")


def sigma_sum(scores: np.ndarray, s: Iterable[int]) -> float:
    """Sum of per-vertex scores over the vertex set s (0 for empty s)."""
    scores = np.asarray(scores, dtype=float)
    s = VertexSet(s, len(scores))
    if not s:
        return 0.0
    return float(scores[list(s)].sum())


class CycleCentralityScorer:
    """Picklable scorer: support -> exact (or q-approximate) centrality.

    Holds the graph and its dominant eigenvalue so worker processes score
    against one shared immutable instance.
    """

    def __init__(self, g: WeightedDigraph, lam: float, q: Optional[int] = None):
        self.g = g
        self.lam = float(lam)
        self.q = q

    def __call__(self, support: Iterable[int]) -> float:
        if self.q is None:
            return subgraph_centrality(self.g, support, self.lam).value
        return subgraph_centrality_approx(self.g, support, self.lam, self.q).value

    def describe(self) -> str:
        return "exact" if self.q is None else f"approx({self.q})"


class SigmaScorer:
    """Picklable scorer: support -> sum of fixed per-vertex scores."""

    def __init__(self, scores: np.ndarray, name: str = "sigma"):
        self.scores = np.asarray(scores, dtype=float)
        self.name = name

    def __call__(self, support: Iterable[int]) -> float:
        return sigma_sum(self.scores, support)

    def describe(self) -> str:
        return self.name
