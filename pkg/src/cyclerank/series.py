"""Series-based oracle for the combinatorial meaning of the centrality.

The reciprocal of det(I - zA) generates the closed-walk multi-ensemble
counts h(k); the coefficients f(k) of det(I - zA_rest)/det(I - zA) count
the walk flow meeting a vertex set, and f(k)/h(k) converges to the
determinant centrality of that set.  This path never evaluates the
determinant at 1/lambda, which is what makes it an independent check.

Coefficients grow like lambda**k, so for large truncation orders the
series are computed after the substitution z -> u/lambda, which rescales
h(k) by lambda**-k and leaves every ratio unchanged.  An exact-rational
mode (floats taken as exact binary rationals) supports hand-verifiable
traces on small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterable, Optional, Sequence

import numpy as np

from .centrality import subgraph_centrality
from .errors import DegenerateEigenvalueError, ParameterError, SpectralGapError
from .graph import VertexSet, WeightedDigraph, remove_vertex_set
from .spectral import (
    _split_dominant,
    characteristic_polynomial,
    characteristic_polynomial_exact,
    dominant_eigenpair,
    full_spectrum,
)

#: above this truncation order the float path rescales by the dominant eigenvalue
_RESCALE_ORDER = 50

#: |h(k)| below this (relative to the running max) counts as a structural zero
_ZERO_RTOL = 1e-12


@dataclass(frozen=True)
class SeriesPair:
    """det(I - zA) coefficients and their reciprocal (the flow series).

    With ``scale`` = s, entry k holds the true coefficient divided by s**k
    (the z -> u/s substitution); scale 1 means raw coefficients.
    """

    p: np.ndarray
    h: np.ndarray
    K: int
    scale: float = 1.0


@dataclass(frozen=True)
class RatioTrace:
    """Coefficient ratios converging to the centrality of a vertex set.

    ``f`` holds the (possibly rescaled) coefficients of
    det(I - zA_rest)/det(I - zA); ratios are defined only at orders where
    h(k) is nonzero.  In exact mode all sequences are Fractions.
    """

    f: tuple
    h: tuple
    ratio_ks: tuple[int, ...]
    ratios: tuple
    target: float
    scale: float = 1.0
    exact: bool = False


@dataclass(frozen=True)
class ConvergenceReport:
    """Outcome of the ratio-convergence check for one (graph, set) case."""

    passed: bool
    target: float
    cesaro_mean: float
    cesaro_error: float
    tol: float
    window: int
    decay_rate: Optional[float]
    spectral_gap: float
    K: int
    ratio_ks: tuple[int, ...]
    ratios: tuple[float, ...]


def _reciprocal(p: np.ndarray, K: int) -> np.ndarray:
    h = np.zeros(K + 1)
    h[0] = 1.0
    deg = len(p) - 1
    for k in range(1, K + 1):
        m = min(k, deg)
        h[k] = -float(np.dot(p[1 : m + 1], h[k - m : k][::-1]))
    return h


def _reciprocal_exact(p: Sequence[Fraction], K: int) -> list[Fraction]:
    h = [Fraction(0)] * (K + 1)
    h[0] = Fraction(1)
    deg = len(p) - 1
    for k in range(1, K + 1):
        h[k] = -sum(
            (p[j] * h[k - j] for j in range(1, min(k, deg) + 1)), Fraction(0)
        )
    return h


def _convolve_head(x: Sequence, h: Sequence, K: int, zero):
    return [
        sum((x[i] * h[k - i] for i in range(0, min(k, len(x) - 1) + 1)), zero)
        for k in range(K + 1)
    ]


def hike_series(g: WeightedDigraph, K: int, scale: float = 1.0) -> SeriesPair:
    """Characteristic polynomial of det(I - zA) and its reciprocal up to K."""
    if K < 0:
        raise ParameterError("K must be >= 0")
    if scale <= 0:
        raise ParameterError("scale must be positive")
    p = characteristic_polynomial(g).coeffs
    if scale != 1.0:
        p = p / scale ** np.arange(len(p))
    return SeriesPair(p=p, h=_reciprocal(p, K), K=K, scale=scale)


def viennot_ratio(
    g: WeightedDigraph, s: Iterable[int], K: int, exact: bool = False
) -> RatioTrace:
    """Ratio trace f(k)/h(k) for the vertex set s, with its centrality target.

    Requires a positive dominant eigenvalue and K >= n so the remainder
    polynomial is fully represented in the convolution.
    """
    s = VertexSet(s, g.n)
    if K < g.n:
        raise ParameterError(f"K must be >= n = {g.n}")
    lam, _ = dominant_eigenpair(g)
    target = subgraph_centrality(g, s, lam).value
    rest = remove_vertex_set(g, s)
    if exact:
        p = characteristic_polynomial_exact(g)
        h = _reciprocal_exact(p, K)
        x = characteristic_polynomial_exact(rest)
        f = _convolve_head(x, h, K, Fraction(0))
        ks = tuple(k for k in range(K + 1) if h[k] != 0)
        ratios = tuple(f[k] / h[k] for k in ks)
        return RatioTrace(f=tuple(f), h=tuple(h), ratio_ks=ks, ratios=ratios,
                          target=target, scale=1.0, exact=True)
    scale = lam if K > _RESCALE_ORDER else 1.0
    pair = hike_series(g, K, scale=scale)
    x = characteristic_polynomial(rest).coeffs
    if scale != 1.0:
        x = x / scale ** np.arange(len(x))
    f = np.asarray(_convolve_head(x, pair.h, K, 0.0))
    floor = _ZERO_RTOL * max(1.0, float(np.abs(pair.h).max()))
    ks = tuple(k for k in range(K + 1) if abs(pair.h[k]) > floor)
    ratios = tuple(float(f[k] / pair.h[k]) for k in ks)
    return RatioTrace(f=tuple(f), h=tuple(pair.h), ratio_ks=ks, ratios=ratios,
                      target=target, scale=scale, exact=False)


def ratio_convergence_check(
    g: WeightedDigraph, s: Iterable[int], K: int, tol: float
) -> ConvergenceReport:
    """Check that the ratio trace converges to the centrality of s.

    Passes when the Cesaro average of the last ceil(K/4) defined ratios is
    within tol of the target and the raw deviations stay inside a fitted
    C * gap**k envelope (gap = second eigenvalue modulus over the first).
    Cesaro averaging absorbs the sign oscillation that subdominant
    negative or complex eigenvalues produce.
    """
    if tol <= 0:
        raise ParameterError("tol must be positive")
    try:
        lam, others = _split_dominant(full_spectrum(g))
    except DegenerateEigenvalueError as exc:
        raise SpectralGapError(f"inconclusive: {exc}") from exc
    gap = float(np.abs(others).max()) / lam if others.size else 0.0

    trace = viennot_ratio(g, s, K)
    target = trace.target
    ks = np.asarray(trace.ratio_ks)
    ratios = np.asarray(trace.ratios)
    tail = (ks >= g.n)
    ks, ratios = ks[tail], ratios[tail]
    if len(ks) < 2:
        raise SpectralGapError("too few defined ratios to assess convergence")

    window = min(ceil(K / 4), len(ks))
    cesaro = float(ratios[-window:].mean())
    cesaro_error = abs(cesaro - target)

    dev = np.abs(ratios - target)
    exact_floor = 1e-12 * max(1.0, abs(target))
    if dev.max() <= exact_floor:
        return ConvergenceReport(
            passed=cesaro_error <= tol, target=target, cesaro_mean=cesaro,
            cesaro_error=cesaro_error, tol=tol, window=window, decay_rate=0.0,
            spectral_gap=gap, K=K, ratio_ks=tuple(int(k) for k in ks),
            ratios=tuple(map(float, ratios)),
        )

    # fitted per-step contraction of the deviation
    pos = dev > 0
    decay_rate = None
    if pos.sum() >= 2:
        slope = np.polyfit(ks[pos], np.log(dev[pos]), 1)[0]
        decay_rate = float(np.exp(slope))

    bound_ok = True
    if gap < 1.0 - 1e-12:
        # decay is only observable down to the round-off plateau of the
        # series recurrences, so the envelope carries an absolute floor;
        # everything stays in log space (gap**k under/overflows doubles)
        noise_floor = 1e-9 * max(1.0, abs(target))
        half = len(ks) // 2
        tail_ks = ks[half:]
        tail_dev = dev[half:]
        if gap <= 0.0:
            bound_ok = bool((tail_dev <= noise_floor).all())
        else:
            log_gap = np.log(gap)
            head = dev[:half] > 0
            if head.any():
                log_c = float((np.log(dev[:half][head]) - log_gap * ks[:half][head]).max())
            else:
                log_c = np.log(noise_floor)
            log_env = np.log(10.0) + log_c + log_gap * tail_ks
            bound_ok = bool(
                ((tail_dev <= noise_floor)
                 | (np.log(np.maximum(tail_dev, 1e-300)) <= log_env)).all()
            )
    else:
        # no modulus gap and no exact convergence: K cannot resolve the limit
        raise SpectralGapError(
            f"inconclusive: |mu2|/lambda = {gap:.6g} leaves no decay to fit"
        )

    passed = cesaro_error <= tol and bound_ok
    if not passed:
        k_mid = int(ks[-window])
        if gap**k_mid > tol * 1e-2:
            raise SpectralGapError(
                f"inconclusive: expected residual gap**{k_mid} = {gap**k_mid:.3g} "
                f"near tol = {tol:g}; increase K"
            )
    return ConvergenceReport(
        passed=passed, target=target, cesaro_mean=cesaro,
        cesaro_error=cesaro_error, tol=tol, window=window,
        decay_rate=decay_rate, spectral_gap=gap, K=K,
        ratio_ks=tuple(int(k) for k in ks), ratios=tuple(map(float, ratios)),
    )


def closed_walk_trace(g: WeightedDigraph, k: int) -> float:
    """Trace of A**k by repeated multiplication (k = 0 gives n).

    Sanity cross-check for the characteristic polynomial via power sums;
    rooted closed-walk counts converge to the limit constant, not to the
    centrality, so this is never used as a centrality oracle.
    """
    if k < 0:
        raise ParameterError("k must be >= 0")
    if k == 0:
        return float(g.n)
    m = g.weights
    for _ in range(k - 1):
        m = m @ g.weights
    return float(np.trace(m))


def power_sums_from_charpoly(p: np.ndarray, kmax: int) -> np.ndarray:
    """tr(A**k) for k = 1..kmax from det(I - zA) coefficients.

    Newton's identities in generating-function form:
    s_k = -k p_k - sum_{j=1}^{k-1} p_j s_{k-j}.
    """
    p = np.asarray(p, dtype=float)
    deg = len(p) - 1
    s = np.zeros(kmax + 1)
    for k in range(1, kmax + 1):
        acc = k * p[k] if k <= deg else 0.0
        m = min(k - 1, deg)
        if m >= 1:
            acc += float(np.dot(p[1 : m + 1], s[k - m : k][::-1]))
        s[k] = -acc
    return s[1:]
