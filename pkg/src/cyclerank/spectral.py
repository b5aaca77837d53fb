"""Dense spectral and determinant machinery.

Everything here is a pure function of an immutable graph; scratch arrays
are per-call, so the routines can run concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import (
    DegenerateEigenvalueError,
    NegativeWeightError,
    NoConvergenceError,
    NumericalError,
    ParameterError,
    SolverFailureError,
    ZeroSpectralRadiusError,
)
from .graph import WeightedDigraph

#: relative gap below which the dominant eigenvalue counts as degenerate
SIMPLICITY_RTOL = 1e-10


@dataclass(frozen=True)
class SpectralSummary:
    """Dominant eigenpair plus optional spectrum and limit constant."""

    lam: float
    vector: np.ndarray
    spectrum: Optional[np.ndarray] = None
    eta: Optional[float] = None


@dataclass(frozen=True)
class CharPoly:
    """Coefficients p_0..p_n of det(I - zA) = sum p_j z^j, with p_0 = 1."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z: complex) -> complex:
        return complex(np.polyval(self.coeffs[::-1], z))


def _is_symmetric(w: np.ndarray) -> bool:
    return w.size == 0 or bool((w == w.T).all())


def full_spectrum(g: WeightedDigraph) -> np.ndarray:
    """All n eigenvalues with multiplicity, as complex numbers."""
    if g.n == 0:
        return np.empty(0, dtype=complex)
    try:
        if _is_symmetric(g.weights):
            return np.linalg.eigvalsh(g.weights).astype(complex)
        return np.linalg.eigvals(g.weights)
    except np.linalg.LinAlgError as exc:
        raise SolverFailureError(f"dense eigensolver failed: {exc}") from exc


def _dense_dominant(g: WeightedDigraph, zero_tol: float) -> tuple[float, np.ndarray]:
    """Dominant eigenpair via the full dense solver (power-iteration fallback)."""
    try:
        if _is_symmetric(g.weights):
            vals, vecs = np.linalg.eigh(g.weights)
            vals = vals.astype(complex)
        else:
            vals, vecs = np.linalg.eig(g.weights)
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(f"dense fallback failed: {exc}") from exc
    rho = float(np.abs(vals).max())
    if rho <= zero_tol:
        raise ZeroSpectralRadiusError("spectral radius is zero (nilpotent adjacency)")
    idx = int(np.argmin(np.abs(vals - rho)))
    v = np.real(vecs[:, idx])
    norm = np.linalg.norm(v)
    if norm == 0:
        raise NoConvergenceError("dominant eigenvector has no real part")
    v = v / norm
    if v.sum() < 0:
        v = -v
    return float(vals[idx].real), v


def dominant_eigenpair(
    g: WeightedDigraph, tol: float = 1e-12, max_iter: int = 10_000
) -> tuple[float, np.ndarray]:
    """Spectral radius and unit right Perron vector of a nonnegative graph.

    Shifted power iteration on A + sigma*I with sigma = max row sum, which
    makes the dominant eigenvalue strictly largest in modulus even for
    periodic (bipartite) graphs; the shift is subtracted on return.  Falls
    back to the full dense spectrum when iteration stalls.
    """
    if g.n < 1:
        raise ParameterError("dominant_eigenpair needs at least one vertex")
    if not g.nonnegative:
        raise NegativeWeightError(
            "dominant_eigenpair requires nonnegative weights; use full_spectrum"
        )
    a = g.weights
    sigma = float(a.sum(axis=1).max())
    zero_tol = max(tol, 1e-14) * max(sigma, 1.0) * g.n
    if sigma == 0.0:
        raise ZeroSpectralRadiusError("graph has no edges")
    b = a + sigma * np.eye(g.n)
    x = np.full(g.n, 1.0 / np.sqrt(g.n))
    prev_res = np.inf
    stall = 0
    for _ in range(max_iter):
        y = b @ x
        lam_shifted = float(x @ y)
        res = float(np.linalg.norm(y - lam_shifted * x))
        ny = float(np.linalg.norm(y))
        if ny == 0.0:  # cannot happen for sigma > 0, defensive
            break
        x = y / ny
        if res <= tol * max(1.0, abs(lam_shifted)):
            lam = lam_shifted - sigma
            if lam <= zero_tol:
                raise ZeroSpectralRadiusError(
                    "spectral radius is zero (nilpotent adjacency)"
                )
            return lam, x
        # defective/periodic cases decay like 1/k; hand those to the dense solver
        stall = stall + 1 if res > 0.95 * prev_res else 0
        if stall > 200:
            break
        prev_res = res
    return _dense_dominant(g, zero_tol)


def characteristic_polynomial(g: WeightedDigraph) -> CharPoly:
    """Coefficients of det(I - zA) by the Faddeev-LeVerrier trace recurrence.

    Accumulates in extended precision, which keeps 0/1 graphs accurate
    well past n = 30 and dense weighted graphs to n ~ 20; beyond that the
    recurrence is ill-conditioned, which is documented rather than
    detected.
    """
    a = g.weights.astype(np.longdouble)
    n = g.n
    p = np.zeros(n + 1, dtype=np.longdouble)
    p[0] = 1.0
    m = np.eye(n, dtype=np.longdouble)
    eye = np.eye(n, dtype=np.longdouble)
    for k in range(1, n + 1):
        am = a @ m
        p[k] = -np.trace(am) / k
        m = am + p[k] * eye
    return CharPoly(p)


def characteristic_polynomial_exact(g: WeightedDigraph) -> list[Fraction]:
    """Faddeev-LeVerrier over exact rationals (floats taken as binary rationals).

    Intended for small oracle graphs; cost grows like n**4 with bignum
    coefficient blow-up on top.
    """
    n = g.n
    a = [[Fraction(*float(x).as_integer_ratio()) for x in row] for row in g.weights]
    p = [Fraction(0)] * (n + 1)
    p[0] = Fraction(1)
    m = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        am = [
            [sum((a[i][t] * m[t][j] for t in range(n)), Fraction(0)) for j in range(n)]
            for i in range(n)
        ]
        p[k] = -sum((am[i][i] for i in range(n)), Fraction(0)) / k
        m = [
            [am[i][j] + (p[k] if i == j else Fraction(0)) for j in range(n)]
            for i in range(n)
        ]
    return p


def det_scaled(g: WeightedDigraph, scale: float) -> float:
    """det(I - A/scale) via LU with partial pivoting; exactly 1 for n = 0."""
    if scale <= 0:
        raise ParameterError("scale must be positive")
    n = g.n
    if n == 0:
        return 1.0
    return float(np.linalg.det(np.eye(n) - g.weights / scale))


def _split_dominant(spectrum: np.ndarray, rtol: float = SIMPLICITY_RTOL):
    """Locate the dominant eigenvalue and check it is simple.

    Returns (lam, rest).  Simplicity is judged by complex distance to the
    dominant value, not modulus: a bipartite -lam is a different eigenvalue
    and does not make lam degenerate.
    """
    rho = float(np.abs(spectrum).max())
    if rho == 0.0:
        raise ZeroSpectralRadiusError("spectral radius is zero")
    idx = int(np.argmin(np.abs(spectrum - rho)))
    lam_c = spectrum[idx]
    if abs(lam_c - rho) > 1e-8 * rho:
        raise NumericalError(
            "dominant eigenvalue is not real positive; "
            "nonnegative-weight preconditions are violated"
        )
    rest = np.delete(spectrum, idx)
    if rest.size and np.abs(rest - lam_c).min() <= rtol * rho:
        raise DegenerateEigenvalueError(
            "dominant eigenvalue has multiplicity > 1 within tolerance"
        )
    return float(lam_c.real), rest


def eta(g: WeightedDigraph, imag_rtol: float = 1e-8) -> float:
    """Limit constant: product of (1 - mu/lam) over the non-dominant spectrum.

    Equals lim_{z -> 1/lam} det(I - zA) / (1 - lam*z); computed from the
    eigenproduct because the limit expression is 0/0 there.  Requires a
    simple dominant eigenvalue.
    """
    if g.n < 1:
        raise ParameterError("eta needs at least one vertex")
    lam, rest = _split_dominant(full_spectrum(g))
    prod = complex(np.prod(1.0 - rest / lam)) if rest.size else 1.0 + 0j
    if abs(prod.imag) > imag_rtol * max(1.0, abs(prod)):
        raise NumericalError(f"eta has non-real residue {prod.imag:g}")
    return float(prod.real)


def spectral_summary(g: WeightedDigraph, want_eta: bool = True) -> SpectralSummary:
    """Dominant eigenpair, full spectrum, and (when lam is simple) eta."""
    lam, vec = dominant_eigenpair(g)
    spectrum = full_spectrum(g)
    et = None
    if want_eta:
        try:
            et = eta(g)
        except DegenerateEigenvalueError:
            et = None
    return SpectralSummary(lam=lam, vector=vec, spectrum=spectrum, eta=et)
