"""Evaluation pipelines: temporal tracking of a subject subgraph against a
reference family, and ROC evaluation of targeting models."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .centrality import CycleCentralityScorer
from .errors import (
    DataError,
    DegenerateTruthError,
    InconsistentLabelsError,
    ParameterError,
)
from .graph import VertexSet, WeightedDigraph
from .spectral import dominant_eigenpair
from .supports import RankedSupports, SupportFamily, enumerate_family, score_supports


@dataclass(frozen=True)
class TemporalDataset:
    """One graph per year over a shared label space."""

    years: tuple[int, ...]
    graphs: tuple[WeightedDigraph, ...]

    def __post_init__(self):
        if len(self.years) != len(self.graphs):
            raise ParameterError("years and graphs must align")
        if list(self.years) != sorted(set(self.years)):
            raise ParameterError("years must be strictly increasing")
        if not self.graphs:
            raise ParameterError("dataset is empty")
        first = self.graphs[0]
        for g in self.graphs:
            if g.n != first.n or g.labels != first.labels:
                raise InconsistentLabelsError(
                    "all years must share vertex count and label order"
                )
            if not g.nonnegative:
                raise DataError("temporal graphs must be nonnegative")

    @classmethod
    def from_mapping(cls, by_year: dict[int, WeightedDigraph]) -> "TemporalDataset":
        years = tuple(sorted(by_year))
        return cls(years=years, graphs=tuple(by_year[y] for y in years))

    @property
    def labels(self) -> Optional[tuple[str, ...]]:
        return self.graphs[0].labels


@dataclass(frozen=True)
class TemporalTrack:
    """Per-year centrality of a subject set against a reference family.

    ``summary_ratio`` divides the time average of the subject values by
    the unweighted time average of the yearly family means (recorded in
    ``averaging`` since the family size may drift across years).
    """

    subject: VertexSet
    subject_labels: Optional[tuple[str, ...]]
    years: tuple[int, ...]
    values: np.ndarray
    lambdas: np.ndarray
    reference_kind: str
    reference_mean: np.ndarray
    reference_std: np.ndarray
    reference_size: tuple[int, ...]
    summary_ratio: float
    averaging: str = "unweighted-mean-of-yearly-means"


def temporal_track(
    ds: TemporalDataset,
    subject: Iterable[int],
    reference_kind: str = "cycles4",
    workers: Optional[int] = None,
) -> TemporalTrack:
    """Track c_t(subject) year by year with per-year dominant eigenvalues.

    The reference family is re-enumerated on each year's graph (its
    membership may change with the edges) and the per-year mean/std are
    population statistics over all its members.
    """
    n = ds.graphs[0].n
    subject = VertexSet(subject, n)
    values = np.empty(len(ds.years))
    lambdas = np.empty(len(ds.years))
    ref_mean = np.empty(len(ds.years))
    ref_std = np.empty(len(ds.years))
    ref_size = []
    for t, g in enumerate(ds.graphs):
        lam, _ = dominant_eigenpair(g)
        scorer = CycleCentralityScorer(g, lam)
        values[t] = scorer(subject)
        lambdas[t] = lam
        family = enumerate_family(g, reference_kind)
        if len(family) == 0:
            raise DataError(
                f"reference family {reference_kind!r} is empty in year {ds.years[t]}"
            )
        scores = score_supports(g, family, scorer, workers=workers)
        ref_mean[t] = float(scores.mean())
        ref_std[t] = float(scores.std())  # population std
        ref_size.append(len(family))
    ratio = float(values.mean() / ref_mean.mean())
    labels = None
    if ds.labels is not None:
        labels = tuple(ds.labels[i] for i in subject)
    return TemporalTrack(
        subject=subject, subject_labels=labels, years=ds.years, values=values,
        lambdas=lambdas, reference_kind=reference_kind, reference_mean=ref_mean,
        reference_std=ref_std, reference_size=tuple(ref_size), summary_ratio=ratio,
    )


@dataclass(frozen=True)
class RocCurve:
    """ROC points (FPR, TPR) from (0,0) to (1,1) with area summaries.

    ``auc`` is the trapezoidal area under the curve; ``discrimination``
    the absolute area between the curve and the diagonal.
    """

    points: np.ndarray
    auc: float
    discrimination: float


def _segment_abs_area(x0, y0, x1, y1) -> float:
    """Integral of |y(x) - x| over one linear segment, splitting at a
    diagonal crossing."""
    dx = x1 - x0
    if dx == 0.0:
        return 0.0
    d0 = y0 - x0
    d1 = y1 - x1
    if d0 * d1 >= 0.0:
        return dx * (abs(d0) + abs(d1)) / 2.0
    t = d0 / (d0 - d1)
    return dx * (t * abs(d0) + (1.0 - t) * abs(d1)) / 2.0


def roc_from_ranking(
    ranked: Union[RankedSupports, Sequence[float], np.ndarray],
    truth: Sequence[bool],
) -> RocCurve:
    """ROC sweep over descending scores, with tie groups collapsed.

    Items sharing a score advance TP and FP simultaneously, producing one
    diagonal segment per group, so the curve does not depend on the input
    order of tied items.
    """
    scores = ranked.scores if isinstance(ranked, RankedSupports) else ranked
    scores = np.asarray(scores, dtype=float)
    truth = np.asarray(truth, dtype=bool)
    if scores.shape != truth.shape or scores.ndim != 1:
        raise ParameterError("scores and truth must be aligned 1-d sequences")
    pos = int(truth.sum())
    neg = int(len(truth) - pos)
    if pos == 0 or neg == 0:
        raise DegenerateTruthError("need at least one positive and one negative item")

    order = np.argsort(-scores, kind="stable")
    s = scores[order]
    t = truth[order]
    points = [(0.0, 0.0)]
    tp = fp = 0
    i = 0
    while i < len(s):
        j = i
        while j < len(s) and s[j] == s[i]:
            j += 1
        tp += int(t[i:j].sum())
        fp += (j - i) - int(t[i:j].sum())
        points.append((fp / neg, tp / pos))
        i = j
    pts = np.asarray(points)
    dx = np.diff(pts[:, 0])
    auc = float((dx * (pts[:-1, 1] + pts[1:, 1]) / 2.0).sum())
    discrimination = float(
        sum(_segment_abs_area(*pts[i], *pts[i + 1]) for i in range(len(pts) - 1))
    )
    return RocCurve(points=pts, auc=auc, discrimination=discrimination)


@dataclass(frozen=True)
class TriadLabelRule:
    """Truth rule for anchored triads.

    A triad is kept when it contains at least one anchor; it is a true
    positive when it has a target member distinct from the anchors it
    contains and at least one of its induced edges is flagged immune.
    """

    anchors: VertexSet
    targets: frozenset[int]
    immune_edges: frozenset[tuple[int, int]]

    @classmethod
    def for_graph(
        cls,
        g: WeightedDigraph,
        anchors: Iterable[int],
        targets: Iterable[int],
        immune_edges: Iterable[tuple[int, int]],
    ) -> "TriadLabelRule":
        anchors = VertexSet(anchors, g.n)
        targets = frozenset(VertexSet(targets, g.n))
        pairs = set()
        for a, b in immune_edges:
            a, b = int(a), int(b)
            pair = (min(a, b), max(a, b))
            VertexSet(pair, g.n)
            if g.weights[pair[0], pair[1]] == 0 and g.weights[pair[1], pair[0]] == 0:
                raise DataError(
                    f"immune pair {pair} is not an edge of the graph"
                )
            pairs.add(pair)
        return cls(anchors=anchors, targets=targets, immune_edges=frozenset(pairs))


def triad_truth(
    rule: TriadLabelRule, family: SupportFamily
) -> tuple[SupportFamily, np.ndarray]:
    """Filter a triad family to anchored triads and label each one.

    Anchoring is by union: a triad containing either anchor is kept.
    """
    if family.arity != 3:
        raise ParameterError("triad_truth expects a family of 3-vertex supports")
    anchors = set(rule.anchors)
    kept_rows = []
    labels = []
    for row in family.supports.tolist():
        members = set(row)
        present = members & anchors
        if not present:
            continue
        kept_rows.append(row)
        extra_target = any(m in rule.targets for m in members - present)
        immune = False
        for idx in range(3):
            for jdx in range(idx + 1, 3):
                pair = (min(row[idx], row[jdx]), max(row[idx], row[jdx]))
                if pair in rule.immune_edges:
                    immune = True
        labels.append(extra_target and immune)
    kept = np.asarray(kept_rows, dtype=np.int32).reshape(-1, 3)
    return SupportFamily(family.kind, kept), np.asarray(labels, dtype=bool)


def structural_degrees(g: WeightedDigraph) -> np.ndarray:
    """Unweighted degree: neighbor count (in+out for directed graphs)."""
    nz = g.weights != 0
    if g.directed:
        return (nz.sum(axis=0) + nz.sum(axis=1)).astype(float)
    return nz.sum(axis=1).astype(float)


def degree_model_roc(g: WeightedDigraph, target_set: Iterable[int]) -> RocCurve:
    """Baseline model: rank vertices by plain degree, truth = is targeted."""
    targets = VertexSet(target_set, g.n)
    if not targets or len(targets) == g.n:
        raise DegenerateTruthError("target set must be nonempty and proper")
    truth = np.zeros(g.n, dtype=bool)
    truth[list(targets)] = True
    return roc_from_ranking(structural_degrees(g), truth)
