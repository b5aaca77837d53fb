"""File formats: edge lists, flow matrices, temporal directories, label
sets, and the CSV/JSON result writers.

Interfaces are labels-first: files carry vertex names, the library works
on dense indices, and loaders resolve names in first-appearance order.
All numeric CSV fields use 17 significant digits so doubles round-trip.
"""

from __future__ import annotations

import csv
import json
import os
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from .analysis import RocCurve, TemporalDataset, TemporalTrack
from .errors import (
    DuplicateEdgeError,
    EdgeFileError,
    LabelMismatchError,
    NegativeWeightError,
    NonSquareMatrixError,
    TooFewYearsError,
)
from .graph import VertexSet, WeightedDigraph, build_graph
from .supports import RankedSupports

SCHEMA_VERSION = 1

PathLike = Union[str, os.PathLike]


def fmt17(x: float) -> str:
    """17 significant digits: round-trip-exact for double precision."""
    return format(float(x), ".17g")


# -- edge lists ---------------------------------------------------------

def load_edge_list(path: PathLike) -> WeightedDigraph:
    """Parse an edge-list file into a labeled graph.

    Rows are ``src dst weight`` (whitespace- or comma-separated, detected
    from the first data row), weights strictly positive.  ``#directed`` /
    ``#undirected`` directives set orientation (default directed) and the
    undirected form symmetrizes.  ``#vertex NAME`` pre-registers a label
    (the writer emits these so label order and isolated vertices survive a
    round trip); other ``#`` lines are comments.  An optional header row
    ``src dst weight`` is skipped.  Labels are resolved to dense indices
    in first-appearance order.
    """
    directed = True
    index: dict[str, int] = {}
    edges: list[tuple[int, int, float]] = []
    comma = None

    def resolve(label: str) -> int:
        if label not in index:
            index[label] = len(index)
        return index[label]

    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                directive = line[1:].strip()
                if directive.lower() == "directed":
                    directed = True
                elif directive.lower() == "undirected":
                    directed = False
                elif directive.lower().startswith("vertex"):
                    name = directive[len("vertex"):].strip()
                    if not name:
                        raise EdgeFileError(f"line {lineno}: #vertex needs a name")
                    resolve(name)
                continue
            if comma is None:
                comma = "," in line
            parts = [t.strip() for t in (line.split(",") if comma else line.split())]
            if [t.lower() for t in parts] == ["src", "dst", "weight"]:
                continue
            if len(parts) != 3:
                raise EdgeFileError(f"line {lineno}: expected 3 fields, got {len(parts)}")
            src, dst, wtext = parts
            try:
                weight = float(wtext)
            except ValueError:
                raise EdgeFileError(f"line {lineno}: bad weight {wtext!r}") from None
            if weight < 0:
                raise NegativeWeightError(f"line {lineno}: negative weight {weight:g}")
            if weight == 0:
                raise EdgeFileError(f"line {lineno}: weight must be positive")
            edges.append((resolve(src), resolve(dst), weight))
    labels = tuple(index)
    try:
        return build_graph(len(labels), edges, directed=directed, labels=labels)
    except DuplicateEdgeError as exc:
        raise DuplicateEdgeError(f"{path}: {exc}") from exc


def write_edge_list(g: WeightedDigraph, path: PathLike) -> None:
    """Inverse of load_edge_list; labels and isolated vertices survive."""
    w = g.weights
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("#directed\n" if g.directed else "#undirected\n")
        for i in range(g.n):
            fh.write(f"#vertex {g.label_of(i)}\n")
        fh.write("src dst weight\n")
        ii, jj = np.nonzero(w if g.directed else np.triu(w))
        for i, j in zip(ii.tolist(), jj.tolist()):
            fh.write(f"{g.label_of(i)} {g.label_of(j)} {fmt17(w[i, j])}\n")


# -- flow matrices ------------------------------------------------------

def load_flow_matrix(path: PathLike) -> WeightedDigraph:
    """Square CSV flow matrix: blank corner, labels on both axes, cell
    (i, j) = flow i -> j.  Diagonal self-flows are kept verbatim."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows:
        raise EdgeFileError(f"{path}: empty flow matrix")
    header = rows[0]
    if header[0].strip() != "":
        raise EdgeFileError(f"{path}: top-left header cell must be blank")
    labels = tuple(cell.strip() for cell in header[1:])
    n = len(labels)
    if len(rows) - 1 != n:
        raise NonSquareMatrixError(f"{path}: {n} columns but {len(rows) - 1} rows")
    w = np.zeros((n, n))
    for i, row in enumerate(rows[1:]):
        if len(row) != n + 1:
            raise NonSquareMatrixError(
                f"{path}: row {i + 2} has {len(row)} cells, expected {n + 1}"
            )
        if row[0].strip() != labels[i]:
            raise LabelMismatchError(
                f"{path}: row label {row[0].strip()!r} != column label {labels[i]!r}"
            )
        for j, cell in enumerate(row[1:]):
            try:
                value = float(cell)
            except ValueError:
                raise EdgeFileError(f"{path}: row {i + 2}: bad value {cell!r}") from None
            if value < 0:
                raise NegativeWeightError(f"{path}: row {i + 2}: negative flow {value:g}")
            w[i, j] = value
    return WeightedDigraph(w, directed=True, labels=labels)


def write_flow_matrix(g: WeightedDigraph, path: PathLike) -> None:
    labels = [g.label_of(i) for i in range(g.n)]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([""] + labels)
        for i in range(g.n):
            writer.writerow([labels[i]] + [fmt17(x) for x in g.weights[i]])


# -- temporal directories ------------------------------------------------

def load_temporal(directory: PathLike) -> TemporalDataset:
    """Directory of <year>.csv flow matrices with identical label order."""
    directory = Path(directory)
    by_year: dict[int, WeightedDigraph] = {}
    for entry in sorted(directory.glob("*.csv")):
        if not entry.stem.isdigit():
            continue
        by_year[int(entry.stem)] = load_flow_matrix(entry)
    if len(by_year) < 2:
        raise TooFewYearsError(
            f"{directory}: need at least 2 <year>.csv files, found {len(by_year)}"
        )
    labels = None
    for year in sorted(by_year):
        if labels is None:
            labels = by_year[year].labels
        elif by_year[year].labels != labels:
            raise LabelMismatchError(f"{directory}: labels differ in {year}.csv")
    return TemporalDataset.from_mapping(by_year)


# -- label sets ----------------------------------------------------------

def load_label_set(path: PathLike, g: WeightedDigraph) -> VertexSet:
    """One vertex label per line, resolved against the graph."""
    names = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if line and not line.startswith("#"):
                names.append(line)
    return g.vertex_set(names)


def load_edge_pair_set(path: PathLike, g: WeightedDigraph) -> frozenset[tuple[int, int]]:
    """Tab-separated label pairs, one per line, as unordered index pairs."""
    pairs = set()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = [t.strip() for t in line.split("\t")]
            if len(parts) != 2:
                raise EdgeFileError(
                    f"{path}: line {lineno}: expected 'labelA<TAB>labelB'"
                )
            a, b = g.index_of(parts[0]), g.index_of(parts[1])
            pairs.add((min(a, b), max(a, b)))
    return frozenset(pairs)


# -- result writers ------------------------------------------------------

def support_label(g: WeightedDigraph, support: Iterable[int]) -> str:
    return "|".join(g.label_of(i) for i in support)


def write_ranked_csv(ranked: RankedSupports, g: WeightedDigraph, path: PathLike) -> None:
    """Columns: support (labels joined by '|'), score, method."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["support", "score", "method"])
        for row, score in zip(ranked.supports.tolist(), ranked.scores.tolist()):
            writer.writerow([support_label(g, row), fmt17(score), ranked.method])


def write_track_csv(track: TemporalTrack, path: PathLike) -> None:
    """Columns: year, subject, reference_mean, reference_std, lambda."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["year", "subject", "reference_mean", "reference_std", "lambda"])
        for t, year in enumerate(track.years):
            writer.writerow([
                year,
                fmt17(track.values[t]),
                fmt17(track.reference_mean[t]),
                fmt17(track.reference_std[t]),
                fmt17(track.lambdas[t]),
            ])


def write_roc_csv(roc: RocCurve, path: PathLike) -> None:
    """Columns: fpr, tpr."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["fpr", "tpr"])
        for x, y in roc.points.tolist():
            writer.writerow([fmt17(x), fmt17(y)])


def write_json(payload: dict, path: PathLike) -> None:
    """Single JSON document with a schema-version field, stable key order."""
    doc = {"schema_version": SCHEMA_VERSION}
    doc.update(payload)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def track_metadata(track: TemporalTrack) -> dict:
    """JSON sidecar for a temporal track: summary ratio plus run decisions."""
    return {
        "kind": "temporal_track",
        "subject": list(track.subject_labels or map(str, track.subject)),
        "reference_kind": track.reference_kind,
        "reference_size": list(track.reference_size),
        "summary_ratio": track.summary_ratio,
        "averaging": track.averaging,
        "years": list(track.years),
        "lambda_per_year": [float(x) for x in track.lambdas],
        "diagonal_self_flows": "kept",
    }
