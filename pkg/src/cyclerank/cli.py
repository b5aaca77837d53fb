"""Command-line surface tying the pipelines together.

Subcommands: rank, track, roc, oracle, spectrum.  Exit codes: 0 success,
2 usage error, 4 numerical error, 3 any other data error; a one-line
diagnostic goes to standard error.  Graph files ending in .csv are read
as flow matrices, everything else as edge lists.  CYCLERANK_THREADS caps
the scoring worker pool (default: logical cores).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .analysis import TriadLabelRule, degree_model_roc, roc_from_ranking, temporal_track, triad_truth
from .centrality import (
    CycleCentralityScorer,
    SigmaScorer,
    default_exponential_divisor,
    eigenvector_centrality,
    exponential_centrality,
    resolvent_centrality,
)
from .errors import (
    CycleRankError,
    DegenerateEigenvalueError,
    NumericalError,
    ParameterError,
)
from .fileio import (
    load_edge_list,
    load_edge_pair_set,
    load_flow_matrix,
    load_label_set,
    load_temporal,
    track_metadata,
    write_json,
    write_ranked_csv,
    write_roc_csv,
    write_track_csv,
)
from .graph import WeightedDigraph
from .spectral import dominant_eigenpair, eta
from .supports import FAMILY_KINDS, connected_triple_supports, enumerate_family, rank_supports, score_supports

SIGMA_SCORES = ("sigma-eig", "sigma-resolvent", "sigma-exp")


def _load_graph(path: str) -> WeightedDigraph:
    if path.endswith(".csv"):
        return load_flow_matrix(path)
    return load_edge_list(path)


def _split_labels(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise ParameterError("expected a comma-separated list of labels")
    return names


def _sigma_scorer(g: WeightedDigraph, score: str, alpha: Optional[float],
                  r: Optional[float]) -> SigmaScorer:
    if score == "sigma-eig":
        return SigmaScorer(eigenvector_centrality(g), "sigma-eig")
    if score == "sigma-resolvent":
        if alpha is None:
            lam, _ = dominant_eigenpair(g)
            alpha = 0.5 / lam
        return SigmaScorer(resolvent_centrality(g, alpha),
                           f"sigma-resolvent(alpha={alpha:.6g})")
    if score == "sigma-exp":
        if r is None:
            r = default_exponential_divisor(g)
        return SigmaScorer(exponential_centrality(g, r), f"sigma-exp(r={r:.6g})")
    raise ParameterError(f"unknown sigma score {score!r}")


def cmd_rank(args) -> None:
    g = _load_graph(args.graph)
    family = enumerate_family(g, args.family)
    if args.score == "cycle":
        lam, _ = dominant_eigenpair(g)
        scorer = CycleCentralityScorer(g, lam, q=args.approx)
    else:
        scorer = _sigma_scorer(g, args.score, args.alpha, args.r)
    ranked = rank_supports(g, family, scorer, top_m=args.top, workers=args.workers)
    write_ranked_csv(ranked, g, args.out)


def cmd_track(args) -> None:
    ds = load_temporal(args.temporal)
    subject = ds.graphs[0].vertex_set(_split_labels(args.subject))
    track = temporal_track(ds, subject, reference_kind=args.reference,
                           workers=args.workers)
    write_track_csv(track, args.out)
    sidecar = str(Path(args.out).with_suffix(".json"))
    write_json(track_metadata(track), sidecar)


def _resolve_anchors(g: WeightedDigraph, spec: str) -> list[int]:
    if spec == "auto-top2-eigenvector":
        vec = eigenvector_centrality(g)
        order = np.lexsort((np.arange(g.n), -vec))
        return [int(order[0]), int(order[1])]
    return [g.index_of(name) for name in _split_labels(spec)]


def cmd_roc(args) -> None:
    g = _load_graph(args.graph)
    targets = load_label_set(args.targets, g)
    payload = {"kind": "roc", "model": args.model, "version": __version__}
    if args.model == "degree":
        roc = degree_model_roc(g, targets)
        payload["items"] = g.n
    else:
        if args.immune_edges is None:
            raise ParameterError(f"--immune-edges is required for model {args.model!r}")
        immune = load_edge_pair_set(args.immune_edges, g)
        anchors = _resolve_anchors(g, args.anchors)
        rule = TriadLabelRule.for_graph(g, anchors, targets, immune)
        family, truth = triad_truth(rule, connected_triple_supports(g))
        if args.model == "triad":
            lam, _ = dominant_eigenpair(g)
            scorer = CycleCentralityScorer(g, lam)
            payload["lambda"] = lam
        else:
            scorer = _sigma_scorer(g, args.model, args.alpha, args.r)
        scores = score_supports(g, family, scorer, workers=args.workers)
        roc = roc_from_ranking(scores, truth)
        payload["anchors"] = [g.label_of(i) for i in anchors]
        payload["scorer"] = scorer.describe()
        payload["items"] = len(family)
        payload["positives"] = int(truth.sum())
    payload["auc"] = roc.auc
    payload["discrimination"] = roc.discrimination
    write_roc_csv(roc, args.out)
    write_json(payload, str(Path(args.out).with_suffix(".json")))


def cmd_oracle(args) -> None:
    from .series import ratio_convergence_check

    g = _load_graph(args.graph)
    subject = g.vertex_set(_split_labels(args.subject))
    report = ratio_convergence_check(g, subject, K=args.K, tol=args.tol)
    write_json(
        {
            "kind": "oracle",
            "version": __version__,
            "subject": [g.label_of(i) for i in subject],
            "pass": report.passed,
            "target": report.target,
            "cesaro_mean": report.cesaro_mean,
            "cesaro_error": report.cesaro_error,
            "tol": report.tol,
            "window": report.window,
            "decay_rate": report.decay_rate,
            "spectral_gap": report.spectral_gap,
            "K": report.K,
            "ratio_ks": list(report.ratio_ks),
            "ratios": list(report.ratios),
        },
        args.out,
    )


def cmd_spectrum(args) -> None:
    g = _load_graph(args.graph)
    lam, vec = dominant_eigenpair(g)
    try:
        et = eta(g)
        eta_note = None
    except DegenerateEigenvalueError as exc:
        et = None
        eta_note = str(exc)
    write_json(
        {
            "kind": "spectrum",
            "version": __version__,
            "n": g.n,
            "directed": g.directed,
            "lambda": lam,
            "eta": et,
            "eta_note": eta_note,
            "labels": [g.label_of(i) for i in range(g.n)],
            "eigenvector_centrality": [float(x) for x in vec],
        },
        args.out,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclerank",
        description="Determinant-based cycle/subgraph centrality pipelines.",
    )
    parser.add_argument("--version", action="version", version=f"cyclerank {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    rank = sub.add_parser("rank", help="enumerate a support family and rank it by a score")
    rank.add_argument("--graph", required=True)
    rank.add_argument("--family", required=True, choices=FAMILY_KINDS)
    rank.add_argument("--score", default="cycle", choices=("cycle",) + SIGMA_SCORES)
    rank.add_argument("--alpha", type=float, default=None,
                      help="Katz parameter for sigma-resolvent (default 0.5/lambda)")
    rank.add_argument("--r", type=float, default=None,
                      help="divisor for sigma-exp (default: smallest finite power of 10)")
    rank.add_argument("--approx", type=int, default=None, metavar="Q",
                      help="retain only Q dominant eigenvalues per determinant")
    rank.add_argument("--top", type=int, default=None, metavar="M")
    rank.add_argument("--workers", type=int, default=None)
    rank.add_argument("--out", required=True)
    rank.set_defaults(func=cmd_rank)

    track = sub.add_parser("track", help="temporal track of a subject set vs a reference family")
    track.add_argument("--temporal", required=True, help="directory of <year>.csv flow matrices")
    track.add_argument("--subject", required=True, help="comma-separated vertex labels")
    track.add_argument("--reference", default="cycles4", choices=FAMILY_KINDS)
    track.add_argument("--workers", type=int, default=None)
    track.add_argument("--out", required=True,
                       help="CSV path; the summary ratio goes to the .json sidecar")
    track.set_defaults(func=cmd_track)

    roc = sub.add_parser("roc", help="ROC evaluation of a targeting model")
    roc.add_argument("--graph", required=True)
    roc.add_argument("--targets", required=True, help="file with one target label per line")
    roc.add_argument("--immune-edges", default=None,
                     help="file with labelA<TAB>labelB immune interactions")
    roc.add_argument("--anchors", default="auto-top2-eigenvector",
                     help="'auto-top2-eigenvector' or comma-separated labels")
    roc.add_argument("--model", required=True,
                     choices=("triad", "degree") + SIGMA_SCORES)
    roc.add_argument("--alpha", type=float, default=None)
    roc.add_argument("--r", type=float, default=None)
    roc.add_argument("--workers", type=int, default=None)
    roc.add_argument("--out", required=True,
                     help="CSV of ROC points; auc/discrimination in the .json sidecar")
    roc.set_defaults(func=cmd_roc)

    oracle = sub.add_parser("oracle", help="series-ratio convergence report for a vertex set")
    oracle.add_argument("--graph", required=True)
    oracle.add_argument("--subject", required=True, help="comma-separated vertex labels")
    oracle.add_argument("--K", type=int, default=80, help="series truncation order")
    oracle.add_argument("--tol", type=float, default=1e-4)
    oracle.add_argument("--out", required=True)
    oracle.set_defaults(func=cmd_oracle)

    spectrum = sub.add_parser("spectrum", help="dominant eigenvalue, eta, eigenvector centrality")
    spectrum.add_argument("--graph", required=True)
    spectrum.add_argument("--out", required=True)
    spectrum.set_defaults(func=cmd_spectrum)
    return parser


def run_cli(argv=None) -> int:
    """Parse and run; returns the process exit code instead of raising."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        args.func(args)
        return 0
    except ParameterError as exc:
        _diag(exc)
        return 2
    except NumericalError as exc:
        _diag(exc)
        return 4
    except (CycleRankError, OSError) as exc:
        _diag(exc)
        return 3


def _diag(exc: Exception) -> None:
    text = "; ".join(str(a) for a in exc.args) if exc.args else str(exc)
    print(f"cyclerank: error: {text}", file=sys.stderr)


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
