"""Determinant-based cycle/subgraph centrality for weighted digraphs.

The centrality of a vertex set s on a graph with dominant eigenvalue lam
is det(I - A_rest/lam), the asymptotic fraction of closed-walk flow
intersecting s.  The package bundles the spectral machinery, support
enumeration, a series-based verification oracle, ranking/temporal/ROC
pipelines, and a CLI.
"""

__version__ = "0.1.0"

from .analysis import (
    RocCurve,
    TemporalDataset,
    TemporalTrack,
    TriadLabelRule,
    degree_model_roc,
    roc_from_ranking,
    structural_degrees,
    temporal_track,
    triad_truth,
)
from .centrality import (
    CentralityValue,
    CycleCentralityScorer,
    SigmaScorer,
    VertexCentralityProfile,
    default_exponential_divisor,
    degree_centrality,
    eigenvector_centrality,
    exponential_centrality,
    resolvent_centrality,
    sigma_sum,
    subgraph_centrality,
    subgraph_centrality_approx,
    vertex_centrality_profile,
)
from .errors import (
    AlphaTooLargeError,
    CentralityBoundsError,
    CycleRankError,
    DataError,
    DegenerateEigenvalueError,
    DegenerateTruthError,
    DuplicateEdgeError,
    EdgeFileError,
    ExponentialOverflowError,
    InconsistentLabelsError,
    LabelMismatchError,
    LambdaMismatchError,
    NegativeWeightError,
    NonSquareMatrixError,
    NoConvergenceError,
    NumericalError,
    ParameterError,
    SolverFailureError,
    SpectralGapError,
    TooFewYearsError,
    UnresolvedLabelError,
    UnsupportedCycleLengthError,
    VertexIndexError,
    ZeroSpectralRadiusError,
)
from .graph import (
    VertexSet,
    WeightedDigraph,
    build_graph,
    induced_subgraph,
    remove_vertex_set,
    weighted_degrees,
)
from .series import (
    ConvergenceReport,
    RatioTrace,
    SeriesPair,
    closed_walk_trace,
    hike_series,
    power_sums_from_charpoly,
    ratio_convergence_check,
    viennot_ratio,
)
from .spectral import (
    CharPoly,
    SpectralSummary,
    characteristic_polynomial,
    characteristic_polynomial_exact,
    det_scaled,
    dominant_eigenpair,
    eta,
    full_spectrum,
    spectral_summary,
)
from .supports import (
    FAMILY_KINDS,
    RankedSupports,
    SupportFamily,
    connected_triple_supports,
    cycle_supports,
    enumerate_family,
    pair_supports,
    rank_supports,
    score_supports,
    worker_count,
)
