"""Exception hierarchy. The CLI maps the three branches onto exit codes:
ParameterError -> 2, DataError -> 3, NumericalError -> 4."""


class CycleRankError(Exception):
    """Base class for all cyclerank errors."""


class ParameterError(CycleRankError):
    """An argument is outside its documented domain."""


class DataError(CycleRankError):
    """Input data violates a format or consistency contract."""


class NumericalError(CycleRankError):
    """A numerical routine failed or produced out-of-contract values."""


# graph construction
class VertexIndexError(DataError):
    """Vertex index out of range for the graph."""


class DuplicateEdgeError(DataError):
    """The same (src, dst) pair was listed twice."""


class NegativeWeightError(DataError):
    """Negative edge weight without the explicit override."""


# spectral machinery
class ZeroSpectralRadiusError(NumericalError):
    """Spectral radius is zero (nilpotent adjacency); the centrality is undefined."""


class NoConvergenceError(NumericalError):
    """Eigenvalue iteration failed to converge, including the dense fallback."""


class SolverFailureError(NumericalError):
    """Dense eigensolver did not converge."""


class DegenerateEigenvalueError(NumericalError):
    """Dominant eigenvalue has multiplicity > 1 within tolerance."""


# centrality
class LambdaMismatchError(NumericalError):
    """Supplied dominant eigenvalue disagrees with the recomputed one."""


class CentralityBoundsError(NumericalError):
    """Exact centrality fell outside [0, 1] by more than the clamping window."""


class AlphaTooLargeError(ParameterError):
    """Katz parameter alpha with alpha * lambda >= 1."""


class ExponentialOverflowError(NumericalError):
    """Matrix exponential overflowed; retry with a larger divisor."""


# enumeration
class UnsupportedCycleLengthError(ParameterError):
    """Cycle support enumeration only handles lengths 3, 4 and 5."""


# series oracle
class SpectralGapError(NumericalError):
    """Subdominant eigenvalues too close to the dominant one for the
    requested truncation order to resolve convergence."""


# analysis
class DegenerateTruthError(DataError):
    """ROC needs at least one positive and one negative item."""


class InconsistentLabelsError(DataError):
    """Label lists disagree where they must be identical."""


# file I/O
class EdgeFileError(DataError):
    """Malformed line in an edge-list or matrix file."""


class UnresolvedLabelError(DataError):
    """A label does not resolve against the graph."""


class LabelMismatchError(DataError):
    """Row/column or cross-file label sets disagree."""


class NonSquareMatrixError(DataError):
    """Flow matrix is not square."""


class TooFewYearsError(DataError):
    """A temporal directory needs at least two year files."""
