"""Exception taxonomy shared across the package.

Everything raised on purpose derives from ClubenchError so callers (and
the CLI) can distinguish framework errors from genuine bugs.
"""


class ClubenchError(Exception):
    """Base class for all errors raised by clubench."""


class MissingRoot(ClubenchError):
    """A data or results root directory does not exist."""


class MissingDataset(ClubenchError):
    """The requested battery/dataset files are absent."""


class ParseError(ClubenchError):
    """A data, labels, or result file is malformed."""


class LabelError(ClubenchError):
    """A label vector violates the reference-labelling invariants."""


class InvariantError(ClubenchError):
    """A domain object fails its type invariants."""


class LengthMismatch(ClubenchError):
    """Two label vectors that must be aligned have different lengths."""


class AllNoise(ClubenchError):
    """Noise filtering left no points to compare."""


class NotSquare(ClubenchError):
    """A matrix must be square for this operation."""


NonSquare = NotSquare


class NonFinite(ClubenchError):
    """An input matrix contains NaN or infinite entries."""


class EmptyRow(ClubenchError):
    """A confusion-matrix row has a zero sum."""


class TooFewPoints(ClubenchError):
    """The comparison needs at least two points."""


class KMismatch(ClubenchError):
    """Predicted and reference cluster counts differ where they must match."""


class MissingK(ClubenchError):
    """No stored partition exists for a required cluster count."""


class BadK(ClubenchError):
    """Requested cluster count is outside 2..n."""


class BadDimension(ClubenchError):
    """The dataset does not have enough coordinates for this operation."""


class MissingLabels(ClubenchError):
    """The requested reference labelling index does not exist."""


class ExternalMethodError(ClubenchError):
    """An external clustering tool failed, timed out, or wrote bad output."""
