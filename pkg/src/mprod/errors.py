"""Exception hierarchy for the mprod package.

Every error raised by the library derives from :class:`MprodError`, so callers
can catch one base class. Where a built-in type is the natural fit (index
errors, value errors) the subclass inherits from it as well.
"""


class MprodError(Exception):
    """Base class for all mprod errors."""


class DimensionMismatch(MprodError, ValueError):
    """Operand shapes are incompatible for the requested operation."""


class IndexOutOfRange(MprodError, IndexError):
    """A 1-based tensor index fell outside the valid range."""


class NotFullRank(MprodError, ValueError):
    """The matrix does not have full rank at the requested tolerance."""


class NotPowerOfTwo(MprodError, ValueError):
    """A size that must be a power of two is not."""


class SvdFailure(MprodError, RuntimeError):
    """A singular value decomposition did not converge."""


class ConvergenceFailure(MprodError, RuntimeError):
    """An iterative matrix factorization exceeded its iteration cap."""


class NotSymmetric(MprodError, ValueError):
    """A matrix required to be symmetric is not, beyond tolerance."""


class NotPositiveDefinite(MprodError, ValueError):
    """A matrix required to be positive-definite has non-positive spectrum."""


class Singular(MprodError, ValueError):
    """A matrix inversion hit a pivot below the singularity threshold."""


class NoIdentityTensor(MprodError, ValueError):
    """No identity tensor exists for this map (all-ones fiber unreachable)."""


class SingularSlice(MprodError, ValueError):
    """A transformed-domain frontal slice is not invertible."""


class NotMInvertible(MprodError, ValueError):
    """The slice-wise inverse candidate is inconsistent with the map image."""


class MapKindUnsupported(MprodError, ValueError):
    """The operation is undefined for this kind of full-rank map."""


class NotPPD(MprodError, ValueError):
    """The tensor is not pseudo-positive-definite under the given map."""


class MapNotInvertible(MprodError, ValueError):
    """The operation requires an invertible (square) map."""


class WrongShape(MprodError, ValueError):
    """The tensor does not have the shape this operation requires."""


class BadTruncation(MprodError, ValueError):
    """Truncation rank is outside [1, min(m, n)]."""


class IoError(MprodError, OSError):
    """A file could not be read or written."""


class FormatError(MprodError, ValueError):
    """A file's contents do not match the expected format."""


class ZeroNormCube(MprodError, ValueError):
    """Normalization was requested for a cube with zero Frobenius norm."""


class BadFlag(MprodError, ValueError):
    """A command-line flag has an invalid value."""


class BadChannel(MprodError, ValueError):
    """A snapshot channel index is outside [1, p]."""
