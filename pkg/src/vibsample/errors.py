"""Exception hierarchy shared across the package."""


class VibsampleError(Exception):
    """Base class for all package errors."""


class ModelError(VibsampleError):
    """Invalid or inconsistent molecular model input."""


class MissingFieldError(ModelError):
    pass


class DimensionMismatchError(ModelError):
    pass


class NonPositiveFrequencyError(ModelError):
    pass


class NotOrthogonalError(ModelError):
    pass


class InconsistentUnitsError(ModelError):
    pass


class NotBlockDiagonalError(ModelError):
    pass


class SingularJError(VibsampleError):
    """Frequency-scaled rotation matrix is numerically singular."""


class QuantaLimitExceededError(VibsampleError):
    pass


class PhotonNumberMismatchError(VibsampleError):
    pass


class SizeLimitExceededError(VibsampleError):
    pass


class DimensionTooLargeError(VibsampleError):
    pass


class EmptyDistributionError(VibsampleError):
    pass


class ExplosionGuardError(VibsampleError):
    """State enumeration would exceed the configured result bound."""
