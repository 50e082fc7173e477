"""Exception hierarchy shared by every akverify package."""


class AkverifyError(Exception):
    """Base exception for akverify."""

    pass


class ScalarError(AkverifyError):
    """Base exception for scalar arithmetic problems."""

    pass


class ModeMismatchError(ScalarError):
    """Raised when exact and float scalars meet in one computation."""

    pass


class NegativeRootError(ScalarError):
    """Raised when a square root of a negative value is requested."""

    pass


class ScalarParseError(ScalarError):
    """Raised when a scalar literal cannot be parsed for the active mode."""

    pass


class DimensionError(AkverifyError):
    """Raised on inconsistent shapes or out-of-range access."""

    pass


class NotPositiveDefiniteError(AkverifyError):
    """Raised when a Gram matrix is not symmetric positive definite."""

    pass
