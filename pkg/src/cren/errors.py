"""Exception types raised by validation and computation routines."""


class ValidationError(ValueError):
    """Base class for rejected inputs."""


class NotSquareError(ValidationError):
    pass


class NotHermitianError(ValidationError):
    pass


class NotPSDError(ValidationError):
    pass


class NegativeEigenvalueError(ValidationError):
    pass


class TraceNotOneError(ValidationError):
    pass


class DimensionMismatchError(ValidationError):
    pass


class NotNormalizedError(ValidationError):
    pass


class ParameterOutOfRangeError(ValidationError):
    pass


class NotSquareBipartitionError(ValidationError):
    pass


class RankOutOfRangeError(ValidationError):
    pass


class DegenerateDimensionError(ValidationError):
    pass


class NotTwoQubitError(ValidationError):
    pass


class NotUnitaryError(ValidationError):
    pass


class NotIsometryError(ValidationError):
    pass


class RankMismatchError(ValidationError):
    pass


class ConfigInvalidError(ValidationError):
    pass


class InternalInconsistencyError(RuntimeError):
    """A computed quantity violated an internal sanity bound.

    Raised instead of silently repairing values that are too far out of
    range to be floating-point noise; it signals a bug in the caller or
    in this library rather than a bad input.
    """


class MalformedFileError(ValueError):
    """State file is not syntactically readable (bad JSON, truncation)."""


class SchemaViolationError(ValueError):
    """State file parses as JSON but does not match the expected schema."""


class ValidationFailureError(ValueError):
    """State file matches the schema but fails physical validation."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
