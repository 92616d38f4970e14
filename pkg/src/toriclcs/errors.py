"""Exception hierarchy shared by every module."""


class ToricError(ValueError):
    """Base class for all library errors."""


class DimensionMismatch(ToricError):
    pass


class ZeroVector(ToricError):
    pass


class DependentInput(ToricError):
    pass


class ZeroNormal(ToricError):
    pass


class NonPrimitiveNormal(ToricError):
    pass


class RedundantNormal(ToricError):
    pass


class NotPointed(ToricError):
    pass


class EmptyInterior(ToricError):
    pass


class TooLarge(ToricError):
    pass


class NotGood(ToricError):
    """Raised when an operation needs a good cone. Carries the report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class BadPeriod(ToricError):
    pass


class BadScale(ToricError):
    pass


class NotCompactSlice(ToricError):
    pass


class ZeroPoint(ToricError):
    pass


class NotInCone(ToricError):
    pass


class SearchBudgetExceeded(ToricError):
    pass


class BadGrid(ToricError):
    pass


class BadEps(ToricError):
    pass


class EpsTooLarge(ToricError):
    pass


class CycleGuardTripped(RuntimeError):
    pass


class CertificateError(AssertionError):
    """An internally produced witness or certificate failed re-verification."""


class SpecError(ToricError):
    """Problems with a JSON cone spec."""


class MalformedJson(SpecError):
    pass


class MissingField(SpecError):
    pass


class BadFieldType(SpecError):
    pass


class ValidationFailed(SpecError):
    def __init__(self, message, cause=None):
        super().__init__(message)
        self.cause = cause
