"""Exception hierarchy shared by every picardkit module."""


class PicardkitError(Exception):
    """Base class for all library errors."""


class FactorOne(PicardkitError, ValueError):
    pass


class LengthMismatch(PicardkitError, ValueError):
    pass


class IllDefinedHom(PicardkitError, ValueError):
    pass


class CompositionMismatch(PicardkitError, ValueError):
    pass


class Mismatch(PicardkitError, ValueError):
    pass


class PresentationMismatch(PicardkitError, ValueError):
    pass


class InfiniteGroup(PicardkitError):
    """An exhaustive operation was asked to run over an infinite group."""


class SearchTooLarge(PicardkitError):
    """An exhaustive search would exceed the configured budget."""


class BudgetExceeded(PicardkitError):
    pass


class NotNormalized(PicardkitError, ValueError):
    pass


class TorsionViolation(PicardkitError, ValueError):
    pass


class InvalidCocycle(PicardkitError, ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidFunctor(PicardkitError, ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotPermutative(PicardkitError, ValueError):
    pass


class SchemaError(PicardkitError, ValueError):
    """Malformed input document; ``location`` points at the offending field."""

    def __init__(self, message, location=""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)
