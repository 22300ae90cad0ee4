"""Exception hierarchy shared across the package."""


class MisolabError(Exception):
    """Base class for all library errors."""


class ModeMismatchError(MisolabError, TypeError):
    """Exact and float scalars were mixed in one expression."""


class DimensionMismatchError(MisolabError, ValueError):
    """Operands have incompatible dimensions."""


class WindowTooShortError(MisolabError, ValueError):
    """An orbit window is too short for the requested analysis."""


class NotPolynomialError(MisolabError, ValueError):
    """Reconstruction was requested for a sequence that is not polynomial
    within its window."""


class PreconditionError(MisolabError, ValueError):
    """A documented operation precondition was violated."""


class EigenHintError(MisolabError, ValueError):
    """Exact-mode eigenvalue hints are missing or do not cover the spectrum."""


class SpecFileError(MisolabError, ValueError):
    """An operator specification file could not be parsed."""


class InternalCheckError(MisolabError, AssertionError):
    """Two independent computations of the same quantity disagreed."""
