"""
Exceptions raised by the classifier library.

Every failure the library can report has its own class so the CLI and the
tests can tell them apart. All of them derive from CodeClassificationError.
"""


class CodeClassificationError(Exception):
    """Base class of every error raised by this project."""


class ConfigError(CodeClassificationError):
    """Invalid configuration file or value."""


class MatrixFormatError(CodeClassificationError, ValueError):
    """A matrix text file or row string could not be parsed."""


class DimensionGuardError(CodeClassificationError, ValueError):
    """A matrix or enumeration exceeds the configured size limits."""


class RankDeficientError(CodeClassificationError, ValueError):
    """A generator matrix does not have full row rank."""


class ZeroCodeError(CodeClassificationError, ValueError):
    """An operation that needs a nonzero code received the zero code."""


class InvalidEnumeratorError(CodeClassificationError, ValueError):
    """A weight enumerator is not the enumerator of a linear code."""


class NotACodewordError(CodeClassificationError, ValueError):
    """A vector is zero or does not lie in the code."""


class ReductionInapplicableError(CodeClassificationError, ValueError):
    """The even-code reduction needs an even minimum distance."""


class MissingBoundError(CodeClassificationError, KeyError):
    """An L(k, d⊥) value or an external distance bound is unknown."""


class IncompleteClassificationError(CodeClassificationError):
    """A classification family did not reach an empty level."""


class StarredCellError(CodeClassificationError):
    """Optimal-code counts cannot be derived from a starred table cell."""


class InconsistentDatabaseError(CodeClassificationError):
    """Database contents contradict each other."""


class MissingDatabaseError(CodeClassificationError):
    """A prerequisite code database is not available."""


class MalformedDatabaseError(CodeClassificationError):
    """A CODEDB file cannot be parsed."""


class VersionMismatchError(CodeClassificationError):
    """A CODEDB file was written with an unsupported format version."""


class VerificationError(CodeClassificationError):
    """A CODEDB file parsed but its contents fail verification."""
