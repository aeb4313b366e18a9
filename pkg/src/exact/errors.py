class ExactError(ValueError):
    """Base class for exact linear algebra failures."""


class FieldMismatchError(ExactError):
    pass


class AmbientMismatchError(ExactError):
    pass


class ScalarFormatError(ExactError):
    pass


class NotDiagonalizableError(ExactError):
    pass


class DecompositionError(ExactError):
    """Subspaces do not form a direct sum of the whole space."""


class NotNilpotentError(ExactError):
    pass


class FactorialNotInvertibleError(ExactError):
    """Some k! needed by a truncated exponential vanishes in the field."""
