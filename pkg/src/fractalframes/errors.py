"""Exception and warning types raised across the package."""


class FractalFramesError(Exception):
    """Base class for all package errors."""


class NotExpanding(FractalFramesError, ValueError):
    pass


class DuplicateDigit(FractalFramesError, ValueError):
    pass


class ZeroNotInDigits(UserWarning):
    """Digit set lacks the origin. Most results still hold; some shortcuts assume it."""


class BudgetExceeded(FractalFramesError, RuntimeError):
    pass


class LevelZero(FractalFramesError, ValueError):
    pass


class MaxTermsExceeded(FractalFramesError, RuntimeError):
    pass


class NotSimilarity(FractalFramesError, ValueError):
    pass


class WrongFamily(FractalFramesError, ValueError):
    pass


class SingularMatrix(FractalFramesError, ValueError):
    pass


class SizeMismatch(FractalFramesError, ValueError):
    pass


class EmptySet(FractalFramesError, ValueError):
    pass


class EmptyAfterExclusion(FractalFramesError, ValueError):
    pass


class DegenerateFit(FractalFramesError, ValueError):
    pass


class InvalidBounds(FractalFramesError, ValueError):
    pass


class NonHermitianDrift(FractalFramesError, RuntimeError):
    pass


class ParseError(FractalFramesError, ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class SchemaError(FractalFramesError, ValueError):
    def __init__(self, message, key=None):
        self.key = key
        super().__init__(message)
