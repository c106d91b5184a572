"""Exception hierarchy shared by all modules."""


class HesseError(Exception):
    """Base class for every error raised by this package."""


class SingularMatrixError(HesseError, ZeroDivisionError):
    pass


class DegenerateFrameError(HesseError):
    """Three points of a supposed projective frame are collinear."""


class EqualPointsError(HesseError):
    pass


class UnsupportedExtensionError(HesseError):
    """An exact computation needs a field extension we cannot represent."""


class NotADivisorError(HesseError):
    pass


class NumericFailure(HesseError):
    """A numeric routine failed to converge or produced large residuals."""


class VerificationError(HesseError):
    """An internal consistency check failed."""


class NotAGroupError(HesseError):
    pass


class ParseError(HesseError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
