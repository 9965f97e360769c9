"""Exception types shared across the package."""


class ZcancelError(Exception):
    """Base class for every error raised by the library."""


class InputError(ZcancelError):
    """Malformed input data (literals, JSON documents, CLI specs).

    ``line`` and ``column`` are 1-based when known.
    """

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self):
        if self.line is None:
            return self.message
        return f"{self.line}:{self.column}: {self.message}"


class WeightOverflow(ZcancelError):
    pass


class NotContractible(ZcancelError):
    pass


class NotPseudominimalizable(ZcancelError):
    pass


class InvalidStep(ZcancelError):
    pass


class LevelOutOfRange(ZcancelError):
    pass


class EquivarianceBroken(ZcancelError):
    pass


class NoBranchingFiber(ZcancelError):
    pass


class NotGDF(ZcancelError):
    pass


class UnsupportedBase(ZcancelError):
    pass


class InvalidB0(ZcancelError):
    pass


class MalformedMMForm(ZcancelError):
    pass


class NonIntegral(ZcancelError):
    pass


class NotSingular(ZcancelError):
    pass


class BadParameters(ZcancelError):
    pass
