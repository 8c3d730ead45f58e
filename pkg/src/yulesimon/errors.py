"""Exception types raised across the package.

Each class marks one failure kind so callers (and the command-line layer,
which maps them to machine-readable JSON) can tell bad parameters apart
from bad data or a sampler/optimizer that did not converge.
"""


class YuleSimonError(Exception):
    """Base class for all package errors."""


class ParameterError(YuleSimonError, ValueError):
    """A scalar parameter is outside its domain (e.g. rho <= 0)."""


class DataError(YuleSimonError, ValueError):
    """Observed data violate the model support (counts must be integers >= 1)."""


class ConvergenceError(YuleSimonError, RuntimeError):
    """An iterative procedure failed to converge.

    Attributes
    ----------
    last_iterate : float or None
        The final value of the iterate when the procedure gave up.
    iterations : int or None
        Number of iterations completed.
    """

    def __init__(self, message, last_iterate=None, iterations=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.iterations = iterations


class DivergenceError(ConvergenceError):
    """The target has no finite optimum (e.g. all counts equal to one)."""


class DegenerateChainError(YuleSimonError, ValueError):
    """A diagnostic was asked of chains with zero within-chain variance."""


class EncodingError(YuleSimonError, ValueError):
    """Input text is not valid in the expected encoding.

    Attributes
    ----------
    byte_offset : int or None
        Offset of the first undecodable byte.
    """

    def __init__(self, message, byte_offset=None):
        super().__init__(message)
        self.byte_offset = byte_offset
