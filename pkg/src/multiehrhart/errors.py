"""Exception hierarchy shared by all modules."""


class EhrhartError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgumentError(EhrhartError, ValueError):
    pass


class SingularMatrixError(EhrhartError, ArithmeticError):
    pass


class DegenerateRowError(EhrhartError, ValueError):
    pass


class RankDeficientError(EhrhartError, ValueError):
    pass


class DimensionError(EhrhartError, ValueError):
    pass


class InvalidPolytopeError(EhrhartError, ValueError):
    """Raised when an H-representation is unbounded, lower-dimensional or redundant."""


class ChamberError(EhrhartError):
    """The dilation vector leaves the combinatorial-equivalence domain."""


class SamplingError(EhrhartError):
    pass


class FitError(EhrhartError):
    pass


class DependencyError(EhrhartError, KeyError):
    pass


class ParseError(EhrhartError, ValueError):
    pass
