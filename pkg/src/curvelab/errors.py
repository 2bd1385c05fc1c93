"""Exception hierarchy shared by every curvelab module."""


class CurvelabError(Exception):
    """Base class for all errors raised by curvelab."""


class DimensionMismatch(CurvelabError, ValueError):
    pass


class TooFewPoints(CurvelabError, ValueError):
    pass


class DuplicatePoints(CurvelabError, ValueError):
    """Two consecutive data points coincide.

    ``index`` is the position of the second point of the offending pair.
    """

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class NonFiniteValue(CurvelabError, ValueError):
    pass


class IndexTooLarge(CurvelabError, ValueError):
    pass


class KindMismatch(CurvelabError, ValueError):
    pass


class OutOfDomain(CurvelabError, ValueError):
    pass


class ZeroVelocity(CurvelabError, ArithmeticError):
    pass


class ZeroCurvature(CurvelabError, ArithmeticError):
    pass


class DegenerateCurve(CurvelabError):
    """Every segment of the curve is straight, so the maximum is not isolated.

    The (flagged) report is attached as ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
