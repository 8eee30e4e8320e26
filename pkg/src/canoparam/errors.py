"""Exception hierarchy shared by all modules."""


class CanoparamError(Exception):
    """Base class for every error raised by canoparam."""


class ContourError(CanoparamError, ValueError):
    """Raised for input that cannot form a valid contour."""


class TooFewPoints(ContourError):
    pass


class NonFiniteCoordinate(ContourError):
    pass


class ParameterOutOfRange(CanoparamError, ValueError):
    pass


class DegenerateAngle(CanoparamError, ValueError):
    pass


class DegenerateTangent(CanoparamError, ValueError):
    """The angle-bisecting tangent is undefined (the curve reverses on itself)."""


class InconsistentCounts(CanoparamError, ValueError):
    pass


class ZeroTotalWeight(CanoparamError, ValueError):
    """The weight integrand vanishes identically, so no map can be normalized."""


class CountMismatch(CanoparamError, ValueError):
    pass


class FileFormatError(CanoparamError, ValueError):
    """Malformed contour, landmark or angle file.

    ``location`` carries a human readable position such as ``"line 3"``.
    """

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
