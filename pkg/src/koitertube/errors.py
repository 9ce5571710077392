"""Exception hierarchy for koitertube."""


class KoiterError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateCurve(KoiterError):
    pass


class SelfIntersection(KoiterError):
    pass


class OrientationError(KoiterError):
    pass


class GridTooCoarse(KoiterError):
    pass


class GridMismatch(KoiterError):
    pass


class TooFewZStations(KoiterError):
    pass


class InvalidMaterial(KoiterError):
    def __init__(self, field, message=None):
        self.field = field
        super().__init__(message or f"invalid material parameter {field!r}")


class InvalidRadius(KoiterError):
    pass


class SingularSystem(KoiterError):
    def __init__(self, message, matrix=None, condition=None):
        super().__init__(message)
        self.matrix = matrix
        self.condition = condition


class NonAxialForce(KoiterError):
    pass


class NonTransverseLoad(KoiterError):
    pass


class ParseError(KoiterError):
    def __init__(self, message, key=None, line=None):
        self.key = key
        self.line = line
        super().__init__(message)


class ValidationError(KoiterError):
    def __init__(self, field, message=None):
        self.field = field
        super().__init__(message or f"invalid value for {field!r}")
