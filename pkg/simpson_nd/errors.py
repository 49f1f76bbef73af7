"""Exception hierarchy shared by the library, the CLI and the HTTP blueprints."""


class CubatureError(Exception):
    """Base class for every domain error raised by simpson_nd."""

    def to_dict(self):
        return {"error": type(self).__name__, "message": str(self)}


class IncompatibleScalars(CubatureError):
    """Two exact scalars cannot be combined (distinct radicands, or pi mixed with non-pi)."""


class DimensionMismatch(CubatureError):
    pass


class InvalidRegion(CubatureError):
    pass


class NoVertices(CubatureError):
    pass


class NodeOutsideRegion(CubatureError):
    pass


class NodeNotOnBoundary(CubatureError):
    pass


class RegionMismatch(CubatureError):
    pass


class SingularInterpolation(CubatureError):
    pass


class DenominatorZero(CubatureError):
    pass


class SingularMap(CubatureError):
    pass


class UnsupportedRegion(CubatureError):
    pass


class DegenerateErrors(CubatureError):
    pass


class NotPolynomial(CubatureError):
    pass


class UnknownRule(CubatureError):
    pass


class ExpressionSyntaxError(CubatureError):
    """Malformed integrand expression; `offset` is the byte offset of the bad token."""

    def __init__(self, message, offset, expected=()):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.expected = tuple(expected)

    def to_dict(self):
        data = super().to_dict()
        data["offset"] = self.offset
        data["expected"] = list(self.expected)
        return data
