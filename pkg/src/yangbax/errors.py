"""Exception hierarchy shared by all yangbax modules."""


class YangbaxError(ValueError):
    """Base class for every error raised by the library."""


class AntisymmetryViolation(YangbaxError):
    def __init__(self, i, j, k):
        self.i, self.j, self.k = i, j, k
        super().__init__(f"c_({i},{j})^{k} != -c_({j},{i})^{k}")


class JacobiViolation(YangbaxError):
    def __init__(self, i, j, k, l, value=None):
        self.i, self.j, self.k, self.l = i, j, k, l
        self.value = value
        super().__init__(f"Jacobi identity fails on basis triple ({i},{j},{k}), component {l}: {value}")


class IndexOutOfRange(YangbaxError):
    pass


class DimensionMismatch(YangbaxError):
    pass


class InvalidRepresentation(YangbaxError):
    pass


class EmptyList(YangbaxError):
    pass


class NonSquareFactors(YangbaxError):
    pass


class SpaceMismatch(YangbaxError):
    pass


class ModeMismatch(YangbaxError):
    """Raised when exact and floating scalars meet in one operation."""


class WrongNormSpec(YangbaxError):
    pass


class BadDecomposition(YangbaxError):
    pass


class NotSkewSymmetric(YangbaxError):
    pass


# the cobracket and O-operator checks use the shorter name
NotSkew = NotSkewSymmetric


class ComponentNotRMatrix(YangbaxError):
    pass


class InvarianceViolation(YangbaxError):
    pass


class NotAnOOperator(YangbaxError):
    pass


class PairingUnavailable(YangbaxError):
    pass


class TruncationTooLarge(YangbaxError):
    pass


class ParseError(YangbaxError):
    def __init__(self, message, line=None, column=None, source=None):
        self.line, self.column, self.source = line, column, source
        where = ""
        if source:
            where += f"{source}"
        if line is not None:
            where += f":{line}:{column}"
        super().__init__(f"{where}: {message}" if where else message)


class UsageError(YangbaxError):
    pass
