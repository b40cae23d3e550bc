"""Exception hierarchy shared by every module."""


class Lap2Error(Exception):
    """Base class for all expected failures raised by lap2."""


class GraphError(Lap2Error, ValueError):
    pass


class LoopEdge(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class IndexOutOfRange(GraphError, IndexError):
    pass


class Disconnected(GraphError):
    pass


class UnsupportedBicyclic(GraphError):
    """Bicyclic graph whose two cycles share a vertex (theta / figure-eight)."""


class NotUnicyclic(GraphError):
    pass


class NotCyclic(GraphError):
    pass


class NotTree(GraphError):
    pass


class NotBicyclic(GraphError):
    pass


class InvalidSpec(Lap2Error, ValueError):
    pass


class ParseError(Lap2Error, ValueError):
    pass


class ConfigInvalid(Lap2Error, ValueError):
    pass


class TooLarge(Lap2Error, ValueError):
    pass


class DimensionMismatch(Lap2Error, ValueError):
    pass


class ConvergenceFailure(Lap2Error, ArithmeticError):
    pass


class PreconditionFailed(Lap2Error):
    pass


class NoPerfectMatching(PreconditionFailed):
    pass


class GlueUndefined(Lap2Error):
    """y(v) = 0 while x(u) != 0: the scaling formula has no solution."""


class Falsification(Lap2Error):
    """A construction that a theorem guarantees did not produce a certificate.

    These are never swallowed: the harness records them as Fail with the
    offending instance attached.
    """


class ConstructionExhausted(Falsification):
    pass


class PatternFailed(Falsification):
    pass


class CaseExhausted(Falsification):
    pass
