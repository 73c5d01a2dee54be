"""
Exception hierarchy shared by every core module
"""


class VertexEnergyError(Exception):
    """Base class for all errors raised by the library"""


# Graph construction and ingestion

class GraphError(VertexEnergyError):
    """Invalid graph input"""


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class Disconnected(GraphError):
    pass


class IndexOutOfRange(GraphError, IndexError):
    pass


class TrivialGraph(GraphError):
    """A single vertex has no edges; every energy theorem needs one"""


class BadParams(GraphError, ValueError):
    pass


class ParseError(GraphError):
    """Malformed edge-list text; carries the 1-based line number"""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class GiveUp(GraphError):
    """Rejection sampling exhausted its retry budget"""


class NotAnEdge(GraphError):
    pass


# Numerical failures

class NumericalError(VertexEnergyError):
    pass


class NoConvergence(NumericalError):
    pass


class QuadratureNoConvergence(NumericalError):
    pass


class NearPole(NumericalError):
    pass


# Geometry and closed forms

class TooLarge(VertexEnergyError):
    """Exhaustive search requested beyond its size cap"""


class IdenticalVertices(VertexEnergyError, ValueError):
    pass


class BadIndex(VertexEnergyError, IndexError):
    pass


class NoClosedForm(VertexEnergyError):
    pass
