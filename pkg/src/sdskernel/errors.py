"""Exception hierarchy shared by all modules."""


class GraphError(Exception):
    """Base class for every error raised by this package."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SelfLoopError(ParseError):
    def __init__(self, vertex: int, line: int | None = None):
        self.vertex = vertex
        super().__init__(f"self-loop at vertex {vertex}", line)


class UnknownVertexError(GraphError, KeyError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"unknown vertex {vertex!r}")

    def __str__(self) -> str:
        return self.args[0]


class SizeBoundError(GraphError):
    """A graph exceeds the size bound of an exponential-time routine."""


class InvalidRegionError(GraphError):
    pass


class InvariantError(GraphError):
    """An internal invariant was violated; this indicates a bug."""


class ParameterError(GraphError, ValueError):
    """A generator or command received parameters outside their documented range."""


class NonPlanarError(GraphError):
    """An operation that needs a plane embedding got a non-planar graph."""


class EmbeddingMismatchError(GraphError):
    """An embedding does not describe the graph it is used with."""


class NotDominatingError(GraphError):
    """A vertex set that must dominate the graph does not."""


class NotBipartiteError(GraphError):
    pass


class EmptyPartError(GraphError, ValueError):
    pass
