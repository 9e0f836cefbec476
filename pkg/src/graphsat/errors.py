class GraphSatError(Exception):
    """Base class for user-facing errors."""


class MalformedMapError(GraphSatError, ValueError):
    pass


class ParseError(GraphSatError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class ReservedLabelError(GraphSatError):
    pass


class ModelError(GraphSatError):
    """Model extraction was handed a graph that violates its preconditions."""
