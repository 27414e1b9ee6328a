"""Exception types shared across the package."""


class EqcheckError(Exception):
    """Base class for every error raised by this package."""


class InputError(EqcheckError):
    """A game, profile, machine, or query is structurally invalid."""


class WorkBoundExceeded(EqcheckError):
    """A requested enumeration would exceed the configured work bound."""

    def __init__(self, message, required=None, bound=None):
        super().__init__(message)
        self.required = required
        self.bound = bound


class ParseError(EqcheckError):
    """A document failed to parse.

    `path` is the JSON field path ("$.payoffs[0][1]"); line/column are set
    when the text itself is malformed JSON.
    """

    def __init__(self, path, message, line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        where = path if line is None else f"{path} (line {line}, column {column})"
        super().__init__(f"{where}: {message}")
