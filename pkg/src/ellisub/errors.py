"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: input/validation problems -> 1,
internal consistency failures -> 2, resource guards -> 3.
"""


class EllisubError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(EllisubError):
    """Malformed substitution source text or JSON."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class ValidationError(EllisubError):
    """Input rejected: non-bijective, non-primitive, periodic, not simplified, ..."""


class ResourceLimitError(EllisubError):
    """A configured size cap would be exceeded; computation refused."""


class InternalCheckError(EllisubError):
    """A built-in cross-check failed; indicates a bug, not bad input."""
