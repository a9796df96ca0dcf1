"""Exception hierarchy shared across the package."""


class ChiralCheckError(Exception):
    """Base class for all errors raised by chiralcheck."""


class SingularMatrixError(ChiralCheckError, ValueError):
    """A square matrix that had to be inverted has determinant zero."""


class InfiniteHomologyError(ChiralCheckError, ValueError):
    """A presentation matrix presents a group of positive rank."""


class SingularFormError(ChiralCheckError, ValueError):
    """A pairing on a finite group fails to be nonsingular."""


class OracleBoundExceeded(ChiralCheckError, ValueError):
    """The brute-force search was asked to enumerate too many elements."""


class InvalidKnotDataError(ChiralCheckError, ValueError):
    """Input that cannot come from a knot (even determinant, zero Alexander value, ...)."""


class InconsistentKnotDataError(InvalidKnotDataError):
    """Two routes to the same invariant disagree for one record."""


class ParseError(ChiralCheckError, ValueError):
    """Malformed textual input.

    ``line`` and ``column`` are 1-based when known and ``None`` otherwise.
    """

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
