"""Exception hierarchy.

Each error carries an ``exit_code`` used by the command-line front end.
"""

from __future__ import annotations


class GeoThickError(Exception):
    exit_code = 65


class CollinearOverlap(GeoThickError):
    """Two collinear segments share more than one point."""


class DuplicatePoint(GeoThickError):
    """Two vertices occupy the same position."""


class DegenerateGeometry(GeoThickError):
    """An edge passes through a vertex or overlaps another edge."""


class TooLarge(GeoThickError):
    exit_code = 2


class OracleBudgetExceeded(GeoThickError):
    exit_code = 2


class ApexQuery(GeoThickError):
    """Membership asked for the apex of a tie-shape."""


class NotCloneable(GeoThickError):
    exit_code = 1


class LiftFailed(GeoThickError):
    exit_code = 1


class VerticesMissing(GeoThickError):
    """The edge-only extension solver got an instance with undrawn vertices."""


class SolverUnavailable(GeoThickError):
    exit_code = 2


class ModelRejected(GeoThickError):
    exit_code = 2


class ParameterOutOfRange(GeoThickError):
    exit_code = 64


class DegenerateScaling(GeoThickError):
    exit_code = 1


class MalformedClause(GeoThickError):
    exit_code = 65


class MalformedInput(GeoThickError):
    """Unparseable input; ``line`` and ``column`` are 1-based when known."""

    exit_code = 65

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
