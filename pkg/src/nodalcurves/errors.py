"""Exception hierarchy.

The CLI maps each family to an exit code: invalid input (2), degenerate
geometry (3), inconclusive search (4).
"""


class NodalError(Exception):
    exit_code = 1


class InvalidInput(NodalError, ValueError):
    exit_code = 2


class FieldMismatch(InvalidInput):
    pass


class HypothesisViolation(InvalidInput):
    """Parameters fall outside the hypotheses of the result being applied."""


class DegenerateGeometry(NodalError):
    exit_code = 3


class SurfaceSingular(DegenerateGeometry):
    def __init__(self, message, singular_points=(), curve_points=()):
        super().__init__(message)
        self.singular_points = list(singular_points)
        self.curve_points = list(curve_points)


class InconclusiveSearch(NodalError):
    exit_code = 4
