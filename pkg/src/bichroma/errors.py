"""Exception types.

Every error carries an ``exit_code`` used by the command-line front end:
2 for invalid input, 3 for infeasible (monochromatic) input, 4 when a
computation budget is exceeded and 5 for internal invariant violations.
"""


class BichromaError(Exception):
    exit_code = 2


class InputError(BichromaError, ValueError):
    """Malformed or out-of-contract input."""


class TooFewPoints(InputError):
    pass


class DegenerateExtent(InputError):
    pass


class DegenerateOverlap(InputError):
    """Two collinear segments overlap in more than a point."""


class NotGeneralPosition(InputError):
    pass


class GeometryViolation(InputError):
    pass


class InsideHull(InputError):
    pass


class EdgeNotInTree(InputError):
    pass


class BadSize(InputError):
    pass


class ColorConflict(InputError):
    """A point can only see edges whose endpoints all share its color."""


class IoError(BichromaError, OSError):
    pass


class ConfigError(InputError):
    pass


class Monochromatic(BichromaError, ValueError):
    exit_code = 3


class TooLarge(BichromaError):
    exit_code = 4


class InternalError(BichromaError, AssertionError):
    exit_code = 5
