"""Exception types raised across the package."""


class DegenerateGauge(ValueError):
    """The second point is parallel to the first, so its azimuth is undefined."""


class DomainError(ValueError):
    """Argument outside [-1, 1] by more than rounding slack."""


class NormError(ValueError):
    """A point is not a unit vector."""


class LineSearchStall(RuntimeError):
    """Backtracking never produced a finite objective value."""


class ConvergenceError(RuntimeError):
    """Singular value decomposition failed to converge."""


class PointFileError(ValueError):
    """Malformed point file; ``lineno`` names the offending line (1-based)."""

    def __init__(self, message, lineno=None):
        super().__init__(message)
        self.lineno = lineno
