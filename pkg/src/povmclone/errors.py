"""Exception hierarchy.

Every error raised by the package derives from :class:`PovmCloneError`, which
is itself a :class:`ValueError` so callers validating user input can catch
either.
"""


class PovmCloneError(ValueError):
    """Base class for all package errors."""


class DimensionMismatch(PovmCloneError):
    pass


class LengthMismatch(DimensionMismatch):
    pass


class InvalidParameter(PovmCloneError):
    pass


class OutOfRange(InvalidParameter):
    pass


class NotHermitian(PovmCloneError):
    def __init__(self, asymmetry: float):
        super().__init__(f"matrix is not Hermitian (max asymmetry {asymmetry:.3e})")
        self.asymmetry = asymmetry


class NotPsd(PovmCloneError):
    def __init__(self, min_eigenvalue: float):
        super().__init__(f"matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")
        self.min_eigenvalue = min_eigenvalue


class NotNormalized(PovmCloneError):
    pass


class RankDeficient(PovmCloneError):
    def __init__(self, column: int):
        super().__init__(f"column {column} is linearly dependent on the preceding columns")
        self.column = column


class ZeroProbabilityBlock(PovmCloneError):
    pass


class SingularState(PovmCloneError):
    pass


class NumericalFailure(ArithmeticError):
    """Internal numerical failure (not an input problem)."""


class NoConvergence(NumericalFailure):
    def __init__(self, sweeps: int):
        super().__init__(f"Jacobi iteration did not converge in {sweeps} sweeps")
        self.sweeps = sweeps
