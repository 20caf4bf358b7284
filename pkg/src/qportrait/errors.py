"""Exception hierarchy.  Every validation failure is also a ``ValueError``."""


class ValidationError(ValueError):
    """Input violates a structural or numerical invariant."""


class NotHermitian(ValidationError):
    def __init__(self, deviation, tol):
        self.deviation = deviation
        super().__init__(f"matrix is not Hermitian: max |H - H^dagger| = {deviation:.3e} > {tol:.1e}")


class TraceNotOne(ValidationError):
    def __init__(self, trace, tol):
        self.trace = trace
        super().__init__(f"trace is {trace:.15g}, expected 1 within {tol:.1e}")


class NegativeEigenvalue(ValidationError):
    def __init__(self, value, tol):
        self.value = value
        super().__init__(f"smallest eigenvalue {value:.15g} is below -{tol:.1e}")


class DomainError(ValidationError):
    """A matrix function was asked for a value outside its real domain."""


class ConvergenceError(ArithmeticError):
    """The Jacobi iteration did not converge within the sweep limit."""
