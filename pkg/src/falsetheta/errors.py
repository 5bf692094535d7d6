"""Exception hierarchy shared by all modules."""


class FalseThetaError(Exception):
    """Base class for errors raised by this package."""


class DomainError(FalseThetaError, ValueError):
    """An argument lies outside the documented domain of an operation."""


class ConvergenceError(FalseThetaError, ArithmeticError):
    """A series or quadrature failed to reach its tolerance within budget."""


class BranchCutError(FalseThetaError, ValueError):
    """An integration path collides with a square-root branch cut."""


class CostGuardError(FalseThetaError, ValueError):
    """A request exceeds a documented cost guard (rank, size, ...)."""
