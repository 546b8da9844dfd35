"""Exception types shared by the operator modules."""


class NablaABError(Exception):
    """Base class for errors raised by this package."""


class DomainError(NablaABError, ValueError):
    """A parameter lies outside the region where an operator is defined or
    its defining series converges."""


class ConvergenceError(NablaABError, ArithmeticError):
    """A series did not meet its tail bound within the term budget."""


class GridError(NablaABError, ValueError):
    """Signals have incompatible grids, or an evaluation point is off-grid."""
