"""Exception hierarchy for the toolkit."""


class QSEError(Exception):
    """Base class for all toolkit errors."""


class InvalidState(QSEError, ValueError):
    """Input is not a well-formed density matrix (shape, Hermiticity, trace)."""


class NotAState(InvalidState):
    """A coefficient matrix whose reconstructed operator is not positive."""


class InvalidChannel(QSEError, ValueError):
    """A channel record that cannot be parsed."""


class DomainError(QSEError, ValueError):
    pass


class NotTracePreserving(QSEError, ValueError):
    pass


class NotCompletelyPositive(QSEError, ValueError):
    pass


class ZeroProbabilityOutcome(QSEError, ValueError):
    pass


class ProductStateDegenerate(QSEError, ValueError):
    """The reduced state to be normalized is pure, so (2 rho)^(-1/2) diverges."""


class NotANeedle(QSEError, ValueError):
    pass


class NotXState(QSEError, ValueError):
    pass


class NotANeedleState(QSEError, ValueError):
    pass


class DecompositionInfeasible(QSEError, ValueError):
    """The rank-2 split produced components that are not valid states.

    ``diagnostics`` carries the offending state and the intermediate
    quantities for offline analysis.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
