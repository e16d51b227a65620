"""Exception hierarchy shared by every preplab module."""


class PreplabError(Exception):
    """Base class for all errors raised by preplab."""


class ContractError(PreplabError, TypeError):
    """An operation was called outside its contract (e.g. mixed rings)."""


class InvalidInputError(PreplabError, ValueError):
    """Input data violates a stated precondition."""


class ResourceError(PreplabError):
    """A configured degree or step cap would be exceeded.

    ``n`` names the iterate (or step) at which the cap is hit.
    """

    def __init__(self, message, n=None):
        super().__init__(message)
        self.n = n


class NotAffineError(InvalidInputError):
    """A bivariate polynomial has a z-coefficient of degree >= 2 in t."""


class FieldObstructionError(PreplabError, ArithmeticError):
    """A normalisation needs a root that does not exist in the rationals."""

    def __init__(self, message, radicand, root_degree):
        super().__init__(message)
        self.radicand = radicand
        self.root_degree = root_degree


class NotApplicableError(InvalidInputError):
    """The requested check does not apply to the given parameters."""


class ConvergenceError(PreplabError, ArithmeticError):
    """The root finder hit its iteration cap.

    ``roots`` holds the current approximations and ``unconverged`` the
    indices that did not meet the stopping rule.
    """

    def __init__(self, message, roots, unconverged):
        super().__init__(message)
        self.roots = roots
        self.unconverged = unconverged
