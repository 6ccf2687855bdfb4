"""Exception types shared across the package."""


class BirendoError(Exception):
    """Base class for all library errors."""


class ParseError(BirendoError, ValueError):
    pass


class NotDivisible(BirendoError, ArithmeticError):
    pass


class IrrationalData(BirendoError):
    """The computation would need a point or root outside the rationals."""


class Unresolved(BirendoError):
    """A factor could not be split by the available factorization methods."""


class PreconditionError(BirendoError, ValueError):
    pass


class NotBirational(PreconditionError):
    """Some factor of the Jacobian is not contracted."""


class NotAutomorphism(BirendoError):
    pass


class NotAMissingCurve(PreconditionError):
    pass


class MethodDisagreement(BirendoError, AssertionError):
    pass


class NotRealizable(BirendoError):
    pass


class BadParams(PreconditionError):
    pass


class OutOfClass(BirendoError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class Stuck(BirendoError):
    def __init__(self, message, residual=None, diagnostics=None):
        super().__init__(message)
        self.residual = residual
        self.diagnostics = diagnostics or []
