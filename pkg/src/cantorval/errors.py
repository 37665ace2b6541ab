"""Exception hierarchy shared by every module in the package."""


class CantorvalError(ValueError):
    pass


class BaseMismatch(CantorvalError):
    pass


class EmptySet(CantorvalError):
    pass


class TooFewElements(CantorvalError):
    pass


class PreconditionViolated(CantorvalError):
    pass


class InvalidSpec(CantorvalError):
    pass


class DigitOutOfRange(CantorvalError):
    """A digit set with some |d| >= p was handed to code that needs |d| <= p-1."""


class DepthTooLarge(CantorvalError):
    """The interval budget was exceeded while refining a cover."""
