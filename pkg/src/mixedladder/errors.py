class LadderError(ValueError):
    """Invalid or unusable ladder description."""


class DegenerateLadder(LadderError):
    pass


class AlreadyLinear(LadderError):
    """Raised when a biliaison step is requested on an all-ones size vector."""


class BudgetExceeded(RuntimeError):
    """A configured work limit was hit before the computation finished."""
