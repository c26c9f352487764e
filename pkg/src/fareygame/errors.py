"""Exception hierarchy shared across the package."""


class FareyGameError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FareyGameError, ValueError):
    """An argument lies outside the domain of an operation."""


class OrderError(DomainError):
    """Two values were supplied in the wrong order."""


class PreconditionError(DomainError):
    """A documented precondition of an operation does not hold."""


class FeasibilityError(FareyGameError):
    """A request is valid but too large to compute at desk scale."""


class NotInsertableError(DomainError):
    """A ball cannot be spliced into a play."""


class NotAppendableError(DomainError):
    """A ball cannot be appended to a play."""


class StrategyFault(FareyGameError):
    """A strategy produced a move that breaks the game rules."""

    def __init__(self, mover: str, move: int, detail: str = ""):
        self.mover = mover
        self.move = move
        msg = f"{mover} made an invalid move at move {move}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
