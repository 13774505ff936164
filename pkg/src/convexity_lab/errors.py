"""Exception hierarchy shared by every module."""


class ConvexityLabError(Exception):
    pass


class PreconditionError(ConvexityLabError, ValueError):
    """Input violates an operation's stated precondition (CLI exit code 2)."""


class ParseError(PreconditionError):
    def __init__(self, message, position):
        super().__init__(f"{message} at byte {position}")
        self.position = position


class InvariantViolation(ConvexityLabError, AssertionError):
    """A structural identity that must hold by construction failed (a bug; CLI exit code 1)."""
