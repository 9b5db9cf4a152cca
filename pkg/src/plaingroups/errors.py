"""Exception hierarchy shared by every module."""

from __future__ import annotations


class RewritingError(Exception):
    """Base class for all errors raised by this package."""


class MrsSyntaxError(RewritingError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnknownLetter(RewritingError):
    def __init__(self, symbol: str, line: int | None = None, column: int | None = None) -> None:
        where = "" if line is None else f"line {line}, column {column}: "
        super().__init__(f"{where}unknown letter {symbol!r}")
        self.symbol = symbol
        self.line = line
        self.column = column


class EmptyLhs(MrsSyntaxError):
    pass


class DuplicateLetter(MrsSyntaxError):
    pass


class NonTerminatingRisk(RewritingError):
    """Reduction requested on a system whose termination is not established."""


class NotTerminating(RewritingError):
    pass


class BudgetExceeded(RewritingError):
    pass


class PreconditionFailed(RewritingError):
    def __init__(self, flag: str, detail: str = "") -> None:
        super().__init__(f"precondition failed: {flag}" + (f" ({detail})" if detail else ""))
        self.flag = flag


class IterationBudgetExceeded(RewritingError):
    def __init__(self, max_iter: int) -> None:
        super().__init__(f"no cycle detected within {max_iter} iterations")
        self.max_iter = max_iter


class LemmaViolation(RewritingError):
    """A structural property that must hold for valid systems failed.

    Never expected to fire; it signals a bug in this package.
    """


class TheoremViolation(LemmaViolation):
    pass


class OutOfBall(RewritingError):
    pass


class SizeBudgetExceeded(RewritingError):
    def __init__(self, limit: int) -> None:
        super().__init__(f"ball exceeds {limit} vertices")
        self.limit = limit


class NotAGroup(PreconditionFailed):
    def __init__(self, detail: str = "") -> None:
        super().__init__("group", detail)


class NotMonadic(PreconditionFailed):
    def __init__(self, detail: str = "") -> None:
        super().__init__("monadic", detail)


class NotConfluent(PreconditionFailed):
    def __init__(self, detail: str = "") -> None:
        super().__init__("confluent", detail)
