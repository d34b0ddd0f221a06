"""Exception types shared across the package."""


class TrisepError(Exception):
    """Base class for all package-specific errors."""


class ParseError(TrisepError):
    """Malformed textual input (CLI payloads, numeric literals)."""


class DomainError(TrisepError):
    """Input outside an operation's mathematical domain."""


class ZeroPolynomialError(DomainError):
    """The zero polynomial was supplied where a nonzero one is required."""


class BudgetExceededError(TrisepError):
    """An adaptive computation hit its precision or size budget.

    Never a silent wrong answer: the refinement loop raises this instead of
    returning an undecided result.  ``last_interval`` holds the final
    enclosure computed before giving up, ``bits`` the precision reached.
    """

    def __init__(self, message, last_interval=None, bits=None):
        super().__init__(message)
        self.last_interval = last_interval
        self.bits = bits
