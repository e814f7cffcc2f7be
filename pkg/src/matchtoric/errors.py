"""Exception types shared by the engines."""


class BudgetExceeded(RuntimeError):
    """A search or elimination hit its configured resource cap.

    Raised instead of returning a truncated answer. ``partial`` carries
    whatever the caller may want to report (counts so far, last degree, ...).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial if partial is not None else {}


class ExponentOverflow(ArithmeticError):
    """An exponent left the range of the packed monomial representation."""
