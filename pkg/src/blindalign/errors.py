"""Shared exception types."""


class SearchBudgetExceeded(RuntimeError):
    """An exhaustive search or enumeration exceeded its resource guard.

    Raised instead of silently truncating results; the message names the
    cheaper alternative (usually Monte Carlo) when one exists.
    """
