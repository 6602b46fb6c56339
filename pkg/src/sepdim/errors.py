"""Exception types shared across the package."""


class SepdimError(Exception):
    """Base class for all package errors."""


class InvalidInputError(SepdimError):
    """Malformed or out-of-range input; the message names the offending field."""


class BudgetExceededError(SepdimError):
    """An exact solver or enumeration was asked to exceed its stated budget.

    Raised instead of silently approximating: exactness is part of the
    contract, so "instance too large" is an explicit outcome.
    """


class ConstructionError(SepdimError):
    """A Las Vegas construction exhausted its retries without verifying."""


class VerificationError(SepdimError):
    """An internal certificate failed re-verification (indicates a bug)."""
