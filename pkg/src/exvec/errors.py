"""Exception types shared across the toolkit."""


class NotPrimePowerError(ValueError):
    """The requested field order is not a prime power."""


class UnsupportedFieldError(ValueError):
    """The field order is outside the supported range, or a formula
    excludes it (e.g. co-weight counts over GF(2))."""


class FieldMismatchError(ValueError):
    """Two values built over different fields were combined."""


class ProfileTooHeavyError(ValueError):
    """A weight profile requires more nonzero entries than available."""


class NotADownSetError(ValueError):
    """A profile set is not closed under coordinatewise decrease."""


class NotExhaustiveError(ValueError):
    """A uniqueness check was asked of a non-exhaustive oracle result."""


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured budget."""
