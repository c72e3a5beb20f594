"""Exception types shared across the toolkit."""


class LrcError(Exception):
    """Base class for all toolkit errors."""


class NotPrimePower(LrcError):
    """Field order is neither a prime nor a supported power of two."""


class ReducibleModulus(LrcError):
    """Supplied extension-field modulus is not irreducible over GF(2)."""


class RankDeficient(LrcError):
    """Generator rows are linearly dependent."""

    def __init__(self, message, dependent_rows=()):
        super().__init__(message)
        self.dependent_rows = tuple(dependent_rows)


class EmptySupport(LrcError):
    """Coordinate set for puncture/shorten is empty."""


class LengthMismatch(LrcError):
    """Vector length does not match the expected dimension."""


class BudgetExceeded(LrcError):
    """Exhaustive enumeration would exceed the configured cap."""


class InvalidParams(LrcError):
    """Arguments violate a documented precondition."""


class InconsistentInput(LrcError):
    """Input data contradicts its own claimed structure."""


class FieldTooSmall(LrcError):
    """The field has too few elements for the requested construction."""


class DeltaExceedsD(LrcError):
    """delta > d is infeasible for the pyramid construction."""


class InfeasibleDelta(LrcError):
    """delta exceeds the distance implied by the parity-split parameters."""


class InfeasibleParams(LrcError):
    """Dimension is too large for the requested all-symbol partition."""


class ConstructionFailure(LrcError):
    """Randomized construction exhausted its retry budget."""

    def __init__(self, message, attempts, failed_cores_last_attempt):
        super().__init__(message)
        self.attempts = attempts
        self.failed_cores_last_attempt = failed_cores_last_attempt


class FieldMismatch(LrcError):
    """Inner/outer field orders are not compatible for concatenation."""


class TooManyLocalErasures(LrcError):
    """Every group containing the target has delta or more erasures."""


class NoGroup(LrcError):
    """The locality profile does not cover the target coordinate."""


class Unrecoverable(LrcError):
    """Erasure pattern cannot be decoded uniquely.

    ``reason`` is ``"ambiguous"`` (several completions) or
    ``"inconsistent"`` (no completion).
    """

    def __init__(self, message, reason):
        super().__init__(message)
        self.reason = reason


class InvalidProfile(LrcError):
    """A locality profile failed verification."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class ParseError(LrcError):
    """A code file could not be parsed or validated."""
