"""Exception hierarchy shared across the toolkit."""


class LangcardError(Exception):
    """Base class for all toolkit errors."""


class ModelParseError(LangcardError):
    """Malformed automaton or trace file.

    Carries the 1-based line number when the offending line is known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class AlphabetMismatchError(LangcardError):
    """Two automata do not share the same ordered alphabet."""


class DivergentStarError(LangcardError):
    """Kleene star applied to a series with a unit constant term."""


class ZeroConstantDenominatorError(LangcardError):
    """Coefficient extraction needs a denominator with nonzero constant term."""


class NonIntegerCoefficientError(LangcardError):
    """A language series produced a fractional count; internal inconsistency."""


class ResourceLimitError(LangcardError):
    """A configured work budget (degree, time, restarts, steps) was exceeded."""


class SizeGuardError(LangcardError):
    """A method refused to run because its output would be too large."""

    def __init__(self, message, estimate=None):
        self.estimate = estimate
        super().__init__(message)


class IndistinguishableStatesError(LangcardError):
    """A characterization set was requested for a non-minimal automaton."""
