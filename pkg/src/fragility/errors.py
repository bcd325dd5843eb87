"""Exception types shared across the package."""


class FragilityError(Exception):
    """Base class for all package errors."""


class EmptyInput(FragilityError):
    """An operation that needs at least one element got none."""


class SelfComparison(FragilityError):
    """An element was compared against itself."""


class UnknownElement(FragilityError):
    """An ElementId does not belong to this session."""


class RankOutOfRange(FragilityError):
    """A selection rank k is outside [0, n)."""


class InfeasibleTarget(FragilityError):
    """A generator target (Inv, Runs, ...) cannot be realized at this size."""


class ConfigError(FragilityError):
    """An experiment spec or CLI invocation is inconsistent."""


class MergePreconditionViolated(FragilityError):
    """A merge input turned out not to be ascending."""
