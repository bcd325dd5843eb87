"""Fragile-complexity algorithms behind an instrumented counting comparator.

Every algorithm performs ordering queries through a ComparisonLedger, which
records how many comparisons each element participates in; the harness runs
seeded experiments and checks the per-element bounds empirically.
"""

from .errors import (
    ConfigError,
    EmptyInput,
    FragilityError,
    InfeasibleTarget,
    MergePreconditionViolated,
    RankOutOfRange,
    SelfComparison,
    UnknownElement,
)
from .ledger import (
    ComparisonLedger,
    ElementId,
    FragilityProfile,
    Ordering,
    audit_sorted,
    new_session,
)

__all__ = [
    "ComparisonLedger",
    "ConfigError",
    "ElementId",
    "EmptyInput",
    "FragilityError",
    "FragilityProfile",
    "InfeasibleTarget",
    "MergePreconditionViolated",
    "Ordering",
    "RankOutOfRange",
    "SelfComparison",
    "UnknownElement",
    "audit_sorted",
    "new_session",
]

__version__ = "0.1.0"
