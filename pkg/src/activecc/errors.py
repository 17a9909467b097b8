"""
Exception hierarchy for activecc.
"""

from typing import Any, Optional


class ActiveCCError(Exception):
    """Base class for all activecc errors."""


class ParameterError(ActiveCCError, ValueError):
    """Invalid parameter value (rates, probabilities, sizes, rate functions)."""


class ContractError(ActiveCCError, ValueError):
    """A precondition or structural invariant was violated."""


class CapacityError(ActiveCCError):
    """Input exceeds a desk-scale enumeration cap."""

    def __init__(self, what: str, requested: int, cap: int):
        super().__init__(f"{what}: n={requested} exceeds the cap of {cap}")
        self.what = what
        self.requested = requested
        self.cap = cap


class BudgetExhaustedError(ActiveCCError):
    """
    The oracle refused a query because its budget is spent.

    Pivot algorithms attach their partial run trace as `trace` before the
    error leaves them.
    """

    def __init__(self, issued: int, budget: int, requested: int = 1):
        super().__init__(
            f"query budget exhausted: {issued}/{budget} issued, {requested} more requested"
        )
        self.issued = issued
        self.budget = budget
        self.requested = requested
        self.trace: Optional[Any] = None


class InstanceFormatError(ParameterError):
    """Malformed instance or ground-truth file."""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        location = ""
        if path is not None:
            location = f"{path}"
        if line is not None:
            location = f"{location}:{line}" if location else f"line {line}"
        super().__init__(f"{location}: {message}" if location else message)
        self.path = path
        self.line = line
