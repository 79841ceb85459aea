"""Exception types shared across the toolkit."""

from __future__ import annotations


class HhtError(Exception):
    """Base class for all toolkit errors."""


class ParseError(HhtError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}" if line else message)
        self.line = line
        self.col = col


class SignatureError(HhtError):
    """Signature violates a structural invariant."""


class CaptureViolation(HhtError):
    """A substitution would capture a variable of the substituted term."""


class NotClosed(HhtError):
    """Operation requires a closed formula."""


class NotFirstOrder(HhtError):
    """Operation requires a first-order formula."""


class UnmappedAtom(HhtError):
    """A substitution has no entry or default for a ground atom."""

    def __init__(self, atom):
        super().__init__(f"no entry or default for atom {atom!r}")
        self.atom = atom


class InfiniteUniverse(HhtError):
    """Exact mode requires every function constant to be nullary."""


class BudgetExceeded(HhtError):
    """Enumeration would exceed the configured budget."""

    def __init__(self, required: int, budget: int, what: str = "evaluations"):
        super().__init__(
            f"enumeration needs {required} {what}, budget is {budget}"
        )
        self.required = required
        self.budget = budget


class SubstitutionError(HhtError):
    """Substitution table violates a structural invariant."""


class ProofError(HhtError):
    """A proof line failed checking. `line` is 1-based."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class ForwardReference(ProofError):
    pass


class MPMismatch(ProofError):
    pass


class SchemaMismatch(ProofError):
    pass


class SideConditionViolation(ProofError):
    pass


class LevelViolation(ProofError):
    pass


class ConclusionNotFirstOrder(HhtError):
    pass


class ConclusionNotClosed(HhtError):
    pass
