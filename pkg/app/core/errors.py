"""Exception hierarchy shared by every advicebench component."""

from typing import Optional


class AdviceBenchError(Exception):
    """Base exception for advicebench errors"""
    pass


class EncodingError(AdviceBenchError, ValueError):
    """Raised when a value cannot be written to an advice tape in the requested format"""
    pass


class DomainError(AdviceBenchError, ValueError):
    """Raised when a numeric argument is outside its mathematical domain"""
    pass


class ContractError(AdviceBenchError):
    """Raised when the caller breaks an operation's precondition"""
    pass


class AdviceBudgetExceeded(ContractError):
    """Raised when an algorithm reads past its capped advice budget"""
    pass


class ResourceLimitError(AdviceBenchError):
    """Raised when an exhaustive computation would exceed its configured cap"""
    pass


class ReductionError(AdviceBenchError):
    """Raised when a reduction maps a target output to an infeasible source output"""
    pass


class VerifierInapplicable(AdviceBenchError):
    """Raised when a pigeonhole verifier has no collision to exploit"""
    pass


class InvariantViolation(AdviceBenchError):
    """Raised when a checked runtime identity does not hold"""
    pass


class BatchAborted(AdviceBenchError):
    """Raised when an upper-bound run in a batch ended infeasible, errored runs included"""

    def __init__(self, message: str, seed: int, error: Optional[str] = None):
        super().__init__(message)
        self.seed = seed
        self.error = error
