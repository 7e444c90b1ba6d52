"""Exception types shared across the package.

Exit-code mapping used by the CLI: DomainError -> 2, ConvergenceError -> 3.
"""

from __future__ import annotations


class DomainError(ValueError):
    """A precondition on inputs was violated (bad parameter domain, grid, ...)."""


class ConvergenceError(RuntimeError):
    """An iterative solver failed to converge.

    Carries the last iterate and the residual history so a failed run can
    still be inspected.
    """

    def __init__(self, message, last=None, history=None):
        super().__init__(message)
        self.last = last
        self.history = history if history is not None else []
