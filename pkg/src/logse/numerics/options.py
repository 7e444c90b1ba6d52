"""Shared solver options."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DomainError


@dataclass
class SolverOptions:
    """Knobs shared by the relaxation / propagation / SCF drivers.

    dt=None lets each solver pick a stability-limited step for its grid.
    log_floor regularizes ln|psi|^2 where the density underflows; it only
    touches regions that contribute negligibly to norm and observables.
    mixing is the linear damping factor of the self-consistent iteration.
    """

    dt: float | None = None
    max_steps: int = 400_000
    convergence_tol: float = 1e-6
    log_floor: float = 1e-30
    mixing: float = 0.5

    def __post_init__(self):
        if self.dt is not None and not self.dt > 0:
            raise DomainError("dt must be positive (or None for automatic)")
        if self.max_steps < 1:
            raise DomainError("max_steps must be at least 1")
        if not self.convergence_tol > 0:
            raise DomainError("convergence_tol must be positive")
        if not self.log_floor > 0:
            raise DomainError("log_floor must be positive")
        if not 0.0 < self.mixing <= 1.0:
            raise DomainError("mixing must lie in (0, 1]")
