"""Imaginary-time (gradient-flow) relaxation to ground states.

The flow integrates

    d_tau psi = lap psi + b(r) ln(max(|psi|^2, floor)) psi      (nonlinear)
    d_tau psi = lap psi - V_ext(r) psi                          (linear)

by explicit Euler steps on the substituted variable u = r*psi, renormalizing
to the target norm after every step.  The substitution turns the radial
Laplacian into a plain second derivative with u -> 0 at both ends; on grids
built by RadialGrid.uniform_from_origin the left ghost node sits at r = 0
where u vanishes by regularity, so that boundary is exact.

The flow decreases the constrained energy functional

    E[psi] = int [ |d psi/dr|^2 - b(r) (rho ln rho - rho) ] w r^2 dr

whose variation reproduces the stationary equation; see relaxation_energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from ..errors import ConvergenceError, DomainError
from ..grids import FULL_SPHERE, RadialGrid, RadialWavefunction
from ..scales import CouplingProfile
from .options import SolverOptions
from .stencils import second_difference_dirichlet

# fraction of each stability limit used by the automatic time step
_DT_SAFETY = 0.2
# per-node cap on dt * (log term); inactive near a fixed point, it only
# guards the underflow tail and rough initial transients
_STEP_CLIP = 0.4


@dataclass
class GroundStateResult:
    psi: RadialWavefunction
    omega: float
    converged: bool
    steps: int
    history: list  # rows (step, rate, norm, omega_estimate)
    omega_profile: np.ndarray  # pointwise local eigenvalue (diagnostics)


def _auto_dt(h: float, coupling_max: float) -> float:
    """Stability-limited explicit-Euler step.

    Kinetic limit dt < h^2/2; the logarithmic term feeds back on the local
    amplitude with gain 2*dt*|b(r)|, which the same bound keeps contractive
    because max|b| <= q/r_min^2 = 1/h^2-type values on our grids.
    """
    dt = _DT_SAFETY * h * h
    if coupling_max > 0.0:
        dt = min(dt, _DT_SAFETY / coupling_max)
    return dt


def _default_guess(r: np.ndarray, r_max: float) -> np.ndarray:
    sigma = r_max / 8.0
    return np.exp(-0.5 * (r / sigma) ** 2)


def _relax(
    grid: RadialGrid,
    term,  # term(rho) -> W array; the step is u += dt*(u'' + W u)
    coupling_max: float,
    target_norm: float,
    angular_weight: float,
    opts: SolverOptions,
    psi0=None,
    max_steps=None,
    check_convergence=True,
    log_every: int = 500,
):
    if grid.spacing != "uniform":
        raise DomainError("imaginary-time relaxation requires a uniform grid")
    r = grid.r
    h = grid.h
    dt = opts.dt if opts.dt is not None else _auto_dt(h, coupling_max)
    steps_budget = opts.max_steps if max_steps is None else max_steps

    if psi0 is None:
        psi = _default_guess(r, grid.r_max)
    elif isinstance(psi0, RadialWavefunction):
        psi = np.abs(np.asarray(psi0.values, dtype=complex)).astype(float)
    else:
        psi = np.abs(np.asarray(psi0, dtype=complex)).astype(float)
    u = r * psi
    u *= math.sqrt(target_norm / (angular_weight * np.trapezoid(u * u, r)))

    history = []
    rate = math.inf
    step = 0
    for step in range(1, steps_budget + 1):
        lap = second_difference_dirichlet(u, h)
        rho = (u / r) ** 2
        w_term = np.clip(dt * term(rho), -_STEP_CLIP, _STEP_CLIP)
        u_new = u + dt * lap + w_term * u
        norm = angular_weight * np.trapezoid(u_new * u_new, r)
        u_new *= math.sqrt(target_norm / norm)
        rate = float(np.max(np.abs(u_new - u))) / (dt * float(np.max(np.abs(u))))
        if step % log_every == 0 or rate < opts.convergence_tol:
            omega_est = _omega_from_u(r, u_new, lap=None, term=term, h=h)
            history.append((step, rate, float(norm), omega_est))
        u = u_new
        if check_convergence and rate < opts.convergence_tol:
            break

    converged = rate < opts.convergence_tol
    return u, dt, step, converged, rate, history


def _omega_from_u(r, u, lap, term, h):
    """Density-weighted mean of the local eigenvalue -(u'' + W u)/u."""
    if lap is None:
        lap = second_difference_dirichlet(u, h)
    rho = (u / r) ** 2
    w = term(rho)
    num = -simpson((lap + w * u) * u, x=r)
    den = simpson(u * u, x=r)
    return float(num / den)


def _omega_profile(r, u, term, h):
    lap = second_difference_dirichlet(u, h)
    rho = (u / r) ** 2
    w = term(rho)
    eps = np.zeros_like(u)
    mask = np.abs(u) > 1e-10 * np.max(np.abs(u))
    eps[mask] = -(lap[mask] + w[mask] * u[mask]) / u[mask]
    return eps


def _finish(grid, u, term, h, target_norm, angular_weight, step, converged, rate,
            history, opts) -> GroundStateResult:
    psi = RadialWavefunction(
        grid=grid,
        values=u / grid.r,
        target_norm=target_norm,
        angular_weight=angular_weight,
    ).normalized()
    u_n = grid.r * psi.values.real
    omega = _omega_from_u(grid.r, u_n, lap=None, term=term, h=h)
    result = GroundStateResult(
        psi=psi,
        omega=omega,
        converged=converged,
        steps=step,
        history=history,
        omega_profile=_omega_profile(grid.r, u_n, term, h),
    )
    if not converged:
        raise ConvergenceError(
            f"relaxation did not reach rate < {opts.convergence_tol:g} within "
            f"{step} steps (last rate {rate:.3e})",
            last=result,
            history=history,
        )
    return result


def ground_state_imaginary_time(
    profile: CouplingProfile,
    N: float,
    grid: RadialGrid,
    opts: SolverOptions | None = None,
    angular_weight: float = FULL_SPHERE,
    psi0=None,
) -> tuple[RadialWavefunction, float]:
    """Relax to the nonlinear ground state for a coupling profile.

    Returns (wavefunction, omega) with omega the density-weighted Rayleigh
    estimate of the stationary frequency.  Use angular_weight=1 for the
    radial-only normalization of the separable (b0 = 0, q = 1) family: the
    amplitude matters to the logarithmic term, so the weight selects which
    member of the family the flow converges to.

    Raises ConvergenceError (carrying the last iterate and the residual
    history) when max_steps is exhausted.
    """
    opts = opts or SolverOptions()
    result = ground_state_from_coupling_values(
        profile.evaluate(grid.r), N, grid, opts, angular_weight=angular_weight, psi0=psi0
    )
    return result.psi, result.omega


def ground_state_from_coupling_values(
    coupling: np.ndarray,
    N: float,
    grid: RadialGrid,
    opts: SolverOptions | None = None,
    angular_weight: float = FULL_SPHERE,
    psi0=None,
    max_steps=None,
    check_convergence=True,
) -> GroundStateResult:
    """Same relaxation with the coupling given as values on the grid.

    This is the inner engine of the self-consistent model, where b(r) is the
    numerical gradient of the auxiliary field rather than a closed form.
    """
    opts = opts or SolverOptions()
    coupling = np.asarray(coupling, dtype=float)
    if coupling.shape != grid.r.shape or not np.all(np.isfinite(coupling)):
        raise DomainError("coupling must be finite with one value per grid node")
    floor = opts.log_floor

    def term(rho):
        return coupling * np.log(np.maximum(rho, floor))

    u, dt, step, converged, rate, history = _relax(
        grid, term, float(np.max(np.abs(coupling))), N, angular_weight, opts,
        psi0=psi0, max_steps=max_steps,
        check_convergence=check_convergence,
    )
    if not check_convergence:
        converged = True  # fixed-sweep mode: caller owns the convergence test
    return _finish(grid, u, term, grid.h, N, angular_weight, step, converged,
                   rate, history, opts)


def linear_ground_state(
    V_ext,
    N: float,
    grid: RadialGrid,
    opts: SolverOptions | None = None,
    angular_weight: float = FULL_SPHERE,
    psi0=None,
) -> tuple[RadialWavefunction, float]:
    """Ground state of the linear equation with external potential V_ext.

    V_ext may be an array on the grid or a callable of r and must be bounded
    below on the grid.  Used to check that a linear problem with the
    effective potential of a nonlinear solution reproduces that solution.
    """
    opts = opts or SolverOptions()
    v = np.asarray(V_ext(grid.r) if callable(V_ext) else V_ext, dtype=float)
    if v.shape != grid.r.shape:
        raise DomainError("V_ext must provide one value per grid node")
    if not np.all(np.isfinite(v)):
        raise DomainError("V_ext must be finite (bounded below) on the grid")

    def term(rho):
        return -v

    u, dt, step, converged, rate, history = _relax(
        grid, term, float(np.max(np.abs(v))), N, angular_weight, opts, psi0=psi0
    )
    result = _finish(grid, u, term, grid.h, N, angular_weight, step, converged,
                     rate, history, opts)
    return result.psi, result.omega


def relaxation_energy(psi: RadialWavefunction, profile_or_values) -> float:
    """Energy functional decreased by the imaginary-time flow.

    E = int [ |d psi/dr|^2 - b(r) (rho ln rho - rho) ] w r^2 dr.

    Its finite-difference variation reproduces the stationary-equation
    residual, which is what makes the flow a gradient descent.
    """
    r = psi.grid.r
    if isinstance(profile_or_values, CouplingProfile):
        b = profile_or_values.evaluate(r)
    else:
        b = np.asarray(profile_or_values, dtype=float)
    rho = psi.density()
    xlogx = np.zeros_like(rho)
    mask = rho > 1e-300
    xlogx[mask] = rho[mask] * np.log(rho[mask])
    dpsi = np.gradient(psi.values.real, r, edge_order=2)
    integrand = dpsi**2 - b * (xlogx - rho)
    return float(psi.angular_weight * simpson(r**2 * integrand, x=r))
