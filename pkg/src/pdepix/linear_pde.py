"""Linear PDE right-hand sides and solvers: heat, Laplace (steady),
Poisson relaxation, wave (leapfrog, optional mask), upwind transport."""

import math
from typing import NamedTuple

import numpy as np

from .field import NEUMANN, BoundaryCondition, VectorField, as_field, as_mask
from .stencils import grad_magnitude, laplacian5, upwind_deriv

# standard 2D leapfrog stability bound for the wave update
WAVE_COURANT_LIMIT = 1.0 / math.sqrt(2.0)


def heat_rhs(u, alpha: float, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """du/dt = alpha * Laplacian(u); isotropic diffusion with constant
    coefficient is the same operation with alpha = D0."""
    return alpha * laplacian5(u, bc)


class LaplaceResult(NamedTuple):
    u: np.ndarray
    residual: float
    iterations: int
    converged: bool


def laplace_steady(u0, bc: BoundaryCondition = NEUMANN, tol: float = 1e-6,
                   max_iter: int = 20000) -> LaplaceResult:
    """Jacobi relaxation toward Laplacian(u) = 0 with zero-flux boundaries.

    Each sweep replaces u by its 4-neighbor average (which preserves the
    mean under Neumann sampling); with pure Neumann conditions the fixed
    point is the constant field at the initial mean.  Stops when the max
    absolute Laplacian drops below tol; on non-convergence the best
    iterate is returned with its residual.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    u = as_field(u0).copy()
    residual = float(np.max(np.abs(laplacian5(u, bc))))
    iterations = 0
    while residual >= tol and iterations < max_iter:
        u = u + 0.25 * laplacian5(u, bc)
        residual = float(np.max(np.abs(laplacian5(u, bc))))
        iterations += 1
    return LaplaceResult(u, residual, iterations, residual < tol)


class PoissonSource(NamedTuple):
    f: np.ndarray
    strength: float = 1.0


def poisson_rhs(u, source: PoissonSource, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """Pseudo-time relaxation du/dt = Laplacian(u) - strength * f, whose
    steady state solves the Poisson equation."""
    u = as_field(u)
    f = as_field(source.f)
    if f.shape != u.shape:
        raise ValueError("source shape must match the field")
    return laplacian5(u, bc) - source.strength * f


def high_contrast_source(u0, bc: BoundaryCondition = NEUMANN,
                         threshold: float | None = None) -> np.ndarray:
    """Source field for source-guided denoising: the gradient magnitude of
    the input, kept only where it exceeds the threshold (Otsu when None),
    so high-contrast regions counteract the diffusion."""
    g = grad_magnitude(u0, bc)
    if threshold is None:
        from .edges import otsu_threshold
        threshold = otsu_threshold(g)
    return np.where(g > threshold, g, 0.0)


class WaveState(NamedTuple):
    u: np.ndarray
    u_prev: np.ndarray
    c: float


def wave_step(state: WaveState, dt: float, bc: BoundaryCondition = NEUMANN,
              mask=None) -> WaveState:
    """Leapfrog update u_next = 2u - u_prev + (c dt)^2 Laplacian(u).

    Requires c*dt <= 1/sqrt(2).  Where a mask is given and false the pixel
    is held static (u_next = u).
    """
    u = as_field(state.u)
    u_prev = as_field(state.u_prev)
    if u.shape != u_prev.shape:
        raise ValueError("wave state fields must share a shape")
    if state.c * dt > WAVE_COURANT_LIMIT + 1e-12:
        raise ValueError(
            f"wave stability violated: c*dt = {state.c * dt:.6g} > 1/sqrt(2)")
    cdt2 = (state.c * dt) ** 2
    u_next = 2.0 * u - u_prev + cdt2 * laplacian5(u, bc)
    if mask is not None:
        m = as_mask(mask)
        if m.shape != u.shape:
            raise ValueError("mask shape must match the field")
        u_next = np.where(m, u_next, u)
    return WaveState(u_next, u, state.c)


def transport_rhs(u, velocity: VectorField, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """Linear advection du/dt = -(cx du/dx + cy du/dy), upwind differences.
    Caller is responsible for the CFL check on (max|cx|, max|cy|, dt)."""
    u = as_field(u)
    cx = np.asarray(velocity.x, dtype=np.float64)
    cy = np.asarray(velocity.y, dtype=np.float64)
    return -(cx * upwind_deriv(u, "x", cx, bc) + cy * upwind_deriv(u, "y", cy, bc))
