"""Electromagnetic-analogy diffusion-advection-reaction PDE.

The image gradient plays the electric field E, the (numerically vanishing)
curl of that gradient plays the scalar magnetic field H, and the state
evolves by du/dt = alpha Laplacian(u) - beta div(E x H) + gamma EM^2 with
EM one of two field-magnitude measures.  Fields may be frozen at the
initial state or recomputed every iteration.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .backend import kernels
from .field import NEUMANN, BoundaryCondition, VectorField, as_field, as_mask
from .integrate import euler_step, guard_state, rk4_step
from .stencils import grad_central, laplacian5

VECTOR_MAGNITUDE = "vector"
ENERGY_DENSITY = "energy"

# SI free-space permittivity/permeability for the energy-density measure;
# pipelines default to the normalized pair (1, 1) because the SI scale
# makes the reaction term numerically inert on unit-range images
EPSILON_0 = 8.8541878128e-12
MU_0 = 1.25663706212e-6


class EmFields(NamedTuple):
    e: VectorField
    h: np.ndarray


@dataclass(frozen=True)
class MhParams:
    alpha: float = 0.15       # diffusion
    beta: float = 0.0         # advection (Poynting divergence)
    gamma: float = 0.0        # reaction (EM magnitude squared)
    em_method: str = VECTOR_MAGNITUDE
    si_constants: bool = False
    recompute_fields: bool = False
    scheme: str = "euler"
    dt: float = 1.0
    steps: int = 1
    mask: object = None

    def __post_init__(self):
        if self.em_method not in (VECTOR_MAGNITUDE, ENERGY_DENSITY):
            raise ValueError(f"unknown em method {self.em_method!r}")
        if self.scheme not in ("euler", "rk4"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.steps < 1:
            raise ValueError("steps must be at least 1")


def electric_field(u, bc: BoundaryCondition = NEUMANN) -> VectorField:
    """E = (du/dx, du/dy) by central differences."""
    return grad_central(u, bc)


def magnetic_field(e: VectorField, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """Scalar 2D curl dEy/dx - dEx/dy (duplicated into both H components
    conceptually, stored once); vanishes to round-off when E is a gradient."""
    p = bc.is_periodic
    return kernels.central_diff_x(as_field(e.y), p) - kernels.central_diff_y(
        as_field(e.x), p)


def make_em_fields(u, bc: BoundaryCondition = NEUMANN) -> EmFields:
    e = electric_field(u, bc)
    return EmFields(e, magnetic_field(e, bc))


def em_magnitude(f: EmFields, method: str = VECTOR_MAGNITUDE,
                 si_constants: bool = False) -> np.ndarray:
    """Total field measure: sqrt(Ex^2 + Ey^2 + 2 H^2) (vector magnitude) or
    (eps ||E||^2 + mu H^2)/2 (energy density, constants 1 unless SI)."""
    ex, ey, h = f.e.x, f.e.y, f.h
    if method == VECTOR_MAGNITUDE:
        return np.sqrt(ex * ex + ey * ey + 2.0 * h * h)
    if method == ENERGY_DENSITY:
        eps, mu = (EPSILON_0, MU_0) if si_constants else (1.0, 1.0)
        return 0.5 * (eps * (ex * ex + ey * ey) + mu * h * h)
    raise ValueError(f"unknown em method {method!r}")


def poynting_divergence(f: EmFields, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """div(E x H) with both H components equal: the cross-product scalar is
    s = H (Ex - Ey) and the divergence adds its central x- and y-derivatives."""
    s = f.h * (f.e.x - f.e.y)
    p = bc.is_periodic
    return kernels.central_diff_x(s, p) + kernels.central_diff_y(s, p)


def _reaction(f: EmFields, p: MhParams) -> np.ndarray:
    em = em_magnitude(f, p.em_method, p.si_constants)
    return em * em


def mh_rhs(u, f: EmFields, p: MhParams, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """alpha Laplacian(u) - beta div(ExH) + gamma EM^2; zero outside the
    mask when one is set (evolution confined to the damaged region)."""
    u = as_field(u)
    out = np.zeros_like(u)
    if p.alpha != 0.0:
        out = out + p.alpha * laplacian5(u, bc)
    if p.beta != 0.0:
        out = out - p.beta * poynting_divergence(f, bc)
    if p.gamma != 0.0:
        out = out + p.gamma * _reaction(f, p)
    if p.mask is not None:
        m = as_mask(p.mask)
        if m.shape != u.shape:
            raise ValueError("mask shape must match the field")
        out = np.where(m, out, 0.0)
    return out


def _mask_of(p: MhParams, shape):
    if p.mask is None:
        return None
    m = as_mask(p.mask)
    if m.shape != shape:
        raise ValueError("mask shape must match the field")
    return m


def _rk4_frozen_terms_step(u, fields, p: MhParams, bc: BoundaryCondition):
    # stage formulas re-evaluate only the diffusion argument; the advection
    # and reaction terms stay frozen across the four stages
    frozen = np.zeros_like(u)
    if p.beta != 0.0:
        frozen = frozen - p.beta * poynting_divergence(fields, bc)
    if p.gamma != 0.0:
        frozen = frozen + p.gamma * _reaction(fields, p)
    m = _mask_of(p, u.shape)

    def stage(v):
        out = frozen if p.alpha == 0.0 else p.alpha * laplacian5(v, bc) + frozen
        return np.where(m, out, 0.0) if m is not None else out

    dt = p.dt
    k1 = stage(u)
    k2 = stage(u + 0.5 * dt * k1)
    k3 = stage(u + 0.5 * dt * k2)
    k4 = stage(u + dt * k3)
    return u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def mh_step(u, p: MhParams, bc: BoundaryCondition = NEUMANN,
            fields: EmFields | None = None) -> np.ndarray:
    """One step of the chosen scheme.

    With fields=None they are rebuilt from the current state (and, under
    RK4, from every stage state); passing frozen fields keeps them fixed,
    and RK4 then also freezes the advection/reaction stage terms.
    """
    if fields is None:
        def rhs_recomputed(v):
            return mh_rhs(v, make_em_fields(v, bc), p, bc)
        stepper = rk4_step if p.scheme == "rk4" else euler_step
        return stepper(u, rhs_recomputed, p.dt)
    if p.scheme == "rk4":
        return _rk4_frozen_terms_step(u, fields, p, bc)
    return u + p.dt * mh_rhs(u, fields, p, bc)


def mh_evolve(u0, p: MhParams, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """Run p.steps iterations; fields follow p.recompute_fields (rebuilt
    from the current state each iteration, or built once from u0)."""
    u = as_field(u0).copy()
    frozen = None if p.recompute_fields else make_em_fields(u, bc)
    for k in range(1, p.steps + 1):
        u = mh_step(u, p, bc, fields=frozen)
        guard_state(u, step=k)
    return u
