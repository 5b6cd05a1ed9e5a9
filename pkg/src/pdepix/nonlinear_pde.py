"""Nonlinear PDE right-hand sides: Perona-Malik diffusion, Burgers,
Cahn-Hilliard, Korteweg-de Vries, Kuramoto-Sivashinsky, Liouville."""

from dataclasses import dataclass

import numpy as np

from . import rng
from .backend import kernels
from .field import NEUMANN, BoundaryCondition, VectorField, as_field
from .integrate import require_cfl
from .stencils import (fourth_deriv, grad_central, laplacian5,
                       third_deriv_upwind, upwind_deriv)

RATIONAL = "rational"
EXPONENTIAL = "exponential"

# KdV dispersion weight, the conventional value
KDV_ALPHA = 6.0


@dataclass(frozen=True)
class Diffusivity:
    """Edge-stopping function: rational 1/(1+(g/kappa)^2) or exponential
    exp(-(g/kappa)^2); kappa sets the gradient scale where diffusion stops."""

    kind: str = RATIONAL
    kappa: float = 0.1

    def __post_init__(self):
        if self.kind not in (RATIONAL, EXPONENTIAL):
            raise ValueError(f"unknown diffusivity kind {self.kind!r}")
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")


def pm_diffusivity(grad_mag, d: Diffusivity) -> np.ndarray:
    """Evaluate the edge-stopping function elementwise; output in (0, 1]."""
    r = np.asarray(grad_mag, dtype=np.float64) / d.kappa
    if d.kind == EXPONENTIAL:
        return np.exp(-(r * r))
    return 1.0 / (1.0 + r * r)


def perona_malik_rhs(u, d: Diffusivity, bc: BoundaryCondition = NEUMANN,
                     form: str = "divergence") -> np.ndarray:
    """Anisotropic diffusion du/dt = div(D grad u).

    The default divergence form uses half-point diffusivities evaluated on
    the one-sided difference toward each of the 4 neighbors, which makes the
    flux telescope (mean preserved under Neumann).  form="expanded" uses the
    non-conservative grad(D).grad(u) + D Laplacian(u) expansion instead.
    """
    u = as_field(u)
    if form == "divergence":
        return kernels.pm_rhs(u, d.kappa, d.kind == EXPONENTIAL, bc.is_periodic)
    if form == "expanded":
        g = grad_central(u, bc)
        dmap = pm_diffusivity(np.hypot(g.x, g.y), d)
        dgrad = grad_central(dmap, bc)
        return dgrad.x * g.x + dgrad.y * g.y + dmap * laplacian5(u, bc)
    raise ValueError(f"unknown Perona-Malik form {form!r}")


def burgers_rhs(u, viscosity: float = 0.0, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """Self-advection -u (du/dx + du/dy) with optional viscous diffusion;
    viscosity 0 gives the inviscid (shock-forming) form.  Caller checks CFL
    with max|u| as the advection speed."""
    u = as_field(u)
    if viscosity < 0:
        raise ValueError("viscosity must be non-negative")
    adv = -u * (upwind_deriv(u, "x", u, bc) + upwind_deriv(u, "y", u, bc))
    if viscosity == 0.0:
        return adv
    return adv + viscosity * laplacian5(u, bc)


@dataclass(frozen=True)
class CahnHilliardParams:
    """d_coeff scales the mobility, gamma weights the interface term in the
    chemical potential (gamma=1 is the plain model), invert_diffusion flips
    the sign for edge-sharpening reverse diffusion."""

    d_coeff: float = 1.0
    gamma: float = 1.0
    invert_diffusion: bool = False

    def __post_init__(self):
        if not np.isfinite(self.d_coeff):
            raise ValueError("d_coeff must be finite")
        if self.gamma < 0:
            raise ValueError("gamma must be non-negative")


def cahn_hilliard_rhs(c, p: CahnHilliardParams, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """Phase-separation dynamics dc/dt = D Laplacian(mu) with chemical
    potential mu = -gamma Laplacian(c) + c + c^3."""
    c = as_field(c)
    mu = -p.gamma * laplacian5(c, bc) + c + c * c * c
    sign = -1.0 if p.invert_diffusion else 1.0
    return sign * p.d_coeff * laplacian5(mu, bc)


def kdv_rhs(u, alpha: float = KDV_ALPHA, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """Dispersive wave dynamics: self-advection plus alpha times the
    third-derivative dispersion term on both axes (upwind differences).
    Caller checks CFL with max|u|."""
    u = as_field(u)
    adv = -u * (upwind_deriv(u, "x", u, bc) + upwind_deriv(u, "y", u, bc))
    disp = third_deriv_upwind(u, "x", bc) + third_deriv_upwind(u, "y", bc)
    return adv - alpha * disp


def ks_rhs(u, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """Fourth-order dissipative dynamics with destabilizing second-order
    diffusion and nonlinear advection; deliberately parameter-free.
    Explicit stepping needs a small dt (around 0.05 on the pixel grid)."""
    u = as_field(u)
    adv = -u * (upwind_deriv(u, "x", u, bc) + upwind_deriv(u, "y", u, bc))
    four = fourth_deriv(u, "x", bc) + fourth_deriv(u, "y", bc)
    return adv - laplacian5(u, bc) - four


def liouville_step(rho, v: VectorField, dt: float,
                   bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """One explicit density update rho - dt (vx d(rho)/dx + vy d(rho)/dy)
    with upwind derivatives; rejects CFL violations."""
    rho = as_field(rho)
    vx = np.asarray(v.x, dtype=np.float64)
    vy = np.asarray(v.y, dtype=np.float64)
    require_cfl(float(np.max(np.abs(vx))), float(np.max(np.abs(vy))), dt)
    return rho - dt * (vx * upwind_deriv(rho, "x", vx, bc)
                       + vy * upwind_deriv(rho, "y", vy, bc))


@dataclass(frozen=True)
class LiouvilleVelocity:
    """Velocity field recipe: kind "constant" uses (vx, vy) everywhere,
    "sinusoidal" builds single-frequency sine waves per axis with seeded
    random phases."""

    kind: str = "constant"
    vx: float = 1.0
    vy: float = 0.0
    amplitude: float = 1.0
    frequency: float = 2.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("constant", "sinusoidal"):
            raise ValueError(f"unknown velocity kind {self.kind!r}")


def make_liouville_velocity(spec: LiouvilleVelocity, height: int, width: int) -> VectorField:
    if height < 1 or width < 1:
        raise ValueError("dimensions must be positive")
    if spec.kind == "constant":
        return VectorField(np.full((height, width), float(spec.vx)),
                           np.full((height, width), float(spec.vy)))
    phase = 2.0 * np.pi * rng.uniforms(spec.seed, 2)
    jj = np.arange(width, dtype=np.float64)[None, :]
    ii = np.arange(height, dtype=np.float64)[:, None]
    vx = spec.amplitude * np.sin(
        2.0 * np.pi * spec.frequency * jj / width + phase[0])
    vy = spec.amplitude * np.sin(
        2.0 * np.pi * spec.frequency * ii / height + phase[1])
    return VectorField(np.broadcast_to(vx, (height, width)).copy(),
                       np.broadcast_to(vy, (height, width)).copy())
