"""Boundary-aware spatial difference operators and 2D convolution.

All operators use unit grid spacing (one pixel) and annihilate constant
fields.  Sign conventions: positive x = increasing column index,
positive y = increasing row index.  Kernel application is correlation,
no flip.
"""

import numpy as np

from .backend import kernels
from .field import NEUMANN, BoundaryCondition, VectorField, as_field


def _periodic(bc: BoundaryCondition) -> bool:
    return bc.is_periodic


def check_kernel(k) -> np.ndarray:
    k = np.asarray(k, dtype=np.float64)
    if k.ndim != 2 or k.shape[0] % 2 == 0 or k.shape[1] % 2 == 0:
        raise ValueError("kernels must be 2D with odd rows and columns")
    return np.ascontiguousarray(k)


def grad_central(u, bc: BoundaryCondition = NEUMANN) -> VectorField:
    """Central-difference gradient, (u(i,j+1)-u(i,j-1))/2 per axis."""
    u = as_field(u)
    p = _periodic(bc)
    return VectorField(kernels.central_diff_x(u, p), kernels.central_diff_y(u, p))


def grad_magnitude(u, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    return grad_central(u, bc).magnitude()


def laplacian5(u, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """5-point Laplacian u(i+-1,j) + u(i,j+-1) - 4u(i,j)."""
    return kernels.laplacian5(as_field(u), _periodic(bc))


def biharmonic(u, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """Laplacian of the Laplacian (13-point composite stencil)."""
    p = _periodic(bc)
    return kernels.laplacian5(kernels.laplacian5(as_field(u), p), p)


def divergence(v: VectorField, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """Central x-derivative of v.x plus central y-derivative of v.y."""
    if v.x.shape != v.y.shape:
        raise ValueError("vector field components must share a shape")
    p = _periodic(bc)
    return kernels.central_diff_x(as_field(v.x), p) + kernels.central_diff_y(
        as_field(v.y), p)


def _speed_field(speed, shape) -> np.ndarray:
    s = np.asarray(speed, dtype=np.float64)
    if s.ndim == 0:
        return np.full(shape, float(s))
    if s.shape != shape:
        raise ValueError("speed field shape must match the field")
    return np.ascontiguousarray(s)


def upwind_deriv(u, axis: str, speed, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """One-sided difference against the flow: backward where speed > 0,
    forward where speed < 0, zero where the speed vanishes."""
    u = as_field(u)
    s = _speed_field(speed, u.shape)
    p = _periodic(bc)
    if axis == "x":
        return kernels.upwind_diff_x(u, s, p)
    if axis == "y":
        return kernels.upwind_diff_y(u, s, p)
    raise ValueError("axis must be 'x' or 'y'")


def third_deriv_upwind(u, axis: str, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """Backward-biased third difference u(i+1) - 3u(i) + 3u(i-1) - u(i-2)."""
    u = as_field(u)
    p = _periodic(bc)
    if axis == "x":
        return kernels.third_diff_x(u, p)
    if axis == "y":
        return kernels.third_diff_y(u, p)
    raise ValueError("axis must be 'x' or 'y'")


def fourth_deriv(u, axis: str, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """5-point fourth difference u(i-2) - 4u(i-1) + 6u(i) - 4u(i+1) + u(i+2)."""
    u = as_field(u)
    p = _periodic(bc)
    if axis == "x":
        return kernels.fourth_diff_x(u, p)
    if axis == "y":
        return kernels.fourth_diff_y(u, p)
    raise ValueError("axis must be 'x' or 'y'")


def convolve2d(u, kernel, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """Correlation with a centered odd-sized kernel, boundaries via bc."""
    return kernels.convolve2d(as_field(u), check_kernel(kernel), _periodic(bc))


def gaussian_kernel(size: int, sigma: float) -> np.ndarray:
    """Sampled Gaussian exp(-(x^2+y^2)/(2 sigma^2)) on the centered integer
    grid, normalized to sum exactly 1."""
    if size < 1 or size % 2 == 0:
        raise ValueError("kernel size must be odd and positive")
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    r = size // 2
    ax = np.arange(-r, r + 1, dtype=np.float64)
    xx, yy = np.meshgrid(ax, ax)
    k = np.exp(-(xx * xx + yy * yy) / (2.0 * sigma * sigma))
    return k / k.sum()


GRAD_KERNEL_X = np.array([[-0.5, 0.0, 0.5]])
GRAD_KERNEL_Y = GRAD_KERNEL_X.T.copy()
