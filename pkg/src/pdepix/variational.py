"""Tikhonov and total-variation deblurring by explicit gradient descent.

Both minimize 0.5 ||k*u - g||^2 plus a regularizer: (lam/2) ||grad u||^2
(Tikhonov) or lam * sum sqrt(|grad u|^2 + eps^2) (smoothed TV).  Gradients
use the forward-difference / backward-divergence adjoint pair, so descent
is exact under periodic boundaries (the deblurring protocol's setting).
The step is halved on objective increase, at most 10 times per run.
"""

from dataclasses import dataclass

import numpy as np

from .field import PERIODIC, BoundaryCondition, VectorField, as_field, clamp_unit
from .integrate import DivergenceError
from .stencils import check_kernel, convolve2d, laplacian5

MAX_HALVINGS = 10


@dataclass(frozen=True)
class DeblurProblem:
    observed: np.ndarray
    kernel: np.ndarray
    lam: float = 0.01
    eps: float = 1e-3
    step: float = 0.5
    iters: int = 300

    def __post_init__(self):
        if self.lam <= 0 or self.eps <= 0 or self.step <= 0 or self.iters < 1:
            raise ValueError("lam, eps, step must be positive and iters >= 1")


def flip_kernel(k) -> np.ndarray:
    """Adjoint (180-degree flipped) kernel of the correlation operator."""
    return np.ascontiguousarray(check_kernel(k)[::-1, ::-1])


def grad_forward(u, bc: BoundaryCondition = PERIODIC) -> VectorField:
    """Forward differences; under Neumann the far edge difference is zero."""
    u = as_field(u)
    p = np.pad(u, 1, mode="wrap" if bc.is_periodic else "edge")
    return VectorField(p[1:-1, 2:] - u, p[2:, 1:-1] - u)


def div_backward(v: VectorField, bc: BoundaryCondition = PERIODIC) -> np.ndarray:
    """Negative adjoint of grad_forward (backward-difference divergence)."""
    px, py = as_field(v.x), as_field(v.y)
    if bc.is_periodic:
        dx = px - np.roll(px, 1, axis=1)
        dy = py - np.roll(py, 1, axis=0)
        return dx + dy
    dx = np.empty_like(px)
    dx[:, 0] = px[:, 0]
    dx[:, 1:-1] = px[:, 1:-1] - px[:, :-2]
    dx[:, -1] = -px[:, -2]
    dy = np.empty_like(py)
    dy[0, :] = py[0, :]
    dy[1:-1, :] = py[1:-1, :] - py[:-2, :]
    dy[-1, :] = -py[-2, :]
    return dx + dy


def _descend(g, k, objective, gradient, step, iters):
    kt = flip_kernel(k)
    u = g.copy()
    obj = objective(u)
    halvings = 0
    for _ in range(iters):
        grad = gradient(u, kt)
        if not np.all(np.isfinite(grad)):
            raise DivergenceError("non-finite gradient in deblur descent")
        while True:
            cand = u - step * grad
            cand_obj = objective(cand)
            if cand_obj <= obj or halvings >= MAX_HALVINGS:
                break
            step *= 0.5
            halvings += 1
        if cand_obj > obj:
            break  # halving budget spent; keep the monotone iterate
        u, obj = cand, cand_obj
    return clamp_unit(u)


def tikhonov_deblur(p: DeblurProblem, bc: BoundaryCondition = PERIODIC) -> np.ndarray:
    g = as_field(p.observed)
    k = check_kernel(p.kernel)

    def objective(u):
        r = convolve2d(u, k, bc) - g
        gx, gy = grad_forward(u, bc)
        return 0.5 * float(np.sum(r * r)) + 0.5 * p.lam * float(
            np.sum(gx * gx + gy * gy))

    def gradient(u, kt):
        r = convolve2d(u, k, bc) - g
        return convolve2d(r, kt, bc) - p.lam * laplacian5(u, bc)

    return _descend(g, k, objective, gradient, p.step, p.iters)


def tv_deblur(p: DeblurProblem, bc: BoundaryCondition = PERIODIC) -> np.ndarray:
    g = as_field(p.observed)
    k = check_kernel(p.kernel)
    eps2 = p.eps * p.eps

    def objective(u):
        r = convolve2d(u, k, bc) - g
        gx, gy = grad_forward(u, bc)
        return 0.5 * float(np.sum(r * r)) + p.lam * float(
            np.sum(np.sqrt(gx * gx + gy * gy + eps2)))

    def gradient(u, kt):
        r = convolve2d(u, k, bc) - g
        gx, gy = grad_forward(u, bc)
        norm = np.sqrt(gx * gx + gy * gy + eps2)
        tv_term = div_backward(VectorField(gx / norm, gy / norm), bc)
        return convolve2d(r, kt, bc) - p.lam * tv_term

    return _descend(g, k, objective, gradient, p.step, p.iters)
