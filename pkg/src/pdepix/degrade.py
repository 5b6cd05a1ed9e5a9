"""Degradation operators for the evaluation protocol: seeded additive
Gaussian noise, Gaussian blur, and mask damage."""

from dataclasses import dataclass

import numpy as np

from . import rng
from .field import NEUMANN, BoundaryCondition, as_field, as_mask
from .stencils import convolve2d, gaussian_kernel

BLUR_SIZE = 11
BLUR_SIGMA = 3.0


@dataclass(frozen=True)
class NoiseSpec:
    sigma: float
    seed: int = 0

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")


def add_gaussian_noise(u, spec: NoiseSpec) -> np.ndarray:
    """u plus i.i.d. normal(0, sigma^2) samples from the portable stream;
    deliberately not clamped (clamping is a pipeline decision)."""
    u = as_field(u)
    return u + rng.normal_field(spec.seed, u.shape, spec.sigma)


def gaussian_blur(u, size: int = BLUR_SIZE, sigma: float = BLUR_SIGMA,
                  bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    return convolve2d(as_field(u), gaussian_kernel(size, sigma), bc)


def apply_mask_damage(u, mask, fill: float = 0.0) -> np.ndarray:
    """Overwrite the masked (damaged) pixels with the fill value."""
    u = as_field(u)
    m = as_mask(mask)
    if m.shape != u.shape:
        raise ValueError("mask shape must match the field")
    return np.where(m, fill, u)


def stroke_mask(height: int, width: int, strokes: int = 8, seed: int = 0,
                thickness: int = 2, length: int | None = None) -> np.ndarray:
    """Random-walk stroke damage mask (True = damaged), reproducible per seed."""
    if height < 1 or width < 1:
        raise ValueError("dimensions must be positive")
    if length is None:
        length = max(4, (height + width) // 4)
    mask = np.zeros((height, width), dtype=bool)
    u = rng.uniforms(seed, strokes * (3 + length))
    pos = 0

    def draw(ci, cj):
        i0, i1 = max(0, ci - thickness), min(height, ci + thickness + 1)
        j0, j1 = max(0, cj - thickness), min(width, cj + thickness + 1)
        mask[i0:i1, j0:j1] = True

    for _ in range(strokes):
        i = u[pos] * height
        j = u[pos + 1] * width
        angle = 2.0 * np.pi * u[pos + 2]
        pos += 3
        for s in range(length):
            draw(int(i) % height, int(j) % width)
            angle += 0.8 * (u[pos + s] - 0.5)
            i += np.sin(angle)
            j += np.cos(angle)
        pos += length
    return mask


def block_mask(height: int, width: int, top: int, left: int,
               block_h: int, block_w: int) -> np.ndarray:
    """Rectangular hole mask (True = damaged)."""
    mask = np.zeros((height, width), dtype=bool)
    mask[top:top + block_h, left:left + block_w] = True
    return mask
