"""Deterministic synthetic test images (stand-ins for a photo corpus)."""

import numpy as np

from . import rng


def _grid(height, width):
    ii = np.arange(height, dtype=np.float64)[:, None]
    jj = np.arange(width, dtype=np.float64)[None, :]
    return ii, jj


def ramp(height: int, width: int, axis: str = "x") -> np.ndarray:
    ii, jj = _grid(height, width)
    if axis == "x":
        return np.broadcast_to(jj / max(width - 1, 1), (height, width)).copy()
    return np.broadcast_to(ii / max(height - 1, 1), (height, width)).copy()


def vertical_step(height: int, width: int, col: int | None = None,
                  low: float = 0.2, high: float = 0.8) -> np.ndarray:
    if col is None:
        col = width // 2
    u = np.full((height, width), low)
    u[:, col:] = high
    return u


def checkerboard(height: int, width: int, cell: int = 8,
                 low: float = 0.2, high: float = 0.8) -> np.ndarray:
    ii, jj = _grid(height, width)
    parity = ((ii // cell) + (jj // cell)) % 2
    return np.where(parity == 0, low, high)


def disk(height: int, width: int, radius: float | None = None,
         inside: float = 0.8, outside: float = 0.2) -> np.ndarray:
    if radius is None:
        radius = min(height, width) / 4
    ii, jj = _grid(height, width)
    r2 = (ii - (height - 1) / 2) ** 2 + (jj - (width - 1) / 2) ** 2
    return np.where(r2 <= radius * radius, inside, outside)


def piecewise_shapes(height: int, width: int) -> np.ndarray:
    """Flat background with a disk, a rectangle and a bright bar; the
    piecewise-constant workhorse for denoising and edge tests."""
    u = np.full((height, width), 0.3)
    ii, jj = _grid(height, width)
    r = min(height, width) / 5
    r2 = (ii - height * 0.35) ** 2 + (jj - width * 0.35) ** 2
    u = np.where(r2 <= r * r, 0.75, u)
    u[int(height * 0.55):int(height * 0.85), int(width * 0.15):int(width * 0.45)] = 0.5
    u[int(height * 0.15):int(height * 0.9), int(width * 0.7):int(width * 0.8)] = 0.65
    return u


def sinusoid_mix(height: int, width: int, seed: int = 0, waves: int = 4) -> np.ndarray:
    """Smooth, fully periodic image: a mix of low-frequency integer-period
    sinusoids mapped into [0.1, 0.9]."""
    ii, jj = _grid(height, width)
    u = np.zeros((height, width))
    coeffs = rng.uniforms(seed, 4 * waves)
    for k in range(waves):
        fx = 1 + int(coeffs[4 * k] * 3)
        fy = 1 + int(coeffs[4 * k + 1] * 3)
        phx = 2.0 * np.pi * coeffs[4 * k + 2]
        phy = 2.0 * np.pi * coeffs[4 * k + 3]
        u += np.sin(2.0 * np.pi * fx * jj / width + phx) * \
            np.sin(2.0 * np.pi * fy * ii / height + phy)
    lo, hi = u.min(), u.max()
    if hi == lo:
        return np.full((height, width), 0.5)
    return 0.1 + 0.8 * (u - lo) / (hi - lo)


def soft_edge(height: int, width: int, half_width: float = 4.0,
              low: float = 0.25, high: float = 0.75) -> np.ndarray:
    """Horizontal tanh transition around the middle column (enhancement target)."""
    _, jj = _grid(height, width)
    t = 0.5 * (1.0 + np.tanh((jj - (width - 1) / 2) / half_width))
    return np.broadcast_to(low + (high - low) * t, (height, width)).copy()


def random_field(height: int, width: int, seed: int = 0,
                 low: float = 0.0, high: float = 1.0) -> np.ndarray:
    u = rng.uniforms(seed, height * width).reshape(height, width)
    return low + (high - low) * u


def default_corpus(size: int = 64) -> dict:
    """Named synthetic stand-ins used by the bench harness when no corpus
    directory is supplied."""
    return {
        "ramp": ramp(size, size),
        "disk": disk(size, size),
        "checker": checkerboard(size, size, cell=max(2, size // 8)),
        "shapes": piecewise_shapes(size, size),
    }
