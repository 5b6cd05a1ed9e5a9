"""2D intensity fields: boundary-aware sampling, periodic extension, masks.

A field is a plain float64 array of shape (height, width); x runs along
columns, y along rows.  Task pipelines keep values in [0, 1] after
clamping, intermediate PDE states may leave the range.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

NEUMANN_KIND = "neumann"
PERIODIC_KIND = "periodic"


@dataclass(frozen=True)
class BoundaryCondition:
    """Boundary sampling rule.

    "neumann" mirrors the edge pixel (clamp-to-edge, the discrete zero
    normal derivative), "periodic" wraps indices; pad is the width of
    the periodic extension used by the deblurring protocol.
    """

    kind: str
    pad: int = 0

    def __post_init__(self):
        if self.kind not in (NEUMANN_KIND, PERIODIC_KIND):
            raise ValueError(f"unknown boundary kind {self.kind!r}")
        if self.pad < 0:
            raise ValueError("pad must be non-negative")
        if self.pad and self.kind != PERIODIC_KIND:
            raise ValueError("pad only applies to periodic boundaries")

    @property
    def is_periodic(self) -> bool:
        return self.kind == PERIODIC_KIND


NEUMANN = BoundaryCondition(NEUMANN_KIND)
PERIODIC = BoundaryCondition(PERIODIC_KIND)


def parse_bc(name: str, pad: int = 0) -> BoundaryCondition:
    return BoundaryCondition(name.strip().lower(), pad)


class VectorField(NamedTuple):
    """Pair of same-shaped fields holding x- and y-components."""

    x: np.ndarray
    y: np.ndarray

    def magnitude(self) -> np.ndarray:
        return np.hypot(self.x, self.y)


def as_field(data) -> np.ndarray:
    u = np.asarray(data, dtype=np.float64)
    if u.ndim != 2 or u.size == 0:
        raise ValueError("a field must be a non-empty 2D array")
    return np.ascontiguousarray(u)


def as_mask(data) -> np.ndarray:
    m = np.asarray(data)
    if m.ndim != 2 or m.size == 0:
        raise ValueError("a mask must be a non-empty 2D array")
    return np.ascontiguousarray(m != 0)


def sample(u: np.ndarray, i: int, j: int, bc: BoundaryCondition = NEUMANN) -> float:
    """Boundary-resolved pixel read; total over all integer (i, j)."""
    h, w = u.shape
    if bc.is_periodic:
        return float(u[i % h, j % w])
    return float(u[min(max(i, 0), h - 1), min(max(j, 0), w - 1)])


def extend_periodic(u: np.ndarray, pad: int) -> np.ndarray:
    """Wrap-extend the field by pad pixels on every side."""
    if pad < 0:
        raise ValueError("pad must be non-negative")
    if pad == 0:
        return u.copy()
    return np.pad(u, pad, mode="wrap")


def crop_center(u: np.ndarray, pad: int) -> np.ndarray:
    """Remove pad pixels from all four sides (inverse of extend_periodic)."""
    if pad < 0:
        raise ValueError("pad must be non-negative")
    if pad == 0:
        return u.copy()
    h, w = u.shape
    if h <= 2 * pad or w <= 2 * pad:
        raise ValueError(f"cannot crop {pad} pixels from a {h}x{w} field")
    return u[pad:h - pad, pad:w - pad].copy()


def mean_intensity(u: np.ndarray) -> float:
    return float(np.mean(u))


def clamp_unit(u: np.ndarray) -> np.ndarray:
    return np.clip(u, 0.0, 1.0)
