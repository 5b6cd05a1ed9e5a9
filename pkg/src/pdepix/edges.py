"""Edge detectors: gradient-magnitude thresholding (fixed or Otsu) and
Laplacian-of-Gaussian zero crossings, plus the edge-pixel F1 score."""

import numpy as np

from .degrade import gaussian_blur
from .field import NEUMANN, BoundaryCondition, as_field
from .stencils import laplacian5


def gradient_magnitude_forward(u, bc: BoundaryCondition = NEUMANN) -> np.ndarray:
    """Forward-difference gradient magnitude; a unit step yields a single
    one-pixel-wide response line (central differences would smear it)."""
    u = as_field(u)
    p = np.pad(u, 1, mode="wrap" if bc.is_periodic else "edge")
    gx = p[1:-1, 2:] - u
    gy = p[2:, 1:-1] - u
    return np.hypot(gx, gy)


def otsu_threshold(values, bins: int = 256) -> float:
    """Otsu's between-class-variance threshold over a 256-bin histogram."""
    v = np.asarray(values, dtype=np.float64).ravel()
    vmin, vmax = float(v.min()), float(v.max())
    if vmin == vmax:
        return vmin
    hist, edges_ = np.histogram(v, bins=bins, range=(vmin, vmax))
    centers = 0.5 * (edges_[:-1] + edges_[1:])
    p = hist.astype(np.float64) / v.size
    omega = np.cumsum(p)
    mu = np.cumsum(p * centers)
    mu_total = mu[-1]
    with np.errstate(divide="ignore", invalid="ignore"):
        between = (mu_total * omega - mu) ** 2 / (omega * (1.0 - omega))
    between[~np.isfinite(between)] = 0.0
    return float(centers[int(np.argmax(between))])


def detect_edges_gradient(u, bc: BoundaryCondition = NEUMANN,
                          threshold: float | None = None) -> np.ndarray:
    """Binary edge map: gradient magnitude above the threshold (Otsu when
    None).  A blank image produces an empty map."""
    g = gradient_magnitude_forward(u, bc)
    t = otsu_threshold(g) if threshold is None else float(threshold)
    return g > t


def log_zero_crossings(u, sigma: float = 2.0, bc: BoundaryCondition = NEUMANN,
                       magnitude_frac: float = 0.1) -> np.ndarray:
    """Laplacian-of-Gaussian detector: smooth, take the Laplacian, mark
    sign changes against the right/down neighbor whose jump exceeds
    magnitude_frac times the maximum absolute response."""
    size = max(3, int(2.0 * np.ceil(3.0 * sigma) + 1))
    lap = laplacian5(gaussian_blur(as_field(u), size, sigma, bc), bc)
    peak = float(np.max(np.abs(lap)))
    if peak == 0.0:
        return np.zeros_like(lap, dtype=bool)
    thresh = magnitude_frac * peak
    out = np.zeros_like(lap, dtype=bool)
    right = lap[:, 1:]
    here = lap[:, :-1]
    cross = (np.sign(here) != np.sign(right)) & (np.abs(here - right) > thresh)
    out[:, :-1] |= cross
    down = lap[1:, :]
    here = lap[:-1, :]
    cross = (np.sign(here) != np.sign(down)) & (np.abs(here - down) > thresh)
    out[:-1, :] |= cross
    return out


def edge_f1(predicted, truth) -> float:
    """Pixelwise F1 of two binary edge maps (1.0 when both are empty)."""
    p = np.asarray(predicted, dtype=bool)
    t = np.asarray(truth, dtype=bool)
    if p.shape != t.shape:
        raise ValueError("edge maps must share a shape")
    tp = float(np.sum(p & t))
    fp = float(np.sum(p & ~t))
    fn = float(np.sum(~p & t))
    if tp == 0.0:
        return 1.0 if (fp == 0.0 and fn == 0.0) else 0.0
    return 2.0 * tp / (2.0 * tp + fp + fn)
