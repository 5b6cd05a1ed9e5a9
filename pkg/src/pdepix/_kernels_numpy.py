"""Pure-numpy stencil kernels (fallback backend).

Every function here has an @njit twin in _kernels_numba with the same
signature and arithmetic; backend selection happens in pdepix.backend.
Convention: x runs along columns (axis 1), y along rows (axis 0);
`periodic` False means mirror-at-edge (Neumann) sampling.
"""

import numpy as np


def _pad(u, r, periodic):
    return np.pad(u, r, mode="wrap" if periodic else "edge")


def laplacian5(u, periodic):
    p = _pad(u, 1, periodic)
    return (p[:-2, 1:-1] + p[2:, 1:-1] + p[1:-1, :-2] + p[1:-1, 2:]) - 4.0 * u


def central_diff_x(u, periodic):
    p = _pad(u, 1, periodic)
    return 0.5 * (p[1:-1, 2:] - p[1:-1, :-2])


def central_diff_y(u, periodic):
    p = _pad(u, 1, periodic)
    return 0.5 * (p[2:, 1:-1] - p[:-2, 1:-1])


def upwind_diff_x(u, speed, periodic):
    p = _pad(u, 1, periodic)
    backward = u - p[1:-1, :-2]
    forward = p[1:-1, 2:] - u
    return np.where(speed > 0.0, backward, np.where(speed < 0.0, forward, 0.0))


def upwind_diff_y(u, speed, periodic):
    p = _pad(u, 1, periodic)
    backward = u - p[:-2, 1:-1]
    forward = p[2:, 1:-1] - u
    return np.where(speed > 0.0, backward, np.where(speed < 0.0, forward, 0.0))


def third_diff_x(u, periodic):
    # u(j+1) - 3u(j) + 3u(j-1) - u(j-2), backward-biased
    p = _pad(u, 2, periodic)
    return p[2:-2, 3:-1] - 3.0 * u + 3.0 * p[2:-2, 1:-3] - p[2:-2, :-4]


def third_diff_y(u, periodic):
    p = _pad(u, 2, periodic)
    return p[3:-1, 2:-2] - 3.0 * u + 3.0 * p[1:-3, 2:-2] - p[:-4, 2:-2]


def fourth_diff_x(u, periodic):
    # u(j-2) - 4u(j-1) + 6u(j) - 4u(j+1) + u(j+2)
    p = _pad(u, 2, periodic)
    return (p[2:-2, :-4] - 4.0 * p[2:-2, 1:-3] + 6.0 * u
            - 4.0 * p[2:-2, 3:-1] + p[2:-2, 4:])


def fourth_diff_y(u, periodic):
    p = _pad(u, 2, periodic)
    return (p[:-4, 2:-2] - 4.0 * p[1:-3, 2:-2] + 6.0 * u
            - 4.0 * p[3:-1, 2:-2] + p[4:, 2:-2])


def convolve2d(u, kernel, periodic):
    # correlation with the centered kernel (weights applied as given)
    kh, kw = kernel.shape
    ry, rx = kh // 2, kw // 2
    h, w = u.shape
    p = np.pad(u, ((ry, ry), (rx, rx)), mode="wrap" if periodic else "edge")
    out = np.zeros_like(u)
    for a in range(kh):
        for b in range(kw):
            out += kernel[a, b] * p[a:a + h, b:b + w]
    return out


def pm_rhs(u, kappa, exponential, periodic):
    # divergence-form edge-stopping diffusion: half-point diffusivities
    # from the one-sided difference toward each of the 4 neighbors
    p = _pad(u, 1, periodic)
    north = p[:-2, 1:-1] - u
    south = p[2:, 1:-1] - u
    west = p[1:-1, :-2] - u
    east = p[1:-1, 2:] - u
    out = np.zeros_like(u)
    for diff in (north, south, west, east):
        r = diff / kappa
        g = np.exp(-(r * r)) if exponential else 1.0 / (1.0 + r * r)
        out += g * diff
    return out
