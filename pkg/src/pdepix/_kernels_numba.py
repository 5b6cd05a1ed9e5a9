"""Numba @njit twins of the stencil kernels in _kernels_numpy.

Loops are written per pixel with inline boundary index resolution; no
prange and no fastmath, so results stay deterministic and match the
numpy backend to round-off.
"""

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _ix(i, n, periodic):
    if periodic:
        return i % n
    if i < 0:
        return 0
    if i >= n:
        return n - 1
    return i


@njit(cache=True)
def laplacian5(u, periodic):
    h, w = u.shape
    out = np.empty_like(u)
    for i in range(h):
        iu = _ix(i - 1, h, periodic)
        id_ = _ix(i + 1, h, periodic)
        for j in range(w):
            jl = _ix(j - 1, w, periodic)
            jr = _ix(j + 1, w, periodic)
            out[i, j] = (u[iu, j] + u[id_, j] + u[i, jl] + u[i, jr]) - 4.0 * u[i, j]
    return out


@njit(cache=True)
def central_diff_x(u, periodic):
    h, w = u.shape
    out = np.empty_like(u)
    for i in range(h):
        for j in range(w):
            jl = _ix(j - 1, w, periodic)
            jr = _ix(j + 1, w, periodic)
            out[i, j] = 0.5 * (u[i, jr] - u[i, jl])
    return out


@njit(cache=True)
def central_diff_y(u, periodic):
    h, w = u.shape
    out = np.empty_like(u)
    for i in range(h):
        iu = _ix(i - 1, h, periodic)
        id_ = _ix(i + 1, h, periodic)
        for j in range(w):
            out[i, j] = 0.5 * (u[id_, j] - u[iu, j])
    return out


@njit(cache=True)
def upwind_diff_x(u, speed, periodic):
    h, w = u.shape
    out = np.empty_like(u)
    for i in range(h):
        for j in range(w):
            s = speed[i, j]
            if s > 0.0:
                out[i, j] = u[i, j] - u[i, _ix(j - 1, w, periodic)]
            elif s < 0.0:
                out[i, j] = u[i, _ix(j + 1, w, periodic)] - u[i, j]
            else:
                out[i, j] = 0.0
    return out


@njit(cache=True)
def upwind_diff_y(u, speed, periodic):
    h, w = u.shape
    out = np.empty_like(u)
    for i in range(h):
        for j in range(w):
            s = speed[i, j]
            if s > 0.0:
                out[i, j] = u[i, j] - u[_ix(i - 1, h, periodic), j]
            elif s < 0.0:
                out[i, j] = u[_ix(i + 1, h, periodic), j] - u[i, j]
            else:
                out[i, j] = 0.0
    return out


@njit(cache=True)
def third_diff_x(u, periodic):
    h, w = u.shape
    out = np.empty_like(u)
    for i in range(h):
        for j in range(w):
            out[i, j] = (u[i, _ix(j + 1, w, periodic)] - 3.0 * u[i, j]
                         + 3.0 * u[i, _ix(j - 1, w, periodic)]
                         - u[i, _ix(j - 2, w, periodic)])
    return out


@njit(cache=True)
def third_diff_y(u, periodic):
    h, w = u.shape
    out = np.empty_like(u)
    for i in range(h):
        for j in range(w):
            out[i, j] = (u[_ix(i + 1, h, periodic), j] - 3.0 * u[i, j]
                         + 3.0 * u[_ix(i - 1, h, periodic), j]
                         - u[_ix(i - 2, h, periodic), j])
    return out


@njit(cache=True)
def fourth_diff_x(u, periodic):
    h, w = u.shape
    out = np.empty_like(u)
    for i in range(h):
        for j in range(w):
            out[i, j] = (u[i, _ix(j - 2, w, periodic)]
                         - 4.0 * u[i, _ix(j - 1, w, periodic)]
                         + 6.0 * u[i, j]
                         - 4.0 * u[i, _ix(j + 1, w, periodic)]
                         + u[i, _ix(j + 2, w, periodic)])
    return out


@njit(cache=True)
def fourth_diff_y(u, periodic):
    h, w = u.shape
    out = np.empty_like(u)
    for i in range(h):
        for j in range(w):
            out[i, j] = (u[_ix(i - 2, h, periodic), j]
                         - 4.0 * u[_ix(i - 1, h, periodic), j]
                         + 6.0 * u[i, j]
                         - 4.0 * u[_ix(i + 1, h, periodic), j]
                         + u[_ix(i + 2, h, periodic), j])
    return out


@njit(cache=True)
def convolve2d(u, kernel, periodic):
    h, w = u.shape
    kh, kw = kernel.shape
    ry, rx = kh // 2, kw // 2
    out = np.zeros_like(u)
    for a in range(kh):
        dy = a - ry
        for b in range(kw):
            dx = b - rx
            kv = kernel[a, b]
            for i in range(h):
                ii = _ix(i + dy, h, periodic)
                for j in range(w):
                    out[i, j] += kv * u[ii, _ix(j + dx, w, periodic)]
    return out


@njit(cache=True)
def pm_rhs(u, kappa, exponential, periodic):
    h, w = u.shape
    out = np.zeros_like(u)
    for i in range(h):
        iu = _ix(i - 1, h, periodic)
        id_ = _ix(i + 1, h, periodic)
        for j in range(w):
            jl = _ix(j - 1, w, periodic)
            jr = _ix(j + 1, w, periodic)
            acc = 0.0
            for diff in (u[iu, j] - u[i, j], u[id_, j] - u[i, j],
                         u[i, jl] - u[i, j], u[i, jr] - u[i, j]):
                r = diff / kappa
                if exponential:
                    g = np.exp(-(r * r))
                else:
                    g = 1.0 / (1.0 + r * r)
                acc += g * diff
            out[i, j] = acc
    return out
