"""Image quality metrics: MSE, PSNR, SSIM and the universal quality index Q.

SSIM follows the standard reference setup: 11x11 Gaussian window with
sigma 1.5, K1 = 0.01, K2 = 0.03 at peak 1, averaged over windows that fit
fully inside the image.  Q is the 8x8 sliding-window universal quality
index.  Window statistics use weighted/plain means (population form); the
N vs N-1 convention cancels out of Q.
"""

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .field import NEUMANN, as_field
from .stencils import convolve2d, gaussian_kernel

PSNR_INF = float("inf")

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_C1 = (0.01) ** 2
SSIM_C2 = (0.03) ** 2

Q_WINDOW = 8


@dataclass(frozen=True)
class MetricReport:
    mse: float
    psnr: float
    ssim: float
    q: float

    def as_dict(self) -> dict:
        return {"mse": self.mse, "psnr": self.psnr, "ssim": self.ssim, "q": self.q}


def _pair(a, b):
    a, b = as_field(a), as_field(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return a, b


def mse(a, b) -> float:
    a, b = _pair(a, b)
    d = a - b
    return float(np.mean(d * d))


def psnr(a, b, peak: float = 1.0) -> float:
    err = mse(a, b)
    if err == 0.0:
        return PSNR_INF
    return float(10.0 * np.log10(peak * peak / err))


def ssim(a, b) -> float:
    """Mean structural similarity over sliding Gaussian-weighted windows."""
    a, b = _pair(a, b)
    h, w = a.shape
    if min(h, w) < SSIM_WINDOW:
        raise ValueError(f"image smaller than the {SSIM_WINDOW}x{SSIM_WINDOW} window")
    win = gaussian_kernel(SSIM_WINDOW, SSIM_SIGMA)
    r = SSIM_WINDOW // 2

    def wmean(x):
        # padding never reaches the retained interior, so this equals the
        # fully-inside ("valid") windowed mean
        return convolve2d(x, win, NEUMANN)[r:h - r, r:w - r]

    mu1, mu2 = wmean(a), wmean(b)
    s11 = wmean(a * a) - mu1 * mu1
    s22 = wmean(b * b) - mu2 * mu2
    s12 = wmean(a * b) - mu1 * mu2
    num = (2.0 * mu1 * mu2 + SSIM_C1) * (2.0 * s12 + SSIM_C2)
    den = (mu1 * mu1 + mu2 * mu2 + SSIM_C1) * (s11 + s22 + SSIM_C2)
    return float(np.mean(num / den))


def quality_index_q(a, b, window: int = Q_WINDOW) -> float:
    """Mean universal quality index over sliding windows.

    Per-window value 4 s_ab m_a m_b / ((s_aa + s_bb)(m_a^2 + m_b^2)),
    computed as the luminance-times-correlation factorization.  Windows
    with zero denominator count as 1 when both variances vanish with equal
    means, and are skipped otherwise.
    """
    a, b = _pair(a, b)
    if window < 2:
        raise ValueError("window must be at least 2")
    if min(a.shape) < window:
        raise ValueError(f"image smaller than the {window}x{window} window")
    wa = sliding_window_view(a, (window, window))
    wb = sliding_window_view(b, (window, window))
    ma = wa.mean(axis=(-2, -1))
    mb = wb.mean(axis=(-2, -1))
    saa = (wa * wa).mean(axis=(-2, -1)) - ma * ma
    sbb = (wb * wb).mean(axis=(-2, -1)) - mb * mb
    sab = (wa * wb).mean(axis=(-2, -1)) - ma * mb

    var_sum = saa + sbb
    lum_den = ma * ma + mb * mb
    both_const = var_sum == 0.0
    degenerate_one = both_const & (ma == mb)
    skip = (both_const & (ma != mb)) | (~both_const & (lum_den == 0.0))

    with np.errstate(divide="ignore", invalid="ignore"):
        values = (2.0 * ma * mb / lum_den) * (2.0 * sab / var_sum)
    values = np.where(degenerate_one, 1.0, values)
    keep = ~skip
    if not np.any(keep):
        raise ValueError("no usable windows for the quality index")
    return float(np.mean(values[keep]))


def metric_report(reference, candidate) -> MetricReport:
    """All four metrics of candidate against reference."""
    return MetricReport(mse=mse(reference, candidate),
                        psnr=psnr(reference, candidate),
                        ssim=ssim(reference, candidate),
                        q=quality_index_q(reference, candidate))
