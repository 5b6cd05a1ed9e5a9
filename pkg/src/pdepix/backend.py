"""Backend selection for the stencil kernels.

The env var PDEPIX_BACKEND picks the implementation at import time:

    PDEPIX_BACKEND=numba   require the @njit kernels (error if numba missing)
    PDEPIX_BACKEND=numpy   force the pure-numpy fallback
    PDEPIX_BACKEND=auto    numba when importable, numpy otherwise (default)

Both backends implement the same signatures and agree to round-off;
benchmarks/backend_bench.py times them side by side.
"""

import os

_requested = os.environ.get("PDEPIX_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"PDEPIX_BACKEND={_requested!r} not understood (use numba, numpy or auto)")

if _requested == "numpy":
    from . import _kernels_numpy as kernels
    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as kernels
        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        from . import _kernels_numpy as kernels
        BACKEND = "numpy"


def warmup():
    """Trigger JIT compilation of every kernel on tiny inputs (no-op for numpy)."""
    import numpy as np
    u = np.zeros((4, 4))
    k = np.full((3, 3), 1.0 / 9.0)
    for periodic in (True, False):
        kernels.laplacian5(u, periodic)
        kernels.central_diff_x(u, periodic)
        kernels.central_diff_y(u, periodic)
        kernels.upwind_diff_x(u, u, periodic)
        kernels.upwind_diff_y(u, u, periodic)
        kernels.third_diff_x(u, periodic)
        kernels.third_diff_y(u, periodic)
        kernels.fourth_diff_x(u, periodic)
        kernels.fourth_diff_y(u, periodic)
        kernels.convolve2d(u, k, periodic)
        kernels.pm_rhs(u, 0.1, False, periodic)
        kernels.pm_rhs(u, 0.1, True, periodic)
