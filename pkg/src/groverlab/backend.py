"""Kernel backend selection.

Prefers the compiled extension when it imported cleanly; set the
environment variable ``GROVERLAB_PURE_PYTHON=1`` to force the NumPy
fallback (useful for benchmarking the two against each other).
"""

import os

if os.environ.get("GROVERLAB_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels_c as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]


def active_backend() -> str:
    """Name of the kernel implementation in use: 'compiled' or 'python'."""
    return kernels.BACKEND
