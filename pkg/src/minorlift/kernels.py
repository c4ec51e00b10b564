"""Kernel backend selection: compiled extension if available, numpy otherwise.

Set MINORLIFT_FORCE_PYTHON_KERNELS=1 to force the pure-Python backend.
"""

from __future__ import annotations

import os

if os.environ.get("MINORLIFT_FORCE_PYTHON_KERNELS"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

principal_minor = _impl.principal_minor
minor_lift_sum = _impl.minor_lift_sum
jacobi_eigenvalues = _impl.jacobi_eigenvalues
