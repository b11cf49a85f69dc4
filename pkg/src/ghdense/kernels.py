"""Backend selection for the hot kernels.

Set GHDENSE_BACKEND=numpy to force the pure-numpy path, or
GHDENSE_BACKEND=numba to require the jitted path (import error if numba is
missing).  Unset, numba is used when available.  Both backends are
bit-identical; benchmarks/bench_backends.py compares their speed.
"""

from __future__ import annotations

import os

from . import _kernels_numpy

_requested = os.environ.get("GHDENSE_BACKEND", "").strip().lower()
if _requested not in ("", "numpy", "numba"):
    raise ValueError(
        f"GHDENSE_BACKEND must be 'numpy' or 'numba', got {_requested!r}"
    )

if _requested == "numpy":
    _impl = _kernels_numpy
    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as _impl  # type: ignore[no-redef]

        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        _impl = _kernels_numpy
        BACKEND = "numpy"

fps_indices = _impl.fps_indices
scan_maps = _impl.scan_maps
bnb_maps = _impl.bnb_maps


def warmup() -> None:
    """Trigger jit compilation so timed sections measure steady state."""
    import numpy as np

    d = np.array([[0.0, 1.0], [1.0, 0.0]])
    z = np.zeros(2)
    fps_indices(d, 2.0, 0)
    scan_maps(d, d, z, z)
    bnb_maps(d, d, z, z, np.array([0, 1], dtype=np.int64))
