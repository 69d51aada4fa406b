"""Kernel backend selection.

numba kernels are used when numba imports and ``EFFDIFF_DISABLE_NUMBA`` is
unset (or set to 0/false/no/off). Otherwise the vectorized numpy kernels run.
The choice is made once, at import time.
"""

import os

import numpy as np

_FLAG = os.environ.get("EFFDIFF_DISABLE_NUMBA", "").strip().lower()
DISABLED_BY_ENV = _FLAG not in ("", "0", "false", "no", "off")

try:
    if DISABLED_BY_ENV:
        raise ImportError("disabled by EFFDIFF_DISABLE_NUMBA")
    from . import _kernels_jit as kernels
    NAME = "numba"
except ImportError:
    from . import _kernels_np as kernels
    NAME = "numpy"


def as_1d(*arrays):
    """Broadcast inputs to contiguous 1-d float64 arrays plus the common shape."""
    b = np.broadcast_arrays(*(np.asarray(a, dtype=np.float64) for a in arrays))
    shape = b[0].shape
    return [np.ascontiguousarray(x).ravel() for x in b], shape
