"""Backend selection for the element-table kernels.

numba is used when importable unless ``K3FM_NO_NUMBA`` is set to a non-empty
value other than ``0``; the numpy fallback computes identical integers.
"""
import os

from . import _kernels_numpy

_disabled = os.environ.get("K3FM_NO_NUMBA", "") not in ("", "0")

if _disabled:
    _impl = _kernels_numpy
    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as _impl
        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _impl = _kernels_numpy
        BACKEND = "numpy"

# int64 products stay exact below this scale (see the kernel modules)
MAX_SCALE = 1 << 24

grid = _impl.grid
q_table = _impl.q_table
pair_table = _impl.pair_table
order_table = _impl.order_table
match_pairings = _impl.match_pairings


def backends():
    """Map of every importable backend name to its kernel module."""
    out = {"numpy": _kernels_numpy}
    try:
        from . import _kernels_numba
        out["numba"] = _kernels_numba
    except ImportError:  # pragma: no cover
        pass
    return out
