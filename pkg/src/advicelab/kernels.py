"""Hot graph kernels, compiled when available.

The Cython build (``advicelab._kernels``) is preferred; the pure-Python
module with the same functions is used otherwise, or when the environment
variable ``ADVICELAB_PURE`` is set.
"""
import os

from . import _kernels_py

if os.environ.get("ADVICELAB_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

bfs_dist = _impl.bfs_dist
eccentricities = _impl.eccentricities
flood_max = _impl.flood_max
