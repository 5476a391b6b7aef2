"""Select the compiled solver kernels when available.

Set ``AUTOSTACK_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

if os.environ.get("AUTOSTACK_PURE_PYTHON"):
    from ._kernels_py import free_reduce, run, scan, splice
    BACKEND = "python"
else:
    try:
        from ._kernels import free_reduce, run, scan, splice
        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import free_reduce, run, scan, splice
        BACKEND = "python"

__all__ = ["BACKEND", "free_reduce", "run", "scan", "splice"]
