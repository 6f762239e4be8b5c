"""Select the elimination kernel at import time.

The compiled kernel is used when it has been built; setting the environment
variable ``CURVHOM_PURE=1`` forces the pure-Python fallback (useful for the
benchmark and for debugging).
"""

import os

from . import _elim_py

_impl = _elim_py
BACKEND = "python"

if os.environ.get("CURVHOM_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _elim as _compiled
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        _impl = _compiled
        BACKEND = "cython"

rank_rows = _impl.rank_rows
