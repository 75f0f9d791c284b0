"""Hot inner loops, compiled when available.

The Cython extension ``_core`` is used if it was built; otherwise the numpy
implementations in ``_fallback`` are used. Set ``GEODECAY_PURE_PYTHON=1`` to
force the fallback.
"""

import os

from . import _fallback

if os.environ.get("GEODECAY_PURE_PYTHON", "") not in ("", "0"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = _fallback
        BACKEND = "python"
    else:
        BACKEND = "cython"

sweep = _impl.sweep
lower_hull = _impl.lower_hull


__all__ = ["BACKEND", "sweep", "lower_hull"]
