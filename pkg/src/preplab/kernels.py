"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure
numpy/Python fallback is. Setting ``PREPLAB_PURE=1`` forces the fallback.
"""

import os

from . import _pykernels

if os.environ.get("PREPLAB_PURE", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = _impl.BACKEND
int_convolve = _impl.int_convolve
escape_rows = _impl.escape_rows
aberth = _impl.aberth


def backends():
    """Return ``{name: module}`` for every backend that can be imported."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
