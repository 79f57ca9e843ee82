"""Hot-loop kernels with a compiled fast path.

The Cython extension is optional: when it is absent (or ORDTEX_NO_EXT is
set in the environment) a vectorized numpy fallback with identical
semantics is used instead.
"""

import os

from . import _purepy

if os.environ.get("ORDTEX_NO_EXT"):
    _impl = _purepy
    BACKEND = "python"
else:
    try:
        from . import _core as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _purepy
        BACKEND = "python"

curve_xy = _impl.curve_xy
index_of = _impl.index_of
window_codes = _impl.window_codes
counts_1d = _impl.counts_1d
