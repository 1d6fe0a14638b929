"""Select the compiled kernels when available, else the pure-Python ones.

Set ``COVERWREATH_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
mul_canon = _pykernels.mul_canon
cayley_bfs = _pykernels.cayley_bfs

if os.environ.get("COVERWREATH_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        mul_canon = _ckernels.mul_canon
        cayley_bfs = _ckernels.cayley_bfs

# codes are signed 64-bit in the compiled path
MAX_CODE = 2**62


def backends():
    """Available backends as a name -> (mul_canon, cayley_bfs) map."""
    out = {"python": (_pykernels.mul_canon, _pykernels.cayley_bfs)}
    try:
        from . import _ckernels
    except ImportError:
        return out
    out["cython"] = (_ckernels.mul_canon, _ckernels.cayley_bfs)
    return out
