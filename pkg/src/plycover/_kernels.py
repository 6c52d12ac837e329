"""Kernel backend selection.

The compiled extension is used when it was built and the problem fits in 64
bits; otherwise the pure-Python implementation runs.  Setting the environment
variable ``PLYCOVER_PURE_PYTHON=1`` forces the fallback at import time.
"""

import os

from . import _pykernels

_compiled = None
if not os.environ.get("PLYCOVER_PURE_PYTHON"):
    try:
        from . import _ckernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = _compiled.BACKEND if _compiled is not None else _pykernels.BACKEND


def backends():
    """Available kernel modules, compiled first."""
    return [m for m in (_compiled, _pykernels) if m is not None]


def find_cover(sq_cover, pt_opts, caps, t, card, forced=0, allowed=None, backend=None):
    impl = backend
    if impl is None:
        fits = len(sq_cover) <= 64 and len(pt_opts) <= 64
        impl = _compiled if (_compiled is not None and fits) else _pykernels
    return impl.find_cover(sq_cover, pt_opts, caps, t, card, forced, allowed)


def max_depth(mask, caps):
    if _compiled is not None:
        try:
            return _compiled.max_depth(mask, caps)
        except OverflowError:
            pass
    return _pykernels.max_depth(mask, caps)
