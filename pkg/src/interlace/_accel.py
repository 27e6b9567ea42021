"""numba on/off switch.

Hot loops in this package are decorated with :func:`njit` imported from
here.  Setting the environment variable ``INTERLACE_NO_NUMBA=1`` before
import replaces the decorator with a no-op, so the same source runs as
plain Python/numpy (slow but dependency-light and debuggable).  The
benchmark script under ``benchmarks/`` compares the two paths.
"""

import os

NUMBA_ENABLED = os.environ.get("INTERLACE_NO_NUMBA", "0") not in ("1", "true", "yes")

if NUMBA_ENABLED:
    from numba import njit, prange
else:

    def njit(func=None, **kwargs):
        if func is not None:
            return func

        def wrapper(f):
            return f

        return wrapper

    def prange(*args):
        return range(*args)
