"""Reproducible random streams.

All Monte-Carlo code in this package draws from numpy Generators backed
by the Philox counter-based bit generator.  A run is identified by a
64-bit seed; independent streams for parallel trial batches are derived
as ``(seed, stream_index)`` Philox keys, so any trial batch can be
reproduced in isolation.
"""

import numpy as np


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Generator for (seed, stream); distinct streams are independent."""
    return np.random.Generator(np.random.Philox(key=np.array([seed, stream], dtype=np.uint64)))
