"""Determinantal structures on interlacing particle arrays.

Subpackages
-----------
patterns   exact combinatorics of interlacing triangular arrays
dynamics   conditioned-walk transitions and the multilevel Markov chain
dpp        finite determinantal processes and extended block kernels
kernels    contour-integral correlation kernels and edge rescalings
fredholm   Fredholm determinants and the Painleve route to the edge law
rmt        random-matrix sampling and Monte-Carlo verification
cli        reproducible experiment harness
"""

__version__ = "0.1.0"
