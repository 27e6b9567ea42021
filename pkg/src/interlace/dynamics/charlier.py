"""Non-colliding walk transitions and the level link.

Continuous time: n independent rate-1 Poisson walks conditioned (via the
Vandermonde h-transform) never to collide have transition probability

    P_{n,t}(x, y) = (V(y) / V(x)) * det(p_t(y_j - x_i))_{i,j=1..n}

with p_t the Poisson pmf and V the Vandermonde.  Discrete time replaces
p_t by the Bernoulli one-step kernel (jump +1 with probability p); all
discrete-time quantities are exact rationals when p is rational.

The level link sends a size-n configuration to an interlacing size-(n-1)
one with probability (n-1)! V(x^{n-1}) / V(x^n); composing links from the
top level down yields the uniform measure on patterns with a fixed top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..patterns import (
    GTPattern,
    exact_det,
    is_interlaced,
    is_weyl,
    vandermonde,
    _lower_configs,
)

__all__ = [
    "DiscreteStepParams",
    "poisson_pmf",
    "karlin_mcgregor",
    "charlier_transition",
    "discrete_step_pmf",
    "discrete_charlier_transition",
    "markov_link",
    "sample_uniform_given_top",
]


def poisson_pmf(t: float, x: int) -> float:
    """e^{-t} t^x / x! for x >= 0, else 0; log-space for large x."""
    if t <= 0:
        raise ValueError("t must be positive")
    if x < 0:
        return 0.0
    return math.exp(-t + x * math.log(t) - math.lgamma(x + 1))


def _check_pair(x: Sequence[int], y: Sequence[int]):
    if len(x) != len(y):
        raise ValueError("x and y must have the same length")
    if not is_weyl(x):
        raise ValueError("x must be strictly increasing")
    if not is_weyl(y):
        raise ValueError("y must be strictly increasing")


def karlin_mcgregor(x: Sequence[int], y: Sequence[int], t: float) -> float:
    """det(p_t(y_i - x_j)): probability that n independent Poisson walks
    started at x are at y at time t without any collision in between."""
    _check_pair(x, y)
    mat = np.array([[poisson_pmf(t, yi - xj) for xj in x] for yi in y])
    return float(np.linalg.det(mat))


def charlier_transition(x: Sequence[int], y: Sequence[int], t: float) -> float:
    """Conditioned-walk transition probability (V(y)/V(x)) det(p_t(y_j - x_i))."""
    _check_pair(x, y)
    return vandermonde(y) / vandermonde(x) * karlin_mcgregor(x, y, t)


@dataclass(frozen=True)
class DiscreteStepParams:
    """One-step jump probability, exact rational in (0, 1)."""

    p: Fraction

    def __post_init__(self):
        p = Fraction(self.p)
        object.__setattr__(self, "p", p)
        if not 0 < p < 1:
            raise ValueError("p must lie strictly between 0 and 1")


def discrete_step_pmf(params: DiscreteStepParams, x: int, y: int) -> Fraction:
    """One-particle step: p if y = x+1, 1-p if y = x, else 0."""
    if y == x + 1:
        return params.p
    if y == x:
        return 1 - params.p
    return Fraction(0)


def discrete_charlier_transition(
    params: DiscreteStepParams, x: Sequence[int], y: Sequence[int]
) -> Fraction:
    """Exact rational (V(y)/V(x)) det(P(x_i, y_j)) for the one-step kernel."""
    _check_pair(x, y)
    mat = [[discrete_step_pmf(params, xi, yj) for yj in y] for xi in x]
    return Fraction(vandermonde(y), vandermonde(x)) * exact_det(mat)


def markov_link(upper: Sequence[int], lower: Sequence[int]) -> Fraction:
    """Link from level n to n-1: (n-1)! V(lower)/V(upper) on interlacing pairs."""
    n = len(upper)
    if len(lower) != n - 1:
        raise ValueError("lower must be one shorter than upper")
    if n == 1:
        return Fraction(1) if len(lower) == 0 else Fraction(0)
    if not is_interlaced(lower, upper):
        return Fraction(0)
    return Fraction(math.factorial(n - 1)) * Fraction(vandermonde(lower), vandermonde(upper))


def sample_uniform_given_top(top: Sequence[int], rng: np.random.Generator) -> GTPattern:
    """Sample a pattern uniformly among those with the given top level.

    Sequential sampling through the links from level N down to 1; each
    step enumerates the interlacing configurations below the current
    level and draws one with probability proportional to its Vandermonde.
    """
    if not is_weyl(top):
        raise ValueError("top must be strictly increasing")
    levels = [tuple(top)]
    current = tuple(top)
    while len(current) > 1:
        choices = list(_lower_configs(current))
        weights = np.array([float(vandermonde(c)) if len(c) > 1 else 1.0 for c in choices])
        probs = weights / weights.sum()
        current = choices[rng.choice(len(choices), p=probs)]
        levels.append(current)
    return GTPattern(tuple(reversed(levels)))
