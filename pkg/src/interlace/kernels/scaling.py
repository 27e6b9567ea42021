"""Edge-scaling constants for the t -> infinity (L -> infinity) limits.

The rescaled kernels converge to S_v^{-1} K2(s1/S_v, u1/S_h; ...) with
the constants below; kappa normalizes the cubic term at the double
critical point, z_c is its location.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["TasepEdgeScaling", "GueEdgeScaling"]


@dataclass(frozen=True)
class TasepEdgeScaling:
    """Particle density parameter alpha in (0,1): level n ~ alpha t."""

    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")

    @property
    def z_c(self) -> float:
        return 1.0 - math.sqrt(self.alpha)

    @property
    def kappa(self) -> float:
        ra = math.sqrt(self.alpha)
        return 1.0 / (ra * (1.0 - ra))

    @property
    def S_v(self) -> float:
        ra = math.sqrt(self.alpha)
        return (1.0 - ra) ** (2.0 / 3.0) / self.alpha ** (1.0 / 6.0)

    @property
    def S_h(self) -> float:
        ra = math.sqrt(self.alpha)
        return self.alpha ** (2.0 / 3.0) * (1.0 - ra) ** (1.0 / 3.0)

    def level(self, t: float, u: float) -> float:
        return self.alpha * t + 2.0 * u * t ** (2.0 / 3.0)

    def position(self, t: float, u: float) -> float:
        ra = math.sqrt(self.alpha)
        return (
            (1.0 - 2.0 * ra) * t
            - 2.0 * u / ra * t ** (2.0 / 3.0)
            + u * u / self.alpha**1.5 * t ** (1.0 / 3.0)
        )


@dataclass(frozen=True)
class GueEdgeScaling:
    """Level ~ eta L, time ~ tau L; alpha, beta >= 0 tilt the (level, time)
    direction of the observation path."""

    eta: float
    tau: float
    alpha: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        if self.eta <= 0 or self.tau <= 0:
            raise ValueError("eta, tau must be positive")
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha, beta must be nonnegative")

    @property
    def z_c(self) -> float:
        return math.sqrt(self.eta / (2.0 * self.tau))

    @property
    def kappa(self) -> float:
        return (2.0 * self.tau) ** 1.5 / math.sqrt(self.eta)

    @property
    def S_v(self) -> float:
        return math.sqrt(self.tau / 2.0) / self.eta ** (1.0 / 6.0)

    @property
    def S_h(self) -> float:
        denom = self.alpha * self.tau + self.beta * self.eta
        if denom == 0.0:
            return math.inf
        return 2.0 * self.eta ** (2.0 / 3.0) * self.tau / denom

    def u_over_Sh(self, u: float) -> float:
        """u / S_h, finite also in the fixed-(n,t) case alpha = beta = 0."""
        denom = self.alpha * self.tau + self.beta * self.eta
        return u * denom / (2.0 * self.eta ** (2.0 / 3.0) * self.tau)

    def level(self, L: float, u: float) -> float:
        return self.eta * L - self.alpha * u * L ** (2.0 / 3.0)

    def time(self, L: float, u: float) -> float:
        return self.tau * L + self.beta * u * L ** (2.0 / 3.0)
