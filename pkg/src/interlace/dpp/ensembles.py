"""Finite determinantal point processes with exhaustive oracles.

A process on a finite ground set is determinantal when every n-point
correlation is the n x n minor of a kernel matrix.  This module builds
kernels from L-ensembles (P(X) prop. det L_X) and conditional
L-ensembles, and provides the enumeration oracles used throughout the
test suite: on desk-scale ground sets every probability, correlation
and gap probability can be computed by summing over all subsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "GroundSet",
    "KernelMatrix",
    "LMatrix",
    "lensemble_kernel",
    "conditional_kernel",
    "correlation",
    "gap_probability",
    "conjugate_kernel",
    "rescale_kernel",
    "enumerate_lensemble",
    "enumerate_conditional",
    "oracle_correlation",
    "oracle_gap",
]

_MAX_ENUM_CONFIGS = 1 << 18
_COND_LIMIT = 1e12


@dataclass(frozen=True)
class GroundSet:
    """Finite ordered site labels, optionally tagged with a block index."""

    points: tuple
    blocks: tuple | None = None

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if len(set(pts)) != len(pts):
            raise ValueError("ground-set labels must be distinct")
        if self.blocks is not None:
            object.__setattr__(self, "blocks", tuple(self.blocks))
            if len(self.blocks) != len(pts):
                raise ValueError("one block index per point required")

    def index(self, point) -> int:
        return self.points.index(point)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class KernelMatrix:
    """Correlation kernel on a finite ground set."""

    ground: GroundSet
    mat: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mat)
        if m.shape != (len(self.ground), len(self.ground)):
            raise ValueError("kernel shape must match ground set")
        if not np.all(np.isfinite(m)):
            raise ValueError("kernel entries must be finite")
        object.__setattr__(self, "mat", m)

    def minor(self, points) -> np.ndarray:
        idx = [self.ground.index(p) for p in points]
        return self.mat[np.ix_(idx, idx)]


@dataclass(frozen=True)
class LMatrix:
    """L-ensemble weight matrix, optionally conditioned on a subset.

    ``observed`` lists the labels of the observed window; when given,
    configurations are required to contain every point outside it and
    the process lives on the window (conditional ensemble).  On ground
    sets of at most 12 points, construction validates by enumeration
    that every configuration weight is a nonnegative probability.
    """

    ground: GroundSet
    mat: np.ndarray
    observed: tuple | None = None
    validate: bool = field(default=True, compare=False)

    def __post_init__(self):
        m = np.asarray(self.mat, dtype=complex)
        if np.allclose(m.imag, 0):
            m = m.real.copy()
        if m.shape != (len(self.ground), len(self.ground)):
            raise ValueError("L shape must match ground set")
        object.__setattr__(self, "mat", m)
        if self.observed is not None:
            object.__setattr__(self, "observed", tuple(self.observed))
            if not set(self.observed) <= set(self.ground.points):
                raise ValueError("observed subset must lie in the ground set")
        if self.validate and len(self.ground) <= 12:
            _, probs = (
                enumerate_conditional(self) if self.observed is not None else enumerate_lensemble(self)
            )
            if probs.min() < -1e-12:
                raise ValueError(f"negative configuration weight {probs.min():.3e}")

    @property
    def observed_mask(self) -> np.ndarray:
        if self.observed is None:
            return np.ones(len(self.ground), dtype=bool)
        obs = set(self.observed)
        return np.array([p in obs for p in self.ground.points])


def _checked_inverse(m: np.ndarray, what: str) -> np.ndarray:
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        raise np.linalg.LinAlgError(f"{what} is numerically singular (cond={cond:.3e})")
    return np.linalg.inv(m)


def lensemble_kernel(L: LMatrix) -> KernelMatrix:
    """Correlation kernel K = L (1 + L)^{-1} of the L-ensemble."""
    if L.observed is not None:
        raise ValueError("use conditional_kernel for conditioned ensembles")
    eye = np.eye(len(L.ground))
    inv = _checked_inverse(eye + L.mat, "1 + L")
    return KernelMatrix(L.ground, L.mat @ inv)


def conditional_kernel(L: LMatrix) -> KernelMatrix:
    """Kernel 1 - (1_Y + L)^{-1} restricted to the observed window Y."""
    if L.observed is None:
        raise ValueError("LMatrix has no observed subset")
    mask = L.observed_mask
    proj = np.diag(mask.astype(L.mat.dtype))
    inv = _checked_inverse(proj + L.mat, "1_Y + L")
    sub = np.ix_(mask, mask)
    ground_y = GroundSet(tuple(p for p, m in zip(L.ground.points, mask) if m))
    return KernelMatrix(ground_y, (proj - inv)[sub])


def correlation(K: KernelMatrix, points: Sequence) -> float:
    """n-point correlation det(K(x_i, x_j)); empty input gives 1."""
    pts = list(points)
    if len(set(pts)) != len(pts):
        return 0.0
    if not pts:
        return 1.0
    return float(np.linalg.det(K.minor(pts)).real)


def gap_probability(K: KernelMatrix, region: Sequence) -> float:
    """det(1 - K) restricted to the region: probability the region is empty."""
    pts = list(region)
    if not pts:
        return 1.0
    minor = K.minor(pts)
    return float(np.linalg.det(np.eye(len(pts)) - minor).real)


def conjugate_kernel(K: KernelMatrix, f: Callable) -> KernelMatrix:
    """Gauge transform K(x,y) -> f(x) K(x,y) / f(y); correlations unchanged."""
    vals = np.array([f(p) for p in K.ground.points], dtype=float)
    if np.any(vals <= 0):
        raise ValueError("conjugation function must be positive")
    return KernelMatrix(K.ground, vals[:, None] * K.mat / vals[None, :])


def rescale_kernel(kernel: Callable, a: float, b: float) -> Callable:
    """Kernel of the image process under x = a + b x' (continuous case)."""
    if b == 0:
        raise ValueError("b must be nonzero")

    def rescaled(xp, yp):
        return b * kernel(a + b * xp, a + b * yp)

    return rescaled


# ---------------------------------------------------------------------------
# enumeration oracles
# ---------------------------------------------------------------------------


def _all_subsets(n: int):
    if 2**n > _MAX_ENUM_CONFIGS:
        raise ValueError(f"enumeration over 2^{n} configurations refused")
    return itertools.chain.from_iterable(
        itertools.combinations(range(n), k) for k in range(n + 1)
    )


def enumerate_lensemble(L: LMatrix):
    """All configurations with P(X) = det(L_X) / det(1+L)."""
    n = len(L.ground)
    configs, weights = [], []
    for sub in _all_subsets(n):
        idx = list(sub)
        w = float(np.linalg.det(L.mat[np.ix_(idx, idx)]).real) if idx else 1.0
        configs.append(tuple(L.ground.points[i] for i in idx))
        weights.append(w)
    weights = np.array(weights)
    return configs, weights / weights.sum()


def enumerate_conditional(L: LMatrix):
    """Configurations of the observed window, weights det(L_{Y u Y^c})."""
    mask = L.observed_mask
    window = [i for i, m in enumerate(mask) if m]
    forced = [i for i, m in enumerate(mask) if not m]
    configs, weights = [], []
    for k in range(len(window) + 1):
        for sub in itertools.combinations(window, k):
            idx = list(sub) + forced
            w = float(np.linalg.det(L.mat[np.ix_(idx, idx)]).real) if idx else 1.0
            configs.append(tuple(L.ground.points[i] for i in sub))
            weights.append(w)
    weights = np.array(weights)
    total = weights.sum()
    if abs(total) < 1e-300:
        raise ZeroDivisionError("conditional ensemble has zero total mass")
    return configs, weights / total


def oracle_correlation(configs, probs, points) -> float:
    """P(all given points occupied), straight from enumerated configurations."""
    pts = set(points)
    return float(sum(p for c, p in zip(configs, probs) if pts <= set(c)))


def oracle_gap(configs, probs, region) -> float:
    """P(no point of the region occupied), from enumerated configurations."""
    reg = set(region)
    return float(sum(p for c, p in zip(configs, probs) if not (reg & set(c))))
