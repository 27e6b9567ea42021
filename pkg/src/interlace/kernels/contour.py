"""Contour quadrature: circles, truncated vertical lines, double-contour sums.

Circle integrals use the uniform trapezoid rule, which converges
geometrically for integrands analytic in an annulus around the contour.
Vertical-line integrals use Gauss-Legendre on a truncated symmetric
range chosen from the Gaussian/cubic decay of the integrand.

The double-contour reduction sum_{z,w} f(w) g(z) / (w - z) is the hot
loop behind every kernel evaluation; it carries a numba kernel with a
blocked pure-numpy fallback (see _accel).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._accel import NUMBA_ENABLED, njit

__all__ = ["Circle", "VLine", "ContourSpec", "circle_nodes", "vline_nodes", "double_contour_sum"]


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float
    nodes: int = 256

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.nodes < 8:
            raise ValueError("at least 8 nodes")


@dataclass(frozen=True)
class VLine:
    """Vertical line offset + i[-height, height], oriented upward."""

    offset: float
    height: float
    nodes: int = 400


@dataclass(frozen=True)
class ContourSpec:
    """Contour pair for double integrals: inner (w) and outer (z) paths."""

    w_path: Circle | VLine
    z_path: Circle | VLine

    def __post_init__(self):
        w, z = self.w_path, self.z_path
        if isinstance(w, Circle) and isinstance(z, Circle):
            dist = abs(w.center - z.center)
            if dist <= w.radius + z.radius:
                raise ValueError("contours intersect")
        if isinstance(w, VLine) and isinstance(z, Circle):
            if abs(w.offset - z.center.real) <= z.radius:
                raise ValueError("line crosses the circle")


def circle_nodes(c: Circle):
    """Nodes z_j and weights such that (1/2pi i) oint f dz = sum_j wt_j f(z_j)."""
    theta = 2 * np.pi * np.arange(c.nodes) / c.nodes
    e = np.exp(1j * theta)
    z = c.center + c.radius * e
    wt = c.radius * e / c.nodes
    return z, wt


def vline_nodes(v: VLine):
    """Nodes and weights with (1/2pi i) int_line f dw = sum_j wt_j f(w_j)."""
    y, gw = np.polynomial.legendre.leggauss(v.nodes)
    y = y * v.height
    gw = gw * v.height
    w = v.offset + 1j * y
    wt = gw / (2 * np.pi)
    return w, wt


@njit(cache=True)
def _double_sum_jit(fw, wn, gz, zn):
    s = 0.0j
    for j in range(zn.shape[0]):
        acc = 0.0j
        for i in range(wn.shape[0]):
            acc += fw[i] / (wn[i] - zn[j])
        s += gz[j] * acc
    return s


def _double_sum_numpy(fw, wn, gz, zn, block=2048):
    s = 0.0j
    for j0 in range(0, len(zn), block):
        zb = zn[j0 : j0 + block]
        s += np.sum(gz[j0 : j0 + block] * (fw @ (1.0 / (wn[:, None] - zb[None, :]))))
    return s


def double_contour_sum(fw, wn, gz, zn) -> complex:
    """sum_{j,i} fw[i] gz[j] / (wn[i] - zn[j]); fw, gz already carry weights."""
    if NUMBA_ENABLED:
        return complex(_double_sum_jit(fw, wn, gz, zn))
    return complex(_double_sum_numpy(fw, wn, gz, zn))
