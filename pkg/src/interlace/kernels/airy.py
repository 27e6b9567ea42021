"""Airy function and Airy-type kernels, dependency-free.

Ai solves Ai'' = x Ai with the decaying branch at +infinity.  It is
computed from its Maclaurin series for |x| <= 4.5 and from saddle-point
contour quadrature of (1/2pi i) int exp(z^3/3 - x z) dz beyond that; the
two regimes are cross-checked at the seam by the test suite.  Documented
absolute accuracy 1e-12 on |x| <= 30.

The stationary kernel is int_0^inf Ai(x+m) Ai(y+m) dm.  Its two-time
extension has a decaying branch (t <= t') and a branch t > t' that
equals the decaying-type integral minus a Gaussian bridge; the bridge
subtraction is used for small time gaps (where the direct oscillatory
integral converges too slowly) and the direct integral for large gaps
(where the bridge and the integral individually overflow).
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["airy", "airy_kernel", "extended_airy_kernel", "airy_bridge"]

_AI0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)  # Ai(0)
_AIP0 = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)  # Ai'(0)
_SEAM = 4.5
_RANGE = 30.0


def _airy_series(x: np.ndarray) -> np.ndarray:
    """Maclaurin series Ai = Ai(0) F(x) + Ai'(0) G(x), |x| <= seam."""
    x3 = x * x * x
    f = np.ones_like(x)
    g = x.copy()
    tf = np.ones_like(x)
    tg = x.copy()
    for k in range(0, 40):
        tf = tf * x3 / ((3 * k + 2) * (3 * k + 3))
        tg = tg * x3 / ((3 * k + 3) * (3 * k + 4))
        f += tf
        g += tg
    return _AI0 * f + _AIP0 * g


_GL200 = np.polynomial.legendre.leggauss(200)
_GL400 = np.polynomial.legendre.leggauss(400)


def _airy_pos(x: np.ndarray) -> np.ndarray:
    """Saddle-point quadrature for x >= seam: contour through sqrt(x),
    Ai(x) = (e^{-2x^{3/2}/3} / pi) int_0^inf e^{-sqrt(x) u^2} cos(u^3/3) du."""
    rx = np.sqrt(x)
    umax = np.sqrt(42.0) / np.sqrt(rx)
    t, gw = _GL200
    u = 0.5 * umax[:, None] * (t[None, :] + 1.0)
    du = 0.5 * umax[:, None] * gw[None, :]
    integrand = np.exp(-rx[:, None] * u * u) * np.cos(u**3 / 3.0)
    pref = np.exp(-2.0 / 3.0 * x * rx) / np.pi
    return pref * np.sum(integrand * du, axis=1)


def _airy_neg(s: np.ndarray) -> np.ndarray:
    """Oscillatory branch: Ai(-s) = (1/pi) Im[int_A + int_B] with A the
    imaginary-axis segment [0, i sqrt(s)] and B the descent ray
    i sqrt(s) + e^{i pi/4} u; integrand exp(z^3/3 + s z)."""
    rs = np.sqrt(s)
    # segment A: z = i v, f = i(s v - v^3/3)
    t, gw = _GL400
    v = 0.5 * rs[:, None] * (t[None, :] + 1.0)
    dv = 0.5 * rs[:, None] * gw[None, :]
    phase = s[:, None] * v - v**3 / 3.0
    int_a = np.sum(1j * np.exp(1j * phase) * dv, axis=1)
    # ray B: z = i sqrt(s) + e^{i pi/4} u
    e = np.exp(1j * np.pi / 4.0)
    umax = np.sqrt(42.0) / np.sqrt(rs)
    t2, gw2 = _GL200
    u = 0.5 * umax[:, None] * (t2[None, :] + 1.0)
    du = 0.5 * umax[:, None] * gw2[None, :]
    z = 1j * rs[:, None] + e * u
    f = z**3 / 3.0 + s[:, None] * z
    int_b = np.sum(e * np.exp(f) * du, axis=1)
    return (int_a + int_b).imag / np.pi


def airy(x):
    """Airy function Ai on |x| <= 30, vectorized; absolute accuracy 1e-12."""
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(np.abs(arr) > _RANGE):
        raise ValueError(f"airy documented range is |x| <= {_RANGE}")
    out = np.empty_like(arr)
    mid = np.abs(arr) <= _SEAM
    pos = arr > _SEAM
    neg = arr < -_SEAM
    if mid.any():
        out[mid] = _airy_series(arr[mid])
    if pos.any():
        out[pos] = _airy_pos(arr[pos])
    if neg.any():
        out[neg] = _airy_neg(-arr[neg])
    return float(out[0]) if scalar else out


def _tail_start(lo: float) -> float:
    """Upper integration limit: beyond it Ai(lo + m)^2 integrates below 1e-28."""
    return max(13.0 - lo, 1.0)


def _gl_panels(a: float, b: float, per_panel: int = 24, panel_len: float = 2.0):
    n_panels = max(1, int(np.ceil((b - a) / panel_len)))
    edges = np.linspace(a, b, n_panels + 1)
    t, gw = np.polynomial.legendre.leggauss(per_panel)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    weights = (half[:, None] * gw[None, :]).ravel()
    return nodes, weights


def airy_kernel(x: float, y: float) -> float:
    """Stationary kernel int_0^inf Ai(x+m) Ai(y+m) dm, x, y >= -10."""
    if min(x, y) < -10.0:
        raise ValueError("designed truncation range is x, y >= -10")
    lo = min(x, y)
    nodes, weights = _gl_panels(0.0, _tail_start(lo))
    return float(np.sum(weights * airy(x + nodes) * airy(y + nodes)))


def airy_bridge(x: float, y: float, dt: float) -> float:
    """Full-line integral int_R e^{l dt} Ai(x+l) Ai(y+l) dl for dt > 0,
    in closed form: the Gaussian bridge
    exp(-(x-y)^2/(4 dt) - dt (x+y)/2 + dt^3/12) / sqrt(4 pi dt)."""
    if dt <= 0:
        raise ValueError("bridge needs a positive time gap")
    expo = -((x - y) ** 2) / (4.0 * dt) - dt * (x + y) / 2.0 + dt**3 / 12.0
    return math.exp(expo) / math.sqrt(4.0 * math.pi * dt)


_GAP_SWITCH = 3.0  # bridge subtraction below, direct oscillatory quadrature above


def extended_airy_kernel(x: float, t: float, xp: float, tp: float) -> float:
    """Two-time Airy kernel.

    t <= t': int_{R+} e^{-l (t'-t)} Ai(x+l) Ai(x'+l) dl.
    t >  t': -int_{R-} of the same integrand; evaluated either as
    (decaying-type integral) - (Gaussian bridge) for small gaps or by
    direct quadrature over l <= 0 for gaps above the switch point.
    Documented range |t - t'| <= 10.
    """
    if abs(t - tp) > 10.0:
        raise ValueError("designed range is |t - t'| <= 10")
    if min(x, xp) < -10.0:
        raise ValueError("designed truncation range is x, x' >= -10")
    lo = min(x, xp)
    if t <= tp:
        nodes, weights = _gl_panels(0.0, _tail_start(lo))
        vals = np.exp(-nodes * (tp - t)) * airy(x + nodes) * airy(xp + nodes)
        return float(np.sum(weights * vals))
    dt = t - tp
    if dt <= _GAP_SWITCH:
        nodes, weights = _gl_panels(0.0, _tail_start(lo))
        grow = np.exp(nodes * dt) * airy(x + nodes) * airy(xp + nodes)
        return float(np.sum(weights * grow)) - airy_bridge(x, xp, dt)
    # direct: -int_0^inf e^{-m dt} Ai(x-m) Ai(x'-m) dm, oscillatory decaying
    depth = min(42.0 / dt + 8.0, _RANGE - max(x, xp, 0.0))
    nodes, weights = _gl_panels(0.0, depth, per_panel=32, panel_len=1.0)
    vals = np.exp(-nodes * dt) * airy(x - nodes) * airy(xp - nodes)
    return -float(np.sum(weights * vals))
