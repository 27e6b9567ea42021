"""Gaussian-ensemble correlation kernels: minors, two-time extension, edge.

All share one analytic form over triples (level n, time t, position x):

    K(n1,t1,x1; n2,t2,x2) = -(memory term) 1[n1<=n2, t1>=t2, pair distinct]
      + (2/(2pi i)^2) oint_{|z|=r} dz int_{line} dw
            e^{t1 w^2 - 2 x1 w} w^{n1} / (e^{t2 z^2 - 2 x2 z} z^{n2}) * 1/(w-z)

with the memory term (2/2pi i) int e^{(t1-t2)w^2 - 2(x1-x2)w} w^{n1-n2} dw.
The memory fires on chain-ordered pairs (level up, time back), matching
the discrete space-like kernel; see kernels.tasep.

The w-line is vertical.  In the native configuration it passes to the
right of the z-circle; for edge evaluations both contours are routed
through the critical point on the negative axis (line left of the
circle), which picks up an explicit residue correction

    + (2/2pi i) oint_{|z|=r} e^{(t1-t2)z^2 - 2(x1-x2)z} z^{n1-n2} dz.

The memory integral is evaluated by a positive-axis Laplace form when
n1 < n2 (always convergent, log-space stable) and by a saddle-centred
vertical line otherwise.  Integer powers go through exp(m Log .).
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .airy import extended_airy_kernel
from .contour import Circle, VLine, circle_nodes, double_contour_sum, vline_nodes
from .scaling import GueEdgeScaling
from .tasep import memory_fires

__all__ = [
    "extended_gue_kernel",
    "gue_minor_kernel",
    "diffusion_kernel",
    "rescaled_edge_kernel_gue",
    "gue_edge_airy_target",
]

_IMAG_TOL = 1e-8


def _as_real(val: complex, scale: float, what: str) -> float:
    if abs(val.imag) > _IMAG_TOL * max(1.0, scale):
        raise ArithmeticError(f"{what}: imaginary residue {val.imag:.3e} exceeds tolerance")
    return float(val.real)


def _auto_height(t: float, n: int, delta: float) -> float:
    """Truncation height: e^{-t y^2} |w|^n decayed below e^{-48} relatively."""
    y = math.sqrt(48.0 / max(t, 1e-12))
    for _ in range(4):
        grow = 0.5 * n * math.log1p(y * y / (delta * delta)) if n > 0 else 0.0
        y = math.sqrt((48.0 + grow) / max(t, 1e-12))
    return y


def _memory_zero_gap(d: int, x1: float, x2: float) -> float:
    """(2/2pi i) int_{d+iR} e^{-2(x1-x2)w} w^{-d} dw for d >= 1 (equal times):
    2 (2(x2-x1))^{d-1}/(d-1)! on x2 > x1 (half weight at the jump for d=1)."""
    tau = 2.0 * (x2 - x1)
    if d == 1:
        return 2.0 * (1.0 if tau > 0 else (0.5 if tau == 0 else 0.0))
    if tau <= 0:
        return 0.0
    return 2.0 * math.exp((d - 1) * math.log(tau) - math.lgamma(d))


def _memory_gue(n1, t1, x1, n2, t2, x2, dlc: complex = 0.0, hint: float | None = None) -> complex:
    """(2/2pi i) int e^{(t1-t2)w^2-2(x1-x2)w} w^{n1-n2} dw, times e^{dlc}."""
    dT, dX, m = t1 - t2, x1 - x2, n1 - n2
    if m < 0:
        d = -m
        if dT == 0.0:
            return _memory_zero_gap(d, x1, x2) * cmath.exp(dlc)
        # Laplace form: 2 int_0^inf v^{d-1}/(d-1)! gauss_{2 dT}(v + 2 dX) dv
        def logf(v):
            return (
                (d - 1) * np.log(v)
                - (v + 2.0 * dX) ** 2 / (4.0 * dT)
                - 0.5 * math.log(4.0 * math.pi * dT)
                - math.lgamma(d)
            )

        disc = dX * dX + 2.0 * dT * (d - 1)
        vstar = -dX + math.sqrt(disc) if disc > 0 else max(-dX, math.sqrt(dT))
        vstar = max(vstar, 1e-12)
        curv = (d - 1) / vstar**2 + 1.0 / (2.0 * dT)
        sig = 1.0 / math.sqrt(curv)
        lo, hi = max(vstar - 14.0 * sig, 0.0), vstar + 14.0 * sig
        y, gw = np.polynomial.legendre.leggauss(400)
        v = 0.5 * (hi + lo) + 0.5 * (hi - lo) * y
        dv = 0.5 * (hi - lo) * gw
        good = v > 0
        val = np.sum(dv[good] * np.exp(logf(v[good]) + dlc.real))
        return 2.0 * val * cmath.exp(1j * dlc.imag)
    # m >= 0: entire integrand, saddle-centred vertical line
    if dT <= 0.0:
        raise ArithmeticError("memory with level down requires a positive time gap")
    if m == 0:
        delta = dX / (2.0 * dT) if hint is None else hint
    else:
        disc = complex(dX * dX - 2.0 * dT * m)
        r1 = (dX + cmath.sqrt(disc)) / (2.0 * dT)
        r2 = (dX - cmath.sqrt(disc)) / (2.0 * dT)
        if hint is not None:
            delta = (r1 if abs(r1 - hint) < abs(r2 - hint) else r2).real
        else:
            delta = r1.real if abs(r1.real) >= abs(r2.real) else r2.real
        if delta == 0.0:
            delta = math.sqrt(m / (2.0 * dT))
    height = _auto_height(dT, m, max(abs(delta), 1e-3))
    line = VLine(delta, height, 600)
    w, wt = vline_nodes(line)
    expo = dT * w * w - 2.0 * dX * w + (m * np.log(w) if m else 0.0) + dlc
    return 2.0 * np.sum(wt * np.exp(expo))


def _gue_eval(
    n1,
    t1,
    x1,
    n2,
    t2,
    x2,
    delta: float,
    radius: float,
    line_nodes: int,
    circ_nodes: int,
    log_conj=(0.0 + 0.0j, 0.0 + 0.0j),
    what: str = "gue kernel",
) -> float:
    if n1 < 1 or n2 < 1:
        raise ValueError("levels must be >= 1")
    if t1 <= 0 or t2 <= 0:
        raise ValueError("times must be positive")
    if radius <= 0 or abs(delta) <= radius:
        raise ValueError("line must not cross the z-circle")
    lc1, lc2 = complex(log_conj[0]), complex(log_conj[1])
    height = _auto_height(t1, n1, abs(delta))
    w, wwt = vline_nodes(VLine(delta, height, line_nodes))
    z, zwt = circle_nodes(Circle(0.0, radius, circ_nodes))
    fw = wwt * np.exp(t1 * w * w - 2.0 * x1 * w + n1 * np.log(w) - lc1)
    gz = zwt * np.exp(-t2 * z * z + 2.0 * x2 * z - n2 * np.log(z) + lc2)
    val = 2.0 * double_contour_sum(fw, w, gz, z)
    if delta < 0 and n1 < n2:
        # line moved across the circle: residue correction (entire integrand
        # for n1 >= n2, so the correction vanishes identically there)
        corr = np.exp((t1 - t2) * z * z - 2.0 * (x1 - x2) * z + (n1 - n2) * np.log(z))
        val += 2.0 * np.sum(zwt * corr) * cmath.exp(lc2 - lc1)
    if memory_fires(n1, t1, n2, t2):
        val -= _memory_gue(n1, t1, x1, n2, t2, x2, dlc=lc2 - lc1, hint=delta if delta < 0 else None)
    return _as_real(val, abs(val), what)


def extended_gue_kernel(
    n1: int, t1: float, x1: float, n2: int, t2: float, x2: float, delta: float = 1.0
) -> float:
    """Two-time minor kernel entry at (level, time, position) triples."""
    return _gue_eval(n1, t1, x1, n2, t2, x2, delta, delta / 2.0, 400, 256)


def gue_minor_kernel(x1: float, n1: int, x2: float, n2: int) -> float:
    """Fixed-time minor kernel: the two-time kernel at t1 = t2 = 1."""
    return extended_gue_kernel(n1, 1.0, x1, n2, 1.0, x2)


def diffusion_kernel(
    n1: int, t1: float, x1: float, n2: int, t2: float, x2: float, delta: float = 0.8
) -> float:
    """Diffusion-limit kernel of the rescaled lattice system.

    The same analytic object as extended_gue_kernel; evaluated through an
    independent quadrature pipeline (uniform trapezoid on the line and a
    coarser circle at different radii) so agreement between the two
    routes is a genuine numerical check, not a tautology.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("levels must be >= 1")
    if t1 <= 0 or t2 <= 0:
        raise ValueError("times must be positive")
    height = _auto_height(t1, n1, delta) * 1.15
    m = 1201
    y = np.linspace(-height, height, m)
    w = delta + 1j * y
    fw = np.exp(t1 * w * w - 2.0 * x1 * w + n1 * np.log(w)) / (2.0 * np.pi)
    dw = y[1] - y[0]
    theta = 2.0 * np.pi * np.arange(384) / 384
    z = 0.45 * delta * np.exp(1j * theta)
    gz = np.exp(-t2 * z * z + 2.0 * x2 * z - n2 * np.log(z)) * (z / 384)
    val = 2.0 * np.sum(fw[:, None] * gz[None, :] / (w[:, None] - z[None, :])) * dw
    if memory_fires(n1, t1, n2, t2):
        dT, dX, mm = t1 - t2, x1 - x2, n1 - n2
        if dT == 0.0:
            val -= _memory_zero_gap(-mm, x1, x2)
        else:
            hh = _auto_height(dT, max(mm, 0), delta)
            yy = np.linspace(-hh, hh, 2401)
            ww = delta + 1j * yy
            mem = np.exp(dT * ww * ww - 2.0 * dX * ww + mm * np.log(ww)) / (2.0 * np.pi)
            val -= 2.0 * np.trapezoid(mem, dx=yy[1] - yy[0])
    return _as_real(val, abs(val), "diffusion kernel")


# ---------------------------------------------------------------------------
# edge rescaling
# ---------------------------------------------------------------------------


def _gue_edge_coords(L: float, u: float, xi: float, params: GueEdgeScaling):
    n = int(round(params.level(L, u)))
    if n < 1:
        raise ValueError("u too large: level index below 1")
    u_eff = (params.eta * L - n) / (params.alpha * L ** (2.0 / 3.0)) if params.alpha > 0 else u
    t = params.time(L, u_eff)
    x = -math.sqrt(2.0 * n * t) - xi * L ** (1.0 / 3.0)
    return n, t, x, u_eff


def _gue_edge_log_conj(n, t, x, u_eff, xi, params: GueEdgeScaling) -> complex:
    """Critical value of the w-side integrand plus the cubic recentring
    shift.  The shift enters with the sign opposite to the discrete edge
    because here the level index decreases with u."""
    wc = -params.z_c  # left edge: critical point on the negative axis
    tau = params.u_over_Sh(u_eff)
    sig = xi / params.S_v
    return (
        t * wc * wc
        - 2.0 * x * wc
        + n * cmath.log(complex(wc))
        + (tau * sig - tau**3 / 3.0)
    )


def rescaled_edge_kernel_gue(
    L: float,
    u1: float,
    xi1: float,
    u2: float,
    xi2: float,
    params: GueEdgeScaling,
    line_nodes: int = 800,
    circ_nodes: int | None = None,
):
    """Conjugation-normalized rescaled kernel L^{1/3} K at the edge scaling.

    Contours run through the critical point -sqrt(eta/2 tau); the level
    index is rounded with the remainder absorbed into the effective u.
    Returns (value, (u1_eff, xi1), (u2_eff, xi2)).
    """
    n1, t1, x1, u1e = _gue_edge_coords(L, u1, xi1, params)
    n2, t2, x2, u2e = _gue_edge_coords(L, u2, xi2, params)
    lc1 = _gue_edge_log_conj(n1, t1, x1, u1e, xi1, params)
    lc2 = _gue_edge_log_conj(n2, t2, x2, u2e, xi2, params)
    wc = -params.z_c
    eps = params.z_c * (params.kappa * L) ** (-1.0 / 3.0)
    delta = wc - 2.0 * eps
    radius = params.z_c + eps
    if circ_nodes is None:
        circ_nodes = int(max(512, 64 * (params.kappa * L) ** (1.0 / 3.0)))
    val = _gue_eval(
        n1, t1, x1, n2, t2, x2, delta, radius, line_nodes, circ_nodes,
        log_conj=(lc1, lc2), what="gue edge kernel",
    )
    return L ** (1.0 / 3.0) * val, (u1e, xi1), (u2e, xi2)


def gue_edge_airy_target(params: GueEdgeScaling, u1, xi1, u2, xi2) -> float:
    """S_v^{-1} K2(xi1/S_v, -u1/S_h; xi2/S_v, -u2/S_h); see kernels.tasep
    for the sign convention on u."""
    sv = params.S_v
    return extended_airy_kernel(
        xi1 / sv, -params.u_over_Sh(u1), xi2 / sv, -params.u_over_Sh(u2)
    ) / sv
