"""The discrete space-like kernel of the interlaced walk / exclusion system.

Two-point function over triples (level n, time t, lattice site x):

    K(n1,t1,x1; n2,t2,x2) = -(memory term) 1[pair is chained]
      + (1/(2pi i)^2) oint_{G1} dz oint_{G0} dw
            e^{t1 w} (1-w)^{n1} / w^{x1+n1+1}
          * z^{x2+n2} / (e^{t2 z} (1-z)^{n2}) * 1/(w-z),

with G0 a circle around 0 only and G1 a circle around 1 only (0 outside).
The memory term is the single contour integral
    (1/2pi i) oint_{G0} dw e^{(t1-t2) w} (w/(1-w))^{n2-n1} / w^{x1-x2+1}.

Which argument order the memory term fires on is fixed by the module
constant MEMORY_ORDER, pinned against exact enumeration of the defining
measure (see tests): it fires when n1 <= n2 and t1 >= t2 (points ordered
up the construction chain: level increasing, time decreasing).

Everything is evaluated through weighted node arrays; integer powers go
through exp(m Log .), which is branch-safe.  Optional log conjugation
offsets keep edge-regime magnitudes representable; the exact residue
oracle (rational t) is independent of all quadrature.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .contour import Circle, circle_nodes, double_contour_sum
from .scaling import TasepEdgeScaling
from .airy import extended_airy_kernel

__all__ = [
    "tasep_spacelike_kernel",
    "tasep_kernel_exact",
    "tasep_kernel_grid",
    "rescaled_edge_kernel_tasep",
    "edge_airy_target",
    "default_contours",
    "steep_contours",
    "memory_fires",
]

# memory term fires for chain-ordered pairs: level up, time back, not equal
MEMORY_ORDER = "chain"

_IMAG_TOL = 1e-8


def memory_fires(n1: int, t1: float, n2: int, t2: float) -> bool:
    if (n1, t1) == (n2, t2):
        return False
    if MEMORY_ORDER == "chain":
        return n1 <= n2 and t1 >= t2
    return n1 >= n2 and t1 <= t2  # transposed convention, kept for experiments


def default_contours(nodes: int = 256) -> tuple[Circle, Circle]:
    return Circle(0.0, 0.4, nodes), Circle(1.0, 0.3, nodes)


def steep_contours(t: float, params: TasepEdgeScaling, nodes: int | None = None):
    """Circles through the double critical point w_c = 1 - sqrt(alpha),
    separated by ~ the local (kappa t)^{-1/3} scale."""
    wc = params.z_c
    eps = 0.5 * (params.kappa * t) ** (-1.0 / 3.0)
    if nodes is None:
        nodes = int(max(512, 48 * (params.kappa * t) ** (1.0 / 3.0)))
    r0 = wc - eps
    r1 = 1.0 - (wc + eps)
    if r0 <= 0 or r1 <= 0:
        raise ValueError("t too small for steep contours at this alpha")
    return Circle(0.0, r0, nodes), Circle(1.0, r1, nodes)


def _validate(g0: Circle, g1: Circle):
    if g0.center != 0.0 or g1.center != 1.0:
        raise ValueError("w-contour must circle 0 and z-contour must circle 1")
    if g0.radius >= 1.0:
        raise ValueError("w-contour must not enclose 1")
    if g1.radius >= 1.0:
        raise ValueError("z-contour must not enclose 0")
    if g0.radius + g1.radius >= 1.0:
        raise ValueError("contours intersect")


def _as_real(val: complex, scale: float, what: str) -> float:
    if abs(val.imag) > _IMAG_TOL * max(1.0, scale):
        raise ArithmeticError(f"{what}: imaginary residue {val.imag:.3e} exceeds tolerance")
    return float(val.real)


def _log_w_side(w, n, t, x, log_conj):
    return t * w + n * np.log(1.0 - w) - (x + n + 1.0) * np.log(w) - log_conj


def _log_z_side(z, n, t, x, log_conj):
    return -t * z - n * np.log(1.0 - z) + (x + n) * np.log(z) + log_conj


def _memory_term(n1, t1, x1, n2, t2, x2, g0: Circle, log_shift: float) -> complex:
    w, wt = circle_nodes(g0)
    expo = (
        (t1 - t2) * w
        + (n2 - n1) * (np.log(w) - np.log(1.0 - w))
        - (x1 - x2 + 1.0) * np.log(w)
        + log_shift
    )
    return np.sum(wt * np.exp(expo))


def tasep_spacelike_kernel(
    n1: int,
    t1: float,
    x1: int,
    n2: int,
    t2: float,
    x2: int,
    contours: tuple[Circle, Circle] | None = None,
    log_conj: tuple[float, float] = (0.0, 0.0),
) -> float:
    """Space-like kernel entry; real up to a checked imaginary residue.

    log_conj = (c1, c2) returns exp(c2 - c1) K, the kernel conjugated by
    exp(-c); used to keep edge-regime evaluations in floating range.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("levels must be >= 1")
    if t1 < 0 or t2 < 0:
        raise ValueError("times must be >= 0")
    g0, g1 = contours if contours is not None else default_contours()
    _validate(g0, g1)
    c1, c2 = log_conj
    w, wwt = circle_nodes(g0)
    z, zwt = circle_nodes(g1)
    fw = wwt * np.exp(_log_w_side(w, n1, t1, x1, c1))
    gz = zwt * np.exp(_log_z_side(z, n2, t2, x2, c2))
    val = double_contour_sum(fw, w, gz, z)
    if memory_fires(n1, t1, n2, t2):
        val -= _memory_term(n1, t1, x1, n2, t2, x2, g0, c2 - c1)
    return _as_real(val, abs(val), "tasep kernel")


def tasep_kernel_grid(
    points: list[tuple[int, float]],
    sites: list[np.ndarray],
    contours: tuple[Circle, Circle] | None = None,
    log_conj: list | None = None,
) -> dict:
    """All kernel blocks for a list of (level, time) points and per-point
    site arrays, via one shared Cauchy matrix; returns {(i, j): block}."""
    g0, g1 = contours if contours is not None else default_contours()
    _validate(g0, g1)
    m = len(points)
    if log_conj is None:
        log_conj = [0.0] * m
    w, wwt = circle_nodes(g0)
    z, zwt = circle_nodes(g1)
    cauchy = 1.0 / (w[:, None] - z[None, :])
    FW, GZ = [], []
    for (n, t), xs, lc in zip(points, sites, log_conj):
        xs = np.asarray(xs)
        FW.append(wwt[:, None] * np.exp(_log_w_side(w[:, None], n, t, xs[None, :], lc)))
        GZ.append(zwt[:, None] * np.exp(_log_z_side(z[:, None], n, t, xs[None, :], lc)))
    blocks = {}
    for i, (ni, ti) in enumerate(points):
        left = FW[i].T @ cauchy
        for j, (nj, tj) in enumerate(points):
            blk = left @ GZ[j]
            if memory_fires(ni, ti, nj, tj):
                xi, xj = np.asarray(sites[i]), np.asarray(sites[j])
                diffs = xi[:, None] - xj[None, :]
                uniq = np.unique(diffs)
                mem = {
                    d: _memory_term(ni, ti, int(d), nj, tj, 0, g0, log_conj[j] - log_conj[i])
                    for d in uniq
                }
                blk = blk - np.vectorize(lambda d: mem[d])(diffs)
            scale = np.abs(blk).max()
            if np.abs(blk.imag).max() > _IMAG_TOL * max(1.0, scale):
                raise ArithmeticError("grid block has imaginary residue above tolerance")
            blocks[(i, j)] = blk.real
    return blocks


# ---------------------------------------------------------------------------
# exact residue oracle (independent of all quadrature)
# ---------------------------------------------------------------------------


def _series_coeff_w(j: int, t1: Fraction, n1: int) -> Fraction:
    """[w^j] e^{t1 w} (1-w)^{n1}, exact."""
    acc = Fraction(0)
    for k in range(j + 1):
        r = j - k
        if r > n1:
            continue
        acc += Fraction(t1**k, math.factorial(k)) * (-1) ** r * math.comb(n1, r)
    return acc


def tasep_kernel_exact(
    n1: int, t1: Fraction, x1: int, n2: int, t2: Fraction, x2: int
) -> float:
    """Residue evaluation of the kernel for rational times.

    The w-residue at 0 is a finite sum of series coefficients of
    e^{t1 w}(1-w)^{n1}; the z-integral around 1 is the order-n2 pole
    residue, carrying a factor e^{-t2}.  The memory term is a single
    exact series coefficient.  Result: A + B e^{-t2} with A, B rational.
    """
    t1, t2 = Fraction(t1), Fraction(t2)
    m = x1 + n1 + 1
    q = x2 + n2
    bsum = Fraction(0)
    if m >= 1:
        for i in range(m):
            a = _series_coeff_w(m - 1 - i, t1, n1)
            if a == 0:
                continue
            # residue at z=1 of z^{q-i-1} e^{-t2 z} (1-z)^{-n2}
            mm = q - i - 1
            h = Fraction(0)
            for j in range(n2):
                ff = Fraction(1)
                for r in range(j):
                    ff *= mm - r
                h += Fraction(math.comb(n2 - 1, j)) * ff * (-t2) ** (n2 - 1 - j)
            bsum += -a * (-1) ** n2 * h / math.factorial(n2 - 1)
    amem = Fraction(0)
    if memory_fires(n1, float(t1), n2, float(t2)):
        c = t1 - t2
        d = n2 - n1
        mu = x1 - x2
        coeff = Fraction(0)
        if d > 0:
            for k in range(mu - d + 1):
                coeff += Fraction(c**k, math.factorial(k)) * math.comb(mu - k - 1, d - 1)
        elif d == 0:
            if mu >= 0:
                coeff = Fraction(c**mu, math.factorial(mu))
        else:
            for i in range(-d + 1):
                e = mu - d - i
                if e >= 0:
                    coeff += math.comb(-d, i) * (-1) ** i * Fraction(c**e, math.factorial(e))
        amem = -coeff
    return float(amem) + float(bsum) * math.exp(-float(t2))


# ---------------------------------------------------------------------------
# edge rescaling
# ---------------------------------------------------------------------------


def _edge_coords(t: float, u: float, s: float, params: TasepEdgeScaling):
    """Integer lattice point for (u, s) at time t, with the rounding
    remainders absorbed back into the effective (u, s)."""
    n = int(round(params.level(t, u)))
    if n < 1:
        raise ValueError("u too negative: level index below 1")
    u_eff = (n - params.alpha * t) / (2.0 * t ** (2.0 / 3.0))
    x_real = params.position(t, u_eff) - s * t ** (1.0 / 3.0)
    x = int(round(x_real))
    s_eff = (params.position(t, u_eff) - x) / t ** (1.0 / 3.0)
    return n, x, u_eff, s_eff


def _edge_log_conj(t: float, n: int, x: int, u_eff: float, s_eff: float, params) -> float:
    wc = params.z_c
    tau = u_eff / params.S_h
    sig = s_eff / params.S_v
    return (
        t * wc
        + n * math.log(1.0 - wc)
        - (x + n + 1) * math.log(wc)
        - (tau * sig - tau**3 / 3.0)
    )


def rescaled_edge_kernel_tasep(
    t: float,
    u1: float,
    s1: float,
    u2: float,
    s2: float,
    params: TasepEdgeScaling,
    nodes: int | None = None,
):
    """Conjugation-normalized rescaled kernel t^{1/3} K at the edge scaling.

    Returns (value, (u1_eff, s1_eff), (u2_eff, s2_eff)); the effective
    coordinates absorb the lattice rounding of level and position, and
    the value converges to edge_airy_target at the effective coordinates
    as t grows.
    """
    n1, x1, u1e, s1e = _edge_coords(t, u1, s1, params)
    n2, x2, u2e, s2e = _edge_coords(t, u2, s2, params)
    lc1 = _edge_log_conj(t, n1, x1, u1e, s1e, params)
    lc2 = _edge_log_conj(t, n2, x2, u2e, s2e, params)
    contours = steep_contours(t, params, nodes)
    val = tasep_spacelike_kernel(n1, t, x1, n2, t, x2, contours, log_conj=(lc1, lc2))
    return t ** (1.0 / 3.0) * val, (u1e, s1e), (u2e, s2e)


def edge_airy_target(params, u1: float, s1: float, u2: float, s2: float) -> float:
    """S_v^{-1} K2(s1/S_v, -u1/S_h; s2/S_v, -u2/S_h): the edge limit.

    The sign on u reflects the chain ordering of the memory term: our
    rescaled kernel converges to the two-time Airy kernel with the time
    arguments reversed, i.e. to its transpose, which defines the same
    determinantal process (all correlation minors agree).
    """
    sv = params.S_v
    if hasattr(params, "u_over_Sh"):
        tau1, tau2 = params.u_over_Sh(u1), params.u_over_Sh(u2)
    else:
        tau1, tau2 = u1 / params.S_h, u2 / params.S_h
    return extended_airy_kernel(s1 / sv, -tau1, s2 / sv, -tau2) / sv
