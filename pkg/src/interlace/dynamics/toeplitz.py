"""Exact verification of the commutation identities behind the multilevel chain.

Everything here runs in rational arithmetic: the one-step kernel, the
level link, and the annulus-symbol summation identities all have finite
support, so the intertwining defect and the row-sum defects are computed
exactly (a passing check returns a defect of exactly zero).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..patterns import exact_det, is_weyl, vandermonde, _lower_configs
from .charlier import DiscreteStepParams, discrete_charlier_transition, markov_link

__all__ = ["verify_intertwining", "verify_toeplitz_props", "ToeplitzReport", "weyl_window"]


def weyl_window(n: int, lo: int, hi: int) -> list[tuple]:
    """All strictly increasing n-vectors with entries in [lo, hi]."""
    return [tuple(c) for c in itertools.combinations(range(lo, hi + 1), n)]


def _step_targets(x: Sequence[int]) -> list[tuple]:
    """Configurations reachable in one step (each coordinate moves 0 or +1)."""
    out = []
    for moves in itertools.product((0, 1), repeat=len(x)):
        z = tuple(xi + m for xi, m in zip(x, moves))
        if is_weyl(z):
            out.append(z)
    return out


def verify_intertwining(
    n: int, params: DiscreteStepParams, window: Sequence[Sequence[int]]
) -> Fraction:
    """Max absolute defect of P_n * Link = Link * P_{n-1} over the window.

    For every x in the window (size-n configurations) both sides are
    finite rational sums over the one-step / interlacing supports; the
    defect is compared entrywise in y (size n-1) over the union of the
    supports.  Exact zero is the expected result.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    worst = Fraction(0)
    for x in window:
        x = tuple(x)
        if len(x) != n or not is_weyl(x):
            raise ValueError(f"window entry {x!r} is not a size-{n} configuration")
        lhs: dict = {}
        for z in _step_targets(x):
            pz = discrete_charlier_transition(params, x, z)
            if pz == 0:
                continue
            for y in _lower_configs(z):
                lhs[y] = lhs.get(y, Fraction(0)) + pz * markov_link(z, y)
        rhs: dict = {}
        for w in _lower_configs(x):
            lw = markov_link(x, w)
            for y in _step_targets(w):
                pw = discrete_charlier_transition(params, w, y)
                if pw:
                    rhs[y] = rhs.get(y, Fraction(0)) + lw * pw
        for y in set(lhs) | set(rhs):
            d = abs(lhs.get(y, Fraction(0)) - rhs.get(y, Fraction(0)))
            worst = max(worst, d)
    return worst


@dataclass(frozen=True)
class ToeplitzReport:
    identity: str
    value: Fraction
    target: Fraction
    defect: Fraction


def verify_toeplitz_props(
    x: Sequence[int], F: str, p: Fraction = Fraction(1, 2)
) -> ToeplitzReport:
    """Exact summation identities for the two annulus symbols in use.

    F="step"  (symbol 1 - p + p/z, coefficients f(-1)=p, f(0)=1-p):
        sum over same-size y of V(y) det(f(x_i - y_j)) equals V(x).
    F="link"  (symbol (1-z)^{-1}, coefficients f(m)=1 for m>=0):
        sum over size-(n-1) y of (n-1)! V(y) det with a virtual column of
        ones equals V(x).  With the virtual column placed last the
        determinant carries the sign (-1)^{n-1}, which is factored out so
        the identity reads with a plus sign.

    Sums are over explicit finite boxes covering the full support.
    """
    x = tuple(x)
    if not is_weyl(x):
        raise ValueError("x must be strictly increasing")
    n = len(x)
    target = Fraction(vandermonde(x))
    total = Fraction(0)
    if F == "step":
        params = DiscreteStepParams(p)
        f = {-1: params.p, 0: 1 - params.p}
        values = sorted({v for xi in x for v in (xi, xi + 1)})
        for y in itertools.combinations(values, n):
            mat = [[f.get(xi - yj, Fraction(0)) for yj in y] for xi in x]
            total += Fraction(vandermonde(y)) * exact_det(mat)
    elif F == "link":
        if n == 1:
            total = Fraction(1)  # empty lower config, 0x0 block plus virtual = 1
        else:
            lo, hi = min(x) - 1, max(x)
            sign = (-1) ** (n - 1)
            for y in itertools.combinations(range(lo, hi + 1), n - 1):
                rows = [[Fraction(1 if yj <= xi else 0) for yj in y] + [Fraction(1)] for xi in x]
                det = exact_det(rows)
                if det:
                    total += sign * math.factorial(n - 1) * Fraction(vandermonde(y)) * det
    else:
        raise ValueError("F must be 'step' or 'link'")
    return ToeplitzReport(F, total, target, abs(total - target))
