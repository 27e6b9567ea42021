"""Extended kernels for multi-block determinant measures.

Three constructions, in increasing generality:

* fixed particle number, m blocks chained by transition matrices
  (measure: det[Phi] * prod det[T] * det[Psi]);
* increasing particle number, level n holds n particles, consecutive
  levels chained by one-step links carrying a virtual row;
* the general space-like form: several observation times per level,
  time blocks inside a level, level links between levels.

Each returns an evaluable extended kernel whose minors reproduce the
correlations of the defining measure; enumeration oracles for all three
measures live here too and sum the measure over every configuration.

Conventions: two-point functions compose as (a*b)(x,y) =
sum_z a(x,z) b(z,y), i.e. matrix products in the stored orientation;
level links phi_n map level n-1 to level n; time blocks inside a level
are stored with the later observation indexing rows, matching the order
in which the measure's determinants are written.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "EynardMehtaSpec",
    "MinorsSpec",
    "SpacelikeSpec",
    "eynard_mehta_kernel",
    "minors_kernel",
    "spacelike_kernel_general",
    "biorthogonality_residual",
    "ExtendedKernel",
    "enumerate_block_measure",
    "enumerate_minors_measure",
    "enumerate_spacelike_measure",
]

_COND_LIMIT = 1e12
_MAX_CONFIGS = 1 << 18


def _checked_inverse(m: np.ndarray, what: str) -> np.ndarray:
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        raise np.linalg.LinAlgError(f"{what} is numerically singular (cond={cond:.3e})")
    return np.linalg.inv(m)


@dataclass(frozen=True)
class ExtendedKernel:
    """Kernel over labelled blocks; entry (label1, x1; label2, x2) is
    blocks[(label1, label2)][i1, i2] with i the site index in its block."""

    sites: dict
    blocks: dict

    def __call__(self, label1, x1, label2, x2) -> float:
        i1 = self.sites[label1].index(x1)
        i2 = self.sites[label2].index(x2)
        return float(self.blocks[(label1, label2)][i1, i2])

    def minor(self, points: Sequence) -> np.ndarray:
        return np.array([[self(*p, *q) for q in points] for p in points])

    def correlation(self, points: Sequence) -> float:
        pts = list(points)
        if not pts:
            return 1.0
        return float(np.linalg.det(self.minor(pts)))


# ---------------------------------------------------------------------------
# fixed particle number
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EynardMehtaSpec:
    """N particles per block; Phi: (N, |X_1|), trans[k]: (|X_k|, |X_{k+1}|)
    for k = 1..m-1, Psi: (N, |X_m|)."""

    sites: tuple
    Phi: np.ndarray
    trans: tuple
    Psi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "sites", tuple(tuple(s) for s in self.sites))
        object.__setattr__(self, "trans", tuple(np.asarray(t, dtype=float) for t in self.trans))
        object.__setattr__(self, "Phi", np.asarray(self.Phi, dtype=float))
        object.__setattr__(self, "Psi", np.asarray(self.Psi, dtype=float))
        m = len(self.sites)
        if len(self.trans) != m - 1:
            raise ValueError("need m-1 transition matrices")
        if self.Phi.shape[1] != len(self.sites[0]) or self.Psi.shape[1] != len(self.sites[-1]):
            raise ValueError("Phi/Psi widths must match the end blocks")
        for k, t in enumerate(self.trans):
            if t.shape != (len(self.sites[k]), len(self.sites[k + 1])):
                raise ValueError(f"transition {k} has wrong shape")

    @property
    def m(self):
        return len(self.sites)

    @property
    def N(self):
        return self.Phi.shape[0]


def _chain(mats, sizes, i, j):
    """Composition over blocks i..j (1-based); identity when i == j."""
    out = np.eye(sizes[i - 1])
    for k in range(i, j):
        out = out @ mats[k - 1]
    return out


def eynard_mehta_kernel(spec: EynardMehtaSpec) -> ExtendedKernel:
    """Extended kernel of the fixed-N block measure.

    K(t1, x1; t2, x2) = -T_{t1,t2}(x1,x2)
        + sum_{k,l} [G^{-1}]_{k,l} (T_{t1,m} * Psi_k)(x1) (Phi_l * T_{1,t2})(x2)
    with G = Phi * T_{1,2} * ... * T_{m-1,m} * Psi^T and T_{t1,t2} = 0 for
    t1 >= t2 (identity where it appears inside the sum with t1 = m, t2 = 1).
    """
    m, sizes = spec.m, [len(s) for s in spec.sites]
    G = spec.Phi @ _chain(spec.trans, sizes, 1, m) @ spec.Psi.T
    Ginv = _checked_inverse(G, "Gram matrix")
    blocks = {}
    for t1 in range(1, m + 1):
        A = _chain(spec.trans, sizes, t1, m) @ spec.Psi.T  # (|X_t1|, N)
        for t2 in range(1, m + 1):
            B = spec.Phi @ _chain(spec.trans, sizes, 1, t2)  # (N, |X_t2|)
            block = A @ Ginv @ B
            if t1 < t2:
                block = block - _chain(spec.trans, sizes, t1, t2)
            blocks[(t1, t2)] = block
    sites = {t: spec.sites[t - 1] for t in range(1, m + 1)}
    return ExtendedKernel(sites, blocks)


def enumerate_block_measure(spec: EynardMehtaSpec):
    """All configurations (an N-subset per block) with their probabilities."""
    m, N = spec.m, spec.N
    per_block = [list(itertools.combinations(range(len(s)), N)) for s in spec.sites]
    if np.prod([len(c) for c in per_block]) > _MAX_CONFIGS:
        raise ValueError("enumeration refused: too many configurations")
    configs, weights = [], []
    for combo in itertools.product(*per_block):
        w = np.linalg.det(spec.Phi[:, combo[0]])
        for k in range(m - 1):
            w *= np.linalg.det(spec.trans[k][np.ix_(combo[k], combo[k + 1])])
        w *= np.linalg.det(spec.Psi[:, combo[-1]])
        configs.append(tuple((t + 1, spec.sites[t][i]) for t in range(m) for i in combo[t]))
        weights.append(w)
    weights = np.array(weights)
    return configs, weights / weights.sum()


# ---------------------------------------------------------------------------
# increasing particle number (level n holds n particles)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinorsSpec:
    """Level links phi[n-2]: (|X_{n-1}|, |X_n|) for n = 2..N, virtual rows
    phi_virt[n-1]: (|X_n|,) for n = 1..N, Psi: (N, |X_N|) on the top level."""

    sites: tuple
    phi: tuple
    phi_virt: tuple
    Psi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "sites", tuple(tuple(s) for s in self.sites))
        object.__setattr__(self, "phi", tuple(np.asarray(p, dtype=float) for p in self.phi))
        object.__setattr__(
            self, "phi_virt", tuple(np.asarray(v, dtype=float) for v in self.phi_virt)
        )
        object.__setattr__(self, "Psi", np.asarray(self.Psi, dtype=float))
        N = len(self.sites)
        if len(self.phi) != N - 1 or len(self.phi_virt) != N:
            raise ValueError("need N-1 links and N virtual rows")
        if self.Psi.shape != (N, len(self.sites[-1])):
            raise ValueError("Psi must be (N, |X_N|)")

    @property
    def N(self):
        return len(self.sites)


def _phi_comp(spec: MinorsSpec, n1: int, n2: int) -> np.ndarray:
    """phi_{n1,n2} = phi_{n1+1} * ... * phi_{n2}; identity for n1 == n2."""
    out = np.eye(len(spec.sites[n1 - 1]))
    for n in range(n1 + 1, n2 + 1):
        out = out @ spec.phi[n - 2]
    return out


def minors_kernel(spec: MinorsSpec) -> ExtendedKernel:
    """Extended kernel of the increasing-particle measure.

    K(n1, x1; n2, x2) = -phi_{n1,n2}(x1,x2)
        + sum_{l<=n2, k<=N} [G^{-1}]_{k,l} (phi_{n1,N} * Psi_k)(x1)
                                           (phi_l * phi_{l,n2})(virt, x2)
    with G_{ij} = (phi_i * phi_{i,N} * Psi_j)(virt).
    """
    N = spec.N
    virt_rows = {}
    for l in range(1, N + 1):
        row = spec.phi_virt[l - 1]
        virt_rows[(l, l)] = row
        for n2 in range(l + 1, N + 1):
            row = row @ spec.phi[n2 - 2]
            virt_rows[(l, n2)] = row
    G = np.array([[virt_rows[(i, N)] @ spec.Psi[j] for j in range(N)] for i in range(1, N + 1)])
    Ginv = _checked_inverse(G, "Gram matrix")
    blocks = {}
    for n1 in range(1, N + 1):
        A = _phi_comp(spec, n1, N) @ spec.Psi.T  # (|X_n1|, N)
        for n2 in range(1, N + 1):
            B = np.array([virt_rows[(l, n2)] for l in range(1, n2 + 1)])  # (n2, |X_n2|)
            block = A @ Ginv[:, :n2] @ B
            if n1 < n2:
                block = block - _phi_comp(spec, n1, n2)
            blocks[(n1, n2)] = block
    sites = {n: spec.sites[n - 1] for n in range(1, N + 1)}
    return ExtendedKernel(sites, blocks)


def enumerate_minors_measure(spec: MinorsSpec):
    """All configurations (n points at level n) with their probabilities."""
    N = spec.N
    per_level = [
        list(itertools.combinations(range(len(spec.sites[n - 1])), n)) for n in range(1, N + 1)
    ]
    if np.prod([len(c) for c in per_level]) > _MAX_CONFIGS:
        raise ValueError("enumeration refused: too many configurations")
    configs, weights = [], []
    for combo in itertools.product(*per_level):
        w = 1.0
        for n in range(1, N + 1):
            cols = list(combo[n - 1])
            rows = []
            if n > 1:
                rows = [spec.phi[n - 2][i, cols] for i in combo[n - 2]]
            rows.append(spec.phi_virt[n - 1][cols])
            w *= np.linalg.det(np.array(rows))
        w *= np.linalg.det(spec.Psi[:, combo[-1]])
        configs.append(
            tuple((n, spec.sites[n - 1][i]) for n in range(1, N + 1) for i in combo[n - 1])
        )
        weights.append(w)
    weights = np.array(weights)
    return configs, weights / weights.sum()


# ---------------------------------------------------------------------------
# general space-like form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpacelikeSpec:
    """Levels 1..N with c(n) extra observation times at level n.

    time_blocks[n-1] is a list of c(n) matrices; entry a-1 maps
    observation a to observation a-1 of level n (later observation
    indexes rows).  Points are labelled (n, a), a = 0..c(n); along the
    chain the level-n observations are consumed from a = c(n) down to 0,
    and observation 0 links toward level n+1.
    """

    sites: tuple
    phi: tuple
    phi_virt: tuple
    Psi: np.ndarray
    time_blocks: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "sites", tuple(tuple(s) for s in self.sites))
        object.__setattr__(self, "phi", tuple(np.asarray(p, dtype=float) for p in self.phi))
        object.__setattr__(
            self, "phi_virt", tuple(np.asarray(v, dtype=float) for v in self.phi_virt)
        )
        object.__setattr__(self, "Psi", np.asarray(self.Psi, dtype=float))
        tb = self.time_blocks or tuple(() for _ in self.sites)
        object.__setattr__(
            self,
            "time_blocks",
            tuple(tuple(np.asarray(m, dtype=float) for m in lvl) for lvl in tb),
        )
        N = len(self.sites)
        if len(self.phi) != N - 1 or len(self.phi_virt) != N or len(self.time_blocks) != N:
            raise ValueError("inconsistent level structure")

    @property
    def N(self):
        return len(self.sites)

    def c(self, n: int) -> int:
        return len(self.time_blocks[n - 1])

    def points(self):
        return [(n, a) for n in range(1, self.N + 1) for a in range(self.c(n) + 1)]


def _t_down(spec: SpacelikeSpec, n: int, hi: int, lo: int) -> np.ndarray:
    """Composition of level-n time blocks from observation hi down to lo."""
    out = np.eye(len(spec.sites[n - 1]))
    for a in range(hi, lo, -1):
        out = out @ spec.time_blocks[n - 1][a - 1]
    return out


def _chain_precedes(p1, p2) -> bool:
    """True when p1 strictly precedes p2 along the chain (level up, or same
    level with a larger observation label)."""
    (n1, a1), (n2, a2) = p1, p2
    return n1 < n2 or (n1 == n2 and a1 > a2)


def _phi_between(spec: SpacelikeSpec, p1, p2) -> np.ndarray:
    """Convolution of all transitions between chain-ordered p1 and p2."""
    (n1, a1), (n2, a2) = p1, p2
    if n1 == n2:
        return _t_down(spec, n1, a1, a2)
    out = _t_down(spec, n1, a1, 0)
    for m in range(n1 + 1, n2 + 1):
        out = out @ spec.phi[m - 2]
        out = out @ _t_down(spec, m, spec.c(m), a2 if m == n2 else 0)
    return out


def _assemble(spec: SpacelikeSpec):
    """Per-point top functions Psi^{p}, virtual rows and the Gram matrix."""
    N = spec.N
    pts = spec.points()
    bottom = (N, 0)
    psi_at = {}
    for p in pts:
        if p == bottom:
            psi_at[p] = spec.Psi.T.copy()  # (|X_N|, N)
        else:
            psi_at[p] = _phi_between(spec, p, bottom) @ spec.Psi.T
    virt_rows = {}
    for l in range(1, N + 1):
        start = spec.phi_virt[l - 1]
        for p in pts:
            if l > p[0]:
                continue
            if (l, spec.c(l)) == p:
                virt_rows[(l, p)] = start
            else:
                virt_rows[(l, p)] = start @ _phi_between(spec, (l, spec.c(l)), p)
    G = np.array(
        [[virt_rows[(i, bottom)] @ spec.Psi[j] for j in range(N)] for i in range(1, N + 1)]
    )
    return pts, psi_at, virt_rows, G


def spacelike_kernel_general(spec: SpacelikeSpec, biorthogonal: bool = False) -> ExtendedKernel:
    """Extended kernel of the general space-like measure.

    K(p1, x1; p2, x2) = -phi^{(p1,p2)}(x1,x2) 1[p1 chain-precedes p2]
        + sum_{k<=N, l<=n2} [G^{-1}]_{k,l} Psi^{p1}_k(x1)
                            (phi_l * phi^{((l,c(l)), p2)})(virt, x2).

    ``biorthogonal=True`` uses the equivalent form valid for upper
    triangular G: K = -phi^{(p1,p2)} + sum_{k<=n2} Psi^{p1}_k Phi^{p2}_k,
    where {Phi^{p}_k}_{k<=n} is the basis biorthogonal to {Psi^{p}_k}.
    """
    pts, psi_at, virt_rows, G = _assemble(spec)
    Ginv = _checked_inverse(G, "Gram matrix")
    if biorthogonal and not np.allclose(G, np.triu(G), atol=1e-12 * max(1.0, np.abs(G).max())):
        raise ValueError("biorthogonal form requires an upper-triangular Gram matrix")
    blocks = {}
    for p1 in pts:
        for p2 in pts:
            n2 = p2[0]
            B = np.array([virt_rows[(l, p2)] for l in range(1, n2 + 1)])
            if biorthogonal:
                block = psi_at[p1][:, :n2] @ (Ginv[:n2, :n2] @ B)
            else:
                block = psi_at[p1] @ Ginv[:, :n2] @ B
            if _chain_precedes(p1, p2):
                block = block - _phi_between(spec, p1, p2)
            blocks[(p1, p2)] = block
    sites = {p: spec.sites[p[0] - 1] for p in pts}
    return ExtendedKernel(sites, blocks)


def biorthogonality_residual(spec: SpacelikeSpec) -> float:
    """max |Phi^{p}_i * Psi^{p}_j - delta_ij| over all observation points."""
    pts, psi_at, virt_rows, G = _assemble(spec)
    Ginv = _checked_inverse(G, "Gram matrix")
    worst = 0.0
    for p in pts:
        n = p[0]
        B = np.array([virt_rows[(l, p)] for l in range(1, n + 1)])
        gram = (Ginv[:n, :n] @ B) @ psi_at[p][:, :n]
        worst = max(worst, float(np.abs(gram - np.eye(n)).max()))
    return worst


def enumerate_spacelike_measure(spec: SpacelikeSpec):
    """All configurations of the general measure (n points in every copy
    of the level-n space) with their probabilities."""
    N = spec.N
    copies, per_copy = [], []
    for n in range(1, N + 1):
        for a in range(spec.c(n) + 1):
            copies.append((n, a))
            per_copy.append(list(itertools.combinations(range(len(spec.sites[n - 1])), n)))
    if np.prod([len(c) for c in per_copy]) > _MAX_CONFIGS:
        raise ValueError("enumeration refused: too many configurations")
    configs, weights = [], []
    for combo in itertools.product(*per_copy):
        sel = dict(zip(copies, combo))
        w = 1.0
        for n in range(1, N + 1):
            cols = list(sel[(n, spec.c(n))])  # level n at its chain-first observation
            rows = []
            if n > 1:
                rows = [spec.phi[n - 2][i, cols] for i in sel[(n - 1, 0)]]
            rows.append(spec.phi_virt[n - 1][cols])
            w *= np.linalg.det(np.array(rows))
            for a in range(spec.c(n), 0, -1):
                later, earlier = list(sel[(n, a)]), list(sel[(n, a - 1)])
                w *= np.linalg.det(spec.time_blocks[n - 1][a - 1][np.ix_(later, earlier)])
        w *= np.linalg.det(spec.Psi[:, sel[(N, 0)]])
        configs.append(
            tuple(((n, a), spec.sites[n - 1][i]) for (n, a) in copies for i in sel[(n, a)])
        )
        weights.append(w)
    weights = np.array(weights)
    return configs, weights / weights.sum()
