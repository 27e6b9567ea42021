"""Interlaced particle dynamics: sequential update, continuous time, exclusion projection.

Discrete time, one step, levels updated bottom-up and particles left to
right: particle k of level n jumps right with probability p, except that
the jump is suppressed when it would land the particle on its blocker
(particle k of level n-1, already updated), and the jump is forced when
the already-updated particle k-1 of level n-1 has overtaken it.  The
continuous-time dynamics is the small-p limit: every particle carries an
independent rate-1 clock; a ring triggers a right jump unless blocked by
the level below, and a realized jump pushes the packed diagonal above it
by one in the same instant.  Interlacing is preserved pathwise.

Batched drivers pre-draw all randomness (Philox) and run either a numba
per-trajectory kernel or a lockstep pure-numpy fallback; both consume the
pooled randomness identically, so trajectories are bit-for-bit equal
across the two paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .._accel import njit, prange
from .._rng import make_rng
from ..patterns import GTPattern, packed_pattern
from .charlier import DiscreteStepParams

__all__ = [
    "SimulationState",
    "sequential_update_step",
    "sequential_update_batch",
    "continuous_time_simulate",
    "continuous_time_batch",
    "project_tasep",
    "project_pushasep",
    "direct_tasep_simulate",
    "direct_tasep_batch",
]


@dataclass(frozen=True)
class SimulationState:
    pattern: GTPattern
    time: float
    rng_seed: int


def _pattern_to_array(pattern: GTPattern) -> np.ndarray:
    N = pattern.depth
    pos = np.zeros((N, N), dtype=np.int64)
    for L, lvl in enumerate(pattern.levels):
        pos[L, : L + 1] = lvl
    return pos


def _array_to_pattern(pos: np.ndarray) -> GTPattern:
    N = pos.shape[0]
    return GTPattern(tuple(tuple(int(v) for v in pos[L, : L + 1]) for L in range(N)))


# ---------------------------------------------------------------------------
# discrete time, sequential update
# ---------------------------------------------------------------------------


def _seq_step_arrays(pos: np.ndarray, coins: np.ndarray):
    """One sequential-update step on a batch.

    pos: (T, N, N) positions, coins: (T, N, N) booleans (True = wants to
    jump).  Levels bottom-up, particles left to right; blocking/pushing
    read the already-updated level below.
    """
    N = pos.shape[1]
    for L in range(N):
        for K in range(L + 1):
            cur = pos[:, L, K]
            jump = coins[:, L, K].copy()
            if K <= L - 1:
                jump &= pos[:, L - 1, K] != cur + 1  # blocked from the right
            if K >= 1 and L >= 1:
                jump |= pos[:, L - 1, K - 1] == cur + 1  # pushed from below
            pos[:, L, K] = cur + jump


def sequential_update_step(
    state: SimulationState, params: DiscreteStepParams, rng: np.random.Generator
) -> SimulationState:
    """One discrete step of the interlaced chain; output always interlaces."""
    pos = _pattern_to_array(state.pattern)[None]
    N = pos.shape[1]
    coins = rng.random((1, N, N)) < float(params.p)
    _seq_step_arrays(pos, coins)
    return SimulationState(_array_to_pattern(pos[0]), state.time + 1, state.rng_seed)


def sequential_update_batch(
    N: int, steps: int, p: Fraction | float, trials: int, seed: int, stream: int = 0
) -> np.ndarray:
    """Run `trials` trajectories from the packed pattern for `steps` steps.

    Returns positions with shape (trials, N, N); entry [i, L, :L+1] is
    level L+1 of trajectory i.
    """
    rng = make_rng(seed, stream)
    pos = np.broadcast_to(_pattern_to_array(packed_pattern(N)), (trials, N, N)).copy()
    pf = float(p)
    for _ in range(steps):
        coins = rng.random((trials, N, N)) < pf
        _seq_step_arrays(pos, coins)
    return pos


# ---------------------------------------------------------------------------
# continuous time
# ---------------------------------------------------------------------------


@njit(cache=True)
def _cont_kernel(pos, expo, picks, lvl_of, k_of, horizon):
    """Per-trajectory event loop.  Returns events used per trajectory, or -1
    if a trajectory exhausted its randomness pool (caller re-runs it)."""
    n_traj, cap = expo.shape
    N = pos.shape[1]
    used = np.zeros(n_traj, dtype=np.int64)
    for i in prange(n_traj):
        t = 0.0
        r = 0
        while True:
            if r == cap:
                used[i] = -1
                break
            t += expo[i, r]
            if t > horizon:
                used[i] = r
                break
            L = lvl_of[picks[i, r]]
            K = k_of[picks[i, r]]
            cur = pos[i, L, K]
            blocked = K <= L - 1 and pos[i, L - 1, K] == cur + 1
            if not blocked:
                pos[i, L, K] = cur + 1
                m = L + 1
                d = K + 1
                while m <= N - 1 and pos[i, m, d] == cur:
                    pos[i, m, d] = cur + 1
                    m += 1
                    d += 1
            r += 1
    return used


def _cont_lockstep(pos, expo, picks, lvl_of, k_of, horizon):
    """Pure-numpy fallback: all trajectories advance one event per round,
    reading the same pooled randomness as the numba kernel."""
    n_traj, cap = expo.shape
    N = pos.shape[1]
    idx = np.arange(n_traj)
    t = np.zeros(n_traj)
    used = np.zeros(n_traj, dtype=np.int64)
    alive = np.ones(n_traj, dtype=bool)
    for r in range(cap):
        if not alive.any():
            break
        t[alive] += expo[alive, r]
        apply = alive & (t <= horizon)
        used[apply] = r + 1
        alive &= apply
        if not apply.any():
            continue
        L = lvl_of[picks[:, r]]
        K = k_of[picks[:, r]]
        cur = pos[idx, L, K]
        blocked = (K <= L - 1) & (pos[idx, np.maximum(L - 1, 0), K] == cur + 1)
        do = apply & ~blocked
        pos[idx[do], L[do], K[do]] = cur[do] + 1
        m, d, chain = L + 1, K + 1, do
        while True:
            chain = chain & (m <= N - 1)
            if not chain.any():
                break
            mm, dd = np.minimum(m, N - 1), np.minimum(d, N - 1)
            chain = chain & (pos[idx, mm, dd] == cur)
            pos[idx[chain], mm[chain], dd[chain]] = cur[chain] + 1
            m, d = m + 1, d + 1
    used[alive] = -1  # still alive after cap events: pool too small
    return used


def _flat_particle_maps(N: int):
    lvl_of, k_of = [], []
    for L in range(N):
        for K in range(L + 1):
            lvl_of.append(L)
            k_of.append(K)
    return np.array(lvl_of, dtype=np.int64), np.array(k_of, dtype=np.int64)


def _pool_cap(rate: float, horizon: float) -> int:
    mean = rate * horizon
    return int(mean + 12.0 * math.sqrt(mean + 1.0) + 30.0)


def continuous_time_batch(
    N: int,
    horizon: float,
    trials: int,
    seed: int,
    stream: int = 0,
    chunk: int = 1 << 16,
    use_numba: bool | None = None,
) -> np.ndarray:
    """Continuous-time interlaced dynamics from the packed pattern.

    Returns positions (trials, N, N) at time `horizon`.  `use_numba`
    overrides the module-level accel switch (the two paths are
    bit-identical).
    """
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    from .._accel import NUMBA_ENABLED

    run_numba = NUMBA_ENABLED if use_numba is None else use_numba
    lvl_of, k_of = _flat_particle_maps(N)
    P = len(lvl_of)
    cap = _pool_cap(P, horizon)
    out = np.empty((trials, N, N), dtype=np.int64)
    base = _pattern_to_array(packed_pattern(N))
    done = 0
    chunk_id = 0
    while done < trials:
        n = min(chunk, trials - done)
        rng = make_rng(seed, stream * (1 << 20) + chunk_id)
        expo = rng.exponential(1.0 / P, (n, cap))
        picks = rng.integers(0, P, (n, cap))
        pos = np.broadcast_to(base, (n, N, N)).copy()
        core = _cont_kernel if run_numba else _cont_lockstep
        used = core(pos, expo, picks, lvl_of, k_of, horizon)
        bad = np.flatnonzero(used < 0)
        for b in bad:  # pragma: no cover - pool sized for ~1e-12 per run
            rng2 = make_rng(seed, (1 << 30) + stream * (1 << 20) + chunk_id * chunk + int(b))
            expo2 = rng2.exponential(1.0 / P, (1, 8 * cap))
            picks2 = rng2.integers(0, P, (1, 8 * cap))
            pos_b = base[None].copy()
            if core(pos_b, expo2, picks2, lvl_of, k_of, horizon)[0] < 0:
                raise RuntimeError("randomness pool exhausted twice; horizon too large")
            pos[b] = pos_b[0]
        out[done : done + n] = pos
        done += n
        chunk_id += 1
    return out


def continuous_time_simulate(N: int, horizon: float, seed: int) -> SimulationState:
    """Single trajectory of the continuous-time dynamics from packed start."""
    pos = continuous_time_batch(N, horizon, 1, seed)
    return SimulationState(_array_to_pattern(pos[0]), horizon, seed)


# ---------------------------------------------------------------------------
# projections
# ---------------------------------------------------------------------------


def project_tasep(state: SimulationState) -> tuple:
    """Leftmost particle of each level, level order: the exclusion-process
    coordinates (strictly decreasing)."""
    return tuple(lvl[0] for lvl in state.pattern.levels)


def project_pushasep(state: SimulationState) -> tuple:
    """Rightmost particle of each level (the other Markovian edge)."""
    return tuple(lvl[-1] for lvl in state.pattern.levels)


# ---------------------------------------------------------------------------
# reference exclusion process (independent implementation)
# ---------------------------------------------------------------------------


@njit(cache=True)
def _tasep_kernel(pos, expo, picks, horizon):
    n_traj, cap = expo.shape
    N = pos.shape[1]
    used = np.zeros(n_traj, dtype=np.int64)
    for i in prange(n_traj):
        t = 0.0
        r = 0
        while True:
            if r == cap:
                used[i] = -1
                break
            t += expo[i, r]
            if t > horizon:
                used[i] = r
                break
            k = picks[i, r]
            if k == 0 or pos[i, k] + 1 < pos[i, k - 1]:
                pos[i, k] += 1
            r += 1
    return used


def _tasep_lockstep(pos, expo, picks, horizon):
    n_traj, cap = expo.shape
    idx = np.arange(n_traj)
    t = np.zeros(n_traj)
    used = np.zeros(n_traj, dtype=np.int64)
    alive = np.ones(n_traj, dtype=bool)
    for r in range(cap):
        if not alive.any():
            break
        t[alive] += expo[alive, r]
        apply = alive & (t <= horizon)
        used[apply] = r + 1
        alive &= apply
        k = picks[:, r]
        cur = pos[idx, k]
        free = (k == 0) | (cur + 1 < pos[idx, np.maximum(k - 1, 0)])
        do = apply & free
        pos[idx[do], k[do]] = cur[do] + 1
    used[alive] = -1
    return used


def direct_tasep_batch(
    N: int,
    horizon: float,
    trials: int,
    seed: int,
    stream: int = 0,
    chunk: int = 1 << 16,
    use_numba: bool | None = None,
) -> np.ndarray:
    """Continuous-time exclusion process with step start x_k(0) = -k-1 (row
    index 0-based; particle j starts at -(j+1)).  Returns (trials, N)."""
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    from .._accel import NUMBA_ENABLED

    run_numba = NUMBA_ENABLED if use_numba is None else use_numba
    cap = _pool_cap(N, horizon)
    out = np.empty((trials, N), dtype=np.int64)
    base = -np.arange(1, N + 1, dtype=np.int64)
    done = 0
    chunk_id = 0
    while done < trials:
        n = min(chunk, trials - done)
        rng = make_rng(seed, stream * (1 << 20) + chunk_id)
        expo = rng.exponential(1.0 / N, (n, cap))
        picks = rng.integers(0, N, (n, cap))
        pos = np.broadcast_to(base, (n, N)).copy()
        core = _tasep_kernel if run_numba else _tasep_lockstep
        used = core(pos, expo, picks, horizon)
        bad = np.flatnonzero(used < 0)
        for b in bad:  # pragma: no cover
            rng2 = make_rng(seed, (1 << 30) + stream * (1 << 20) + chunk_id * chunk + int(b))
            expo2 = rng2.exponential(1.0 / N, (1, 8 * cap))
            picks2 = rng2.integers(0, N, (1, 8 * cap))
            pos_b = base[None].copy()
            if core(pos_b, expo2, picks2, horizon)[0] < 0:
                raise RuntimeError("randomness pool exhausted twice")
            pos[b] = pos_b[0]
        out[done : done + n] = pos
        done += n
        chunk_id += 1
    return out


def direct_tasep_simulate(N: int, horizon: float, seed: int) -> tuple:
    """Single exclusion trajectory; returns particle positions, decreasing."""
    return tuple(int(v) for v in direct_tasep_batch(N, horizon, 1, seed)[0])
