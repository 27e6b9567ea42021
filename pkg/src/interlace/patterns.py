"""Weyl-chamber configurations, interlacing triangular patterns, exact combinatorics.

A configuration at level ``n`` is a strictly increasing integer vector
``x_1 < x_2 < ... < x_n``.  A triangular pattern stacks levels 1..N, each
level interlacing with the next:

    x_1^{n+1} < x_1^n <= x_2^{n+1} < x_2^n <= ... < x_n^n <= x_{n+1}^{n+1}

All counting here is exact (Python big integers / fractions).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

__all__ = [
    "VIRT",
    "GTPattern",
    "SpaceTimePoint",
    "is_weyl",
    "is_interlaced",
    "interlacing_indicator_det",
    "vandermonde",
    "count_patterns",
    "enumerate_patterns",
    "packed_pattern",
    "exact_det",
]


class _Virtual:
    """Sentinel for the virtual (phantom) variable: indicator rules treat it
    as 'matches everything on the right'.  Never a number."""

    __slots__ = ()

    def __repr__(self):
        return "VIRT"


VIRT = _Virtual()


def is_weyl(entries: Sequence) -> bool:
    """True iff entries are strictly increasing (Weyl chamber membership)."""
    return all(a < b for a, b in zip(entries, entries[1:]))


def _require_weyl(entries: Sequence, name: str = "config"):
    if not is_weyl(entries):
        raise ValueError(f"{name} must be strictly increasing, got {tuple(entries)!r}")


@dataclass(frozen=True)
class GTPattern:
    """Triangular configuration; ``levels[k]`` has length k+1 and every
    consecutive pair interlaces."""

    levels: tuple

    def __post_init__(self):
        levels = tuple(tuple(lvl) for lvl in self.levels)
        object.__setattr__(self, "levels", levels)
        for n, lvl in enumerate(levels, start=1):
            if len(lvl) != n:
                raise ValueError(f"level {n} must have {n} entries, got {len(lvl)}")
            _require_weyl(lvl, f"level {n}")
        for lower, upper in zip(levels, levels[1:]):
            if not is_interlaced(lower, upper):
                raise ValueError(f"levels do not interlace: {lower} vs {upper}")

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def top(self) -> tuple:
        return self.levels[-1]

    def to_json(self) -> str:
        return json.dumps({"levels": [list(lvl) for lvl in self.levels]})

    @classmethod
    def from_json(cls, text: str) -> "GTPattern":
        return cls(tuple(tuple(lvl) for lvl in json.loads(text)["levels"]))


@dataclass(frozen=True, order=False)
class SpaceTimePoint:
    """(level, time) observation point with the space-like partial order:
    p precedes q iff p.level >= q.level, p.time <= q.time and p != q."""

    level: int
    time: float

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be a positive integer")
        if self.time < 0:
            raise ValueError("time must be nonnegative")

    def precedes(self, other: "SpaceTimePoint") -> bool:
        return (
            self.level >= other.level
            and self.time <= other.time
            and (self.level, self.time) != (other.level, other.time)
        )


def is_interlaced(lower: Sequence, upper: Sequence) -> bool:
    """True iff lower (size n) interlaces with upper (size n+1)."""
    n = len(lower)
    if len(upper) != n + 1:
        raise ValueError(f"sizes must differ by 1, got {n} and {len(upper)}")
    for k in range(n):
        if not (upper[k] < lower[k] <= upper[k + 1]):
            return False
    return True


def exact_det(rows) -> Fraction:
    """Exact determinant by fraction-free Gaussian elimination."""
    m = [[Fraction(v) for v in row] for row in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix must be square")
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return det


def interlacing_indicator_det(lower: Sequence, upper: Sequence) -> int:
    """Signed indicator of interlacing as an n x n determinant.

    ``lower`` holds n-1 real entries; a virtual slot is appended as the
    n-th row with value 1 against every upper entry.  The (i,j) entry is
    1 if upper_j >= lower_i else 0.  The absolute value of the result
    equals the interlacing indicator.
    """
    n = len(upper)
    if len(lower) != n - 1:
        raise ValueError(f"lower must have {n - 1} entries, got {len(lower)}")
    rows = [[1 if y >= x else 0 for y in upper] for x in lower]
    rows.append([1] * n)  # virtual variable row
    det = exact_det(rows)
    assert det.denominator == 1
    return int(det)


def vandermonde(x: Sequence):
    """Product of pairwise differences prod_{i<j} (x_j - x_i).

    Exact on integer/Fraction input, float on float input.
    """
    prod = 1
    for i in range(len(x)):
        for j in range(i + 1, len(x)):
            prod *= x[j] - x[i]
    return prod


def count_patterns(top: Sequence[int]) -> int:
    """Number of triangular patterns with the given top level, exactly.

    Uses the closed form vandermonde(top) / prod_{n<N} n! with an exact
    divisibility check.
    """
    _require_weyl(top, "top")
    num = vandermonde(tuple(top))
    den = 1
    for n in range(1, len(top)):
        den *= math.factorial(n)
    q, r = divmod(num, den)
    if r != 0:
        raise AssertionError("pattern count must be an exact integer")  # pragma: no cover
    return q


_ENUM_MAX = 8


def _lower_configs(upper: Sequence[int]) -> Iterator[tuple]:
    """All size-(n-1) configs interlacing with upper (coordinate ranges are
    independent: x_k in (upper_k, upper_{k+1}])."""
    n = len(upper)
    if n == 1:
        yield ()
        return

    def rec(k, prefix):
        if k == n - 1:
            yield tuple(prefix)
            return
        for v in range(upper[k] + 1, upper[k + 1] + 1):
            yield from rec(k + 1, prefix + [v])

    yield from rec(0, [])


def enumerate_patterns(top: Sequence[int]) -> list[GTPattern]:
    """All patterns with the given top level, lexicographic by levels top-down."""
    _require_weyl(top, "top")
    if len(top) > _ENUM_MAX:
        raise ValueError(f"enumeration limited to top length {_ENUM_MAX}")
    top = tuple(top)

    def rec(level) -> Iterator[tuple]:
        if len(level) == 1:
            yield (level,)
            return
        for low in _lower_configs(level):
            for rest in rec(low):
                yield rest + (level,)

    return [GTPattern(levels) for levels in rec(top)]


def packed_pattern(N: int) -> GTPattern:
    """Densest pattern with top level (-N, ..., -1): x_k^n = -n - 1 + k."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return GTPattern(tuple(tuple(-n - 1 + k for k in range(1, n + 1)) for n in range(1, N + 1)))
