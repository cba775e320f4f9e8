"""Exact sums of ``(-2)^s(D)`` over chord-diagram completions.

The left-hand sides are brute-force enumerations (histograms of ``s`` from
the kernel, combined with Python integers); the right-hand sides are the
closed forms ``-m(m+1)``, ``(-1)^k k! C(m,k) C(m+1,k)`` and
``(-1)^N (N+1)!`` times ``(-2)^s(D0)``.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass
from math import comb, factorial
from typing import Iterator, Optional, Sequence

from .chords import ChordDiagram, count_completions, cycle_stats, s_histogram
from .errors import NoFreeVertexError, RangeError


@dataclass(frozen=True)
class SumReport:
    n: tuple
    k: int
    m: int
    lhs: int
    rhs: int
    count: int
    elapsed: float
    d0: str = ""
    stated_rhs: Optional[int] = None

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    @property
    def matches_stated(self) -> bool:
        return self.stated_rhs is None or self.lhs == self.stated_rhs

    def to_dict(self) -> dict:
        out = {
            "n": list(self.n),
            "k": self.k,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "count": self.count,
            "equal": self.equal,
            "ms": round(self.elapsed * 1000, 3),
        }
        if self.stated_rhs is not None:
            out["stated_rhs"] = str(self.stated_rhs)
            out["matches_stated"] = self.matches_stated
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def weighted_sum(hist: dict) -> int:
    return sum(count * (-2) ** s for s, count in hist.items())


def _half_sizes(D0: ChordDiagram) -> tuple:
    return tuple(m // 2 for m in D0.bases)


def _missing(D0: ChordDiagram) -> int:
    return len(D0.free_vertices()) // 2


def sum_k_chords(D0: ChordDiagram, k: int) -> SumReport:
    """Sum over all ways of adding ``k`` chords to ``D0``."""
    m = _missing(D0)
    if m < 1:
        raise NoFreeVertexError("D0 has no missing chords")
    if not 1 <= k <= m:
        raise RangeError(f"k must lie in 1..{m}, got {k}")
    start = time.perf_counter()
    hist = s_histogram(D0, k)
    lhs = weighted_sum(hist)
    elapsed = time.perf_counter() - start
    s0 = cycle_stats(D0).s
    rhs = (-1) ** k * factorial(k) * comb(m, k) * comb(m + 1, k) * (-2) ** s0
    count = sum(hist.values())
    assert count == count_completions(2 * m, k)
    return SumReport(_half_sizes(D0), k, m, lhs, rhs, count, elapsed, D0.to_json())


def sum_one_chord(D0: ChordDiagram) -> SumReport:
    """Sum over all single-chord extensions: ``-m(m+1) (-2)^s(D0)``."""
    report = sum_k_chords(D0, 1)
    m = report.m
    assert report.rhs == -m * (m + 1) * (-2) ** cycle_stats(D0).s
    return report


def sum_all(n: Sequence[int]) -> SumReport:
    """Sum over every perfect chord diagram on bases ``2 n_i``.

    ``rhs`` is the completion formula ``(-1)^N (N+1)! (-2)^s(D0)`` for the
    empty diagram, whose ``s`` is ``2 l``; ``stated_rhs`` is the single-base
    value ``4 (-1)^N (N+1)!``, which agrees only when ``l = 1``.
    """
    n = tuple(int(x) for x in n)
    if not n or any(x < 1 for x in n):
        raise RangeError(f"base half-sizes must be positive, got {n}")
    N = sum(n)
    D0 = ChordDiagram.build([2 * x for x in n])
    start = time.perf_counter()
    hist = s_histogram(D0, N)
    lhs = weighted_sum(hist)
    elapsed = time.perf_counter() - start
    rhs = (-1) ** N * factorial(N + 1) * (-2) ** cycle_stats(D0).s
    stated = 4 * (-1) ** N * factorial(N + 1)
    return SumReport(n, N, N, lhs, rhs, sum(hist.values()), elapsed, "", stated)


def compositions(N: int) -> Iterator[tuple]:
    """Ordered tuples of positive integers summing to ``N``."""
    if N == 0:
        yield ()
        return
    for first in range(1, N + 1):
        for rest in compositions(N - first):
            yield (first,) + rest


def segment_census(D0: ChordDiagram) -> dict:
    """Count single-chord additions by the change in ``s``."""
    from .chords import classify_chord, partial_matchings

    out = {+1: 0, 0: 0, -1: 0}
    for ((i, j),) in partial_matchings(D0.free_vertices(), 1):
        tag = classify_chord(D0, i, j)
        out[sum(tag.delta)] += 1
    return out
