"""Timing harness: closed-formula contraction against the rewriting oracle."""
from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .contraction import contract, contract_open, to_delta
from .evaluate import compare
from .generators import random_fully_paired, random_paired_word
from .oracle import expression, normal_form

DEFAULT_SEED = 0x5EED


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    """Seed for randomized runs, overridable with ``DIRAC_CHORDS_SEED``."""
    raw = os.environ.get("DIRAC_CHORDS_SEED")
    if raw is None or raw == "":
        return default
    return int(raw, 0)


@dataclass(frozen=True)
class BenchRow:
    label: str
    count: int
    engine_s: float
    expand_s: float
    oracle_s: float
    agree: int

    @property
    def speedup(self) -> float:
        return self.oracle_s / self.engine_s if self.engine_s else float("inf")

    def to_dict(self) -> dict:
        return {
            "class": self.label,
            "count": self.count,
            "engine_ms": round(self.engine_s * 1000, 3),
            "expand_ms": round(self.expand_s * 1000, 3),
            "oracle_ms": round(self.oracle_s * 1000, 3),
            "agree": self.agree,
            "agreement": f"{100 * self.agree / self.count:.1f}%" if self.count else "n/a",
        }


def _engine(word) -> object:
    if len(word) % 2:
        return contract_open(word)
    return contract([word])


def _oracle(word) -> object:
    if len(word) % 2:
        return normal_form(expression(open=word))
    return normal_form(expression(traces=[word]))


def time_one(word) -> tuple:
    """``(engine, expansion, oracle)`` seconds and whether the results agree."""
    t0 = time.perf_counter()
    result = _engine(word)
    t1 = time.perf_counter()
    a = to_delta(result)
    t2 = time.perf_counter()
    b = _oracle(word)
    t3 = time.perf_counter()
    return t1 - t0, t2 - t1, t3 - t2, compare(a, b) is not None


def _run(label: str, words: Sequence[tuple], jobs: int) -> BenchRow:
    if jobs > 1 and len(words) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(time_one, words, chunksize=max(1, len(words) // (4 * jobs))))
    else:
        results = [time_one(w) for w in words]
    return BenchRow(
        label,
        len(words),
        sum(r[0] for r in results),
        sum(r[1] for r in results),
        sum(r[2] for r in results),
        sum(1 for r in results if r[3]),
    )


def run_bench(
    sizes: Sequence[int] = (6, 10, 14, 18),
    per_size: int = 20,
    batch: int = 0,
    batch_length: int = 10,
    seed: Optional[int] = None,
    jobs: int = 1,
) -> List[BenchRow]:
    """One row per fully paired word length, plus an optional random batch.

    ``speedup`` compares the oracle with the closed formula alone; the delta
    expansion needed for the agreement check is timed separately.
    """
    rng = random.Random(seed_from_env() if seed is None else seed)
    rows = []
    for L in sizes:
        words = [random_fully_paired(rng, L) for _ in range(per_size)]
        rows.append(_run(f"fully paired, length {L}", words, jobs))
    if batch:
        words = [random_paired_word(rng, batch_length) for _ in range(batch)]
        rows.append(_run(f"random, length {batch_length}", words, jobs))
    return rows


def format_table(rows: Sequence[BenchRow]) -> str:
    if not rows:
        return ""
    head = (
        f"{'class':<26} {'count':>6} {'engine ms':>11} {'expand ms':>11} "
        f"{'oracle ms':>11} {'speedup':>8} {'agree':>7}"
    )
    lines = [head, "-" * len(head)]
    for r in rows:
        d = r.to_dict()
        lines.append(
            f"{r.label:<26} {r.count:>6} {d['engine_ms']:>11.3f} {d['expand_ms']:>11.3f} {d['oracle_ms']:>11.3f} "
            f"{r.speedup:>8.1f} {d['agreement']:>7}"
        )
    return "\n".join(lines)
