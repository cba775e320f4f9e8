"""Random well-formed inputs for cross-checks and benchmarks."""
from __future__ import annotations

import random
from typing import Optional


def random_paired_word(rng: random.Random, length: int, pairs: Optional[int] = None, first_letter: int = 1) -> tuple:
    """Word of ``length`` letters in which ``pairs`` letters occur twice."""
    if pairs is None:
        pairs = rng.randint(0, length // 2)
    pairs = min(pairs, length // 2)
    distinct = length - pairs
    letters = list(range(first_letter, first_letter + distinct))
    slots = letters + letters[:pairs]
    rng.shuffle(slots)
    return tuple(slots)


def random_trace_product(rng: random.Random, lengths, shared: Optional[int] = None) -> tuple:
    """Tuple of even words whose letters repeat within and across words."""
    total = sum(lengths)
    if shared is None:
        shared = rng.randint(0, total // 2)
    word = random_paired_word(rng, total, shared)
    out, pos = [], 0
    for m in lengths:
        out.append(word[pos:pos + m])
        pos += m
    return tuple(out)


def random_even_word(rng: random.Random, max_length: int = 12) -> tuple:
    return random_paired_word(rng, 2 * rng.randint(0, max_length // 2))


def random_odd_word(rng: random.Random, max_length: int = 11) -> tuple:
    return random_paired_word(rng, 2 * rng.randint(0, (max_length - 1) // 2) + 1)


def random_fully_paired(rng: random.Random, length: int) -> tuple:
    return random_paired_word(rng, length, length // 2)
