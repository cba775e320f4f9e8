"""Brute-force contraction by rewriting.

This is the slow, trusted baseline.  Expressions are products of a rational
scalar, delta factors, traces of words and at most one open word.  They are
reduced with the classical identities only:

* ``d_ii = 4``, ``d_ij d_jk = d_ik``, ``d_ij a_j = a_i``;
* ``a_i u a_i = -2 rev(u)`` for odd ``u`` and the even-length rule
  ``a_i v1..vn a_i = 2(v_{k+1}..vn v1..vk + vk..v1 vn..v_{k+1})`` for odd ``k``;
* Chisholm merging ``tr(a_i u) tr(a_i v) = 2 tr(u v) + 2 tr(rev(u) v)``;
* the recursive trace expansion once nothing else applies.

A random generator may be passed to :func:`normal_form` to pick redexes and
rule variants at random; confluence is checked by the test-suite rather than
assumed.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .deltas import DeltaPolynomial, make_pair
from .errors import (
    IllFormedExpressionError,
    NoDuplicateError,
    NoSharedLetterError,
    OddWordError,
)
from .words import WordSum, check_word, format_word, trace_recursive


@dataclass(frozen=True)
class TraceExpression:
    scalar: Fraction = Fraction(1)
    deltas: tuple = ()
    traces: tuple = ()
    open: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "scalar", Fraction(self.scalar))
        object.__setattr__(self, "deltas", tuple(sorted(make_pair(*p) for p in self.deltas)))
        object.__setattr__(self, "traces", tuple(tuple(t) for t in self.traces))
        if self.open is not None:
            object.__setattr__(self, "open", tuple(self.open))

    @property
    def key(self):
        return (self.deltas, tuple(sorted(self.traces)), self.open)

    def letter_counts(self) -> Counter:
        counts: Counter = Counter()
        for i, j in self.deltas:
            counts[i] += 1
            counts[j] += 1
        for t in self.traces:
            counts.update(t)
        if self.open is not None:
            counts.update(self.open)
        return counts

    def validate(self) -> None:
        for letter, count in self.letter_counts().items():
            if count > 2:
                raise IllFormedExpressionError(f"letter a{letter} occurs {count} times")
        for t in self.traces:
            if len(t) % 2:
                raise OddWordError(f"trace of odd word {format_word(t)}")

    def measure(self) -> tuple:
        word_counts: Counter = Counter()
        for t in self.traces:
            word_counts.update(t)
        if self.open is not None:
            word_counts.update(self.open)
        doubles = sum(1 for c in word_counts.values() if c > 1)
        length = sum(len(t) for t in self.traces) + len(self.open or ())
        return (len(self.deltas), doubles, len(self.traces), length)

    def with_(self, **changes) -> "TraceExpression":
        fields = dict(scalar=self.scalar, deltas=self.deltas, traces=self.traces, open=self.open)
        fields.update(changes)
        return TraceExpression(**fields)

    def __str__(self):
        parts = [f"d({i},{j})" for i, j in self.deltas]
        parts += [f"tr({format_word(t) if t else ''})" for t in self.traces]
        if self.open is not None:
            parts.append(format_word(self.open))
        body = " ".join(parts) or "1"
        return f"{self.scalar} * {body}"


# -- single-word contraction -------------------------------------------------

def contract_pattern(u: tuple, split: int = 1) -> dict:
    """Value of ``a_i u a_i`` as ``{word: coefficient}``."""
    u = tuple(u)
    n = len(u)
    if n % 2:
        return {u[::-1]: Fraction(-2)}
    if n == 0:
        return {(): Fraction(4)}
    if split % 2 == 0 or not 0 < split < n:
        raise ValueError(f"split must be odd and inside (0, {n}), got {split}")
    left, right = u[:split], u[split:]
    out: dict = {}
    for w in (right + left, left[::-1] + right[::-1]):
        out[w] = out.get(w, 0) + 2
    return out


def duplicate_pairs(word: tuple) -> list:
    """Positions ``(p, q)`` of every letter occurring twice, innermost first."""
    seen: dict = {}
    pairs = []
    for pos, letter in enumerate(word):
        if letter in seen:
            pairs.append((seen[letter], pos))
        else:
            seen[letter] = pos
    pairs.sort(key=lambda pq: (pq[1] - pq[0], pq[0]))
    return pairs


def contract_inside(word, pair: Optional[tuple] = None, split: int = 1) -> WordSum:
    """Contract one duplicated letter of a word in place.

    Without ``pair`` the innermost duplicate (leftmost on ties) is used.
    """
    word = check_word(word)
    pairs = duplicate_pairs(word)
    if not pairs:
        raise NoDuplicateError(f"{format_word(word)} has no repeated letter")
    p, q = pair if pair is not None else pairs[0]
    if word[p] != word[q] or p >= q:
        raise ValueError(f"positions {p}, {q} do not hold a repeated letter")
    head, inner, tail = word[:p], word[p + 1:q], word[q + 1:]
    out = {}
    for w, c in contract_pattern(inner, split).items():
        key = head + w + tail
        out[key] = out.get(key, 0) + c
    return WordSum(out)


# -- rule applications on expressions ----------------------------------------

def _delta_redexes(e: TraceExpression) -> list:
    redexes = []
    counts = e.letter_counts()
    for idx, (i, j) in enumerate(e.deltas):
        if i == j or counts[i] > 1 or counts[j] > 1:
            redexes.append(idx)
    return redexes


def apply_delta(e: TraceExpression, index: Optional[int] = None) -> TraceExpression:
    """Eliminate one delta factor that shares an index with something else."""
    redexes = _delta_redexes(e)
    if not redexes:
        return e
    idx = redexes[0] if index is None else index
    i, j = e.deltas[idx]
    rest = e.deltas[:idx] + e.deltas[idx + 1:]
    if i == j:
        return e.with_(scalar=e.scalar * 4, deltas=rest)
    # prefer relabelling the occurrence of j by i; fall back to i by j
    for old, new in ((j, i), (i, j)):
        for k, (a, b) in enumerate(rest):
            if old in (a, b):
                other = b if a == old else a
                merged = rest[:k] + rest[k + 1:] + (make_pair(new, other),)
                return e.with_(deltas=merged)
        for t_idx, t in enumerate(e.traces):
            if old in t:
                t2 = tuple(new if x == old else x for x in t)
                traces = e.traces[:t_idx] + (t2,) + e.traces[t_idx + 1:]
                return e.with_(deltas=rest, traces=traces)
        if e.open is not None and old in e.open:
            o2 = tuple(new if x == old else x for x in e.open)
            return e.with_(deltas=rest, open=o2)
    return e


def _contract_trace(e: TraceExpression, t_idx: int, pair: tuple, outer: bool, split: int) -> list:
    t = e.traces[t_idx]
    p, q = pair
    if outer:
        rotated = t[q:] + t[:q]  # starts with the second occurrence
        p2 = (p - q) % len(t)
        t, p, q = rotated, 0, p2
    head, inner, tail = t[:p], t[p + 1:q], t[q + 1:]
    # cyclic: tr(head x inner x tail) = tr(x inner x tail head)
    rest = tail + head
    n = len(inner)
    if n % 2 == 0 and n > 0:
        split = split if 0 < split < n and split % 2 else 1
    out = []
    for w, c in contract_pattern(inner, split).items():
        traces = e.traces[:t_idx] + (w + rest,) + e.traces[t_idx + 1:]
        out.append(e.with_(scalar=e.scalar * c, traces=traces))
    return out


def _contract_open(e: TraceExpression, pair: tuple, split: int) -> list:
    w = e.open
    p, q = pair
    head, inner, tail = w[:p], w[p + 1:q], w[q + 1:]
    n = len(inner)
    if n % 2 == 0 and n > 0:
        split = split if 0 < split < n and split % 2 else 1
    return [e.with_(scalar=e.scalar * c, open=head + x + tail)
            for x, c in contract_pattern(inner, split).items()]


def _rotate_to(t: tuple, letter: int) -> tuple:
    p = t.index(letter)
    return t[p:] + t[:p]


def merge_traces(e: TraceExpression, pair: Optional[tuple] = None, letter: Optional[int] = None) -> list:
    """Join two traces sharing a letter with the Chisholm identity."""
    candidates = _merge_redexes(e)
    if not candidates:
        raise NoSharedLetterError("no letter is shared between two traces")
    if pair is None:
        pair, letter = candidates[0]
    a, b = pair
    t1, t2 = e.traces[a], e.traces[b]
    if letter is None:
        letter = min(set(t1) & set(t2))
    if len(t1) % 2 or len(t2) % 2:
        raise OddWordError("cannot merge traces of odd words")
    u = _rotate_to(t1, letter)[1:]
    v = _rotate_to(t2, letter)[1:]
    others = tuple(t for k, t in enumerate(e.traces) if k not in (a, b))
    out = []
    for merged in (u + v, u[::-1] + v):
        out.append(e.with_(scalar=e.scalar * 2, traces=others + (merged,)))
    return out


def _merge_redexes(e: TraceExpression) -> list:
    found = []
    for a in range(len(e.traces)):
        for b in range(a + 1, len(e.traces)):
            shared = set(e.traces[a]) & set(e.traces[b])
            for letter in sorted(shared):
                if e.traces[a].count(letter) == 1 and e.traces[b].count(letter) == 1:
                    found.append(((a, b), letter))
    return found


def _open_merge_redexes(e: TraceExpression) -> list:
    if e.open is None:
        return []
    found = []
    for t_idx, t in enumerate(e.traces):
        for letter in sorted(set(t) & set(e.open)):
            if t.count(letter) == 1 and e.open.count(letter) == 1:
                found.append((t_idx, letter))
    return found


def merge_open(e: TraceExpression, t_idx: int, letter: int) -> list:
    """``A a_i B tr(a_i u) = 2 (A u B + A rev(u) B)``."""
    u = _rotate_to(e.traces[t_idx], letter)[1:]
    p = e.open.index(letter)
    head, tail = e.open[:p], e.open[p + 1:]
    others = e.traces[:t_idx] + e.traces[t_idx + 1:]
    return [e.with_(scalar=e.scalar * 2, traces=others, open=head + x + tail) for x in (u, u[::-1])]


def _finalize(e: TraceExpression) -> DeltaPolynomial:
    result = DeltaPolynomial({(e.deltas, ()): e.scalar})
    for t in e.traces:
        result = result * trace_recursive(t)
    if e.open is not None:
        result = result * DeltaPolynomial.word(e.open)
    return result


def rewrite_step(e: TraceExpression, rng: Optional[random.Random] = None) -> Optional[list]:
    """One rewrite of ``e``; ``None`` when only the final trace expansion is left."""
    delta_idx = _delta_redexes(e)
    inside = []
    for t_idx, t in enumerate(e.traces):
        for pair in duplicate_pairs(t):
            inside.append(("trace", t_idx, pair))
    if e.open is not None:
        for pair in duplicate_pairs(e.open):
            inside.append(("open", None, pair))
    merges = _merge_redexes(e)
    open_merges = _open_merge_redexes(e)

    if rng is None:
        if delta_idx:
            return [apply_delta(e, delta_idx[0])]
        if inside:
            kind, t_idx, pair = inside[0]
            if kind == "trace":
                return _contract_trace(e, t_idx, pair, False, 1)
            return _contract_open(e, pair, 1)
        if merges:
            pair, letter = merges[0]
            return merge_traces(e, pair, letter)
        if open_merges:
            return merge_open(e, *open_merges[0])
        return None

    moves = [("delta", i) for i in delta_idx] + [("inside", m) for m in inside]
    moves += [("merge", m) for m in merges] + [("open_merge", m) for m in open_merges]
    if not moves:
        return None
    kind, move = rng.choice(moves)
    if kind == "delta":
        return [apply_delta(e, move)]
    if kind == "inside":
        where, t_idx, pair = move
        split = rng.randrange(1, 64) * 2 - 1
        if where == "trace":
            return _contract_trace(e, t_idx, pair, rng.random() < 0.5, split)
        return _contract_open(e, pair, split)
    if kind == "merge":
        pair, letter = move
        if rng.random() < 0.5:
            pair = (pair[1], pair[0])
        return merge_traces(e, pair, letter)
    return merge_open(e, *move)


def normal_form(e, rng: Optional[random.Random] = None, check_measure: bool = True) -> DeltaPolynomial:
    """Fully reduce an expression (or a list of expressions) to delta form."""
    items = [e] if isinstance(e, TraceExpression) else list(e)
    pending: dict = {}
    for item in items:
        item.validate()
        pending[item.key] = pending.get(item.key, 0) + item.scalar
    result = DeltaPolynomial()
    while pending:
        key = next(iter(pending))
        coef = pending.pop(key)
        if not coef:
            continue
        deltas, traces, open_ = key
        term = TraceExpression(coef, deltas, traces, open_)
        step = rewrite_step(term, rng)
        if step is None:
            result = result + _finalize(term)
            continue
        before = term.measure()
        for new in step:
            if check_measure and not new.measure() < before:
                raise AssertionError(f"rewrite did not decrease measure: {term} -> {new}")
            if new.scalar:
                pending[new.key] = pending.get(new.key, 0) + new.scalar
    return result.canonical()


def expression(traces=(), deltas=(), open=None, scalar=1) -> TraceExpression:
    return TraceExpression(Fraction(scalar), tuple(deltas), tuple(tuple(t) for t in traces), open)
