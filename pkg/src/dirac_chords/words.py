"""Dirac words: exact linear combinations of letter sequences.

A monomial word is a plain ``tuple`` of positive letter indices; ``(1, 2)``
stands for ``a1 a2`` and ``()`` for the unit.  A :class:`WordSum` maps
monomials to :class:`fractions.Fraction` coefficients.  Products are taken in
the free algebra and only reject third powers of a letter; the contraction
relations themselves live in :mod:`dirac_chords.oracle`.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

from .errors import DuplicateLetterError, OddWordError, ThirdPowerError

Word = tuple
Scalar = Union[int, Fraction]

HALF = Fraction(1, 2)


def check_word(word: Iterable[int], max_power: int = 2) -> Word:
    word = tuple(int(x) for x in word)
    for letter, count in Counter(word).items():
        if letter < 0:
            raise ValueError(f"letter index must be nonnegative, got {letter}")
        if count > max_power:
            if max_power == 1:
                raise DuplicateLetterError(f"letter a{letter} occurs {count} times")
            raise ThirdPowerError(f"letter a{letter} occurs {count} times")
    return word


def word_key(word: Word):
    return (len(word), word)


def format_word(word: Word) -> str:
    if not word:
        return "1"
    return " ".join(f"a{x}" for x in word)


class WordSum:
    """Finite sum of monomial words with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, Scalar] | None = None):
        merged: dict = {}
        if terms:
            for word, coef in terms.items():
                word = check_word(word)
                coef = Fraction(coef)
                if coef:
                    merged[word] = merged.get(word, 0) + coef
        self._terms = {w: c for w, c in merged.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "WordSum":
        obj = cls.__new__(cls)
        obj._terms = {w: c for w, c in terms.items() if c}
        obj._hash = None
        return obj

    @classmethod
    def word(cls, word: Iterable[int], coef: Scalar = 1) -> "WordSum":
        return cls({tuple(word): coef})

    @classmethod
    def scalar(cls, value: Scalar) -> "WordSum":
        return cls({(): value})

    @classmethod
    def zero(cls) -> "WordSum":
        return cls._raw({})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[Word]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, word: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(word), Fraction(0))

    @staticmethod
    def _coerce(other) -> "WordSum":
        if isinstance(other, WordSum):
            return other
        if isinstance(other, (int, Fraction)):
            return WordSum.scalar(other)
        if isinstance(other, tuple):
            return WordSum.word(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return WordSum._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return WordSum._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return WordSum._raw({w: c * other for w, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return concat(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return concat(other, self)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda wc: word_key(wc[0]))

    def max_length(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for word, coef in self.sorted_items():
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            if not word:
                body = str(mag)
            elif mag == 1:
                body = format_word(word)
            else:
                body = f"{mag} * {format_word(word)}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"WordSum({self.sorted_items()!r})"


def as_wordsum(w) -> WordSum:
    if isinstance(w, WordSum):
        return w
    if isinstance(w, (int, Fraction)):
        return WordSum.scalar(w)
    return WordSum.word(w)


def concat(u, v) -> WordSum:
    """Bilinear product of two word sums in the free algebra."""
    u, v = as_wordsum(u), as_wordsum(v)
    out: dict = {}
    for wu, cu in u.items():
        for wv, cv in v.items():
            w = check_word(wu + wv)
            out[w] = out.get(w, 0) + cu * cv
    return WordSum._raw(out)


def reverse(w) -> WordSum:
    w = as_wordsum(w)
    return WordSum._raw({x[::-1]: c for x, c in w.items()})


def cyclic_shift(word: Word, k: int = 1) -> Word:
    """k-fold shift moving the first letter to the end, ``s1(ai aj v) = aj v ai``."""
    word = tuple(word)
    if not word:
        return word
    k %= len(word)
    return word[k:] + word[:k]


def sym(w) -> WordSum:
    """Termwise ``(w + (-1)^|w| reversed(w)) / 2``."""
    w = as_wordsum(w)
    out: dict = {}
    for x, c in w.items():
        half = c * HALF
        out[x] = out.get(x, 0) + half
        rx = x[::-1]
        out[rx] = out.get(rx, 0) + (half if len(x) % 2 == 0 else -half)
    return WordSum._raw(out)


def delta(i: int, j: int) -> WordSum:
    if i == j:
        return WordSum.scalar(4)
    return WordSum._raw({(i, j): HALF, (j, i): HALF})


def star_shift(word: Word) -> Word:
    """Representative of the odd-shift class of an even word (canonically ``s1``)."""
    word = tuple(word)
    if len(word) % 2:
        raise OddWordError(f"star_shift needs an even word, got length {len(word)}")
    return cyclic_shift(word, 1)


def canonical_form(w) -> WordSum:
    """Return ``w`` with terms merged and ordered by (length, letters)."""
    w = as_wordsum(w)
    return WordSum._raw(dict(w.sorted_items()))


def trace_symmetric(word: Word) -> WordSum:
    """Four-term trace ``tr(w) = 2 sym(w + w*)`` of an even monomial word."""
    word = check_word(word)
    if len(word) % 2:
        raise OddWordError(f"trace of odd word (length {len(word)}) is not defined")
    if not word:
        return WordSum.scalar(4)
    star = cyclic_shift(word, 1)
    out: dict = {}
    for x in (word, star, word[::-1], star[::-1]):
        out[x] = out.get(x, Fraction(0)) + 1
    return WordSum._raw(out)


def _trace_key(word: Word) -> Word:
    """Least rotation or reversal; the metric expansion is invariant under both."""
    n = len(word)
    candidates = [word[k:] + word[:k] for k in range(n)]
    rev = word[::-1]
    candidates += [rev[k:] + rev[:k] for k in range(n)]
    return min(candidates)


@lru_cache(maxsize=4096)
def _trace_terms(word: Word) -> dict:
    from .deltas import pairings

    return {(pairs, ()): 4 * sign for sign, pairs in pairings(word)}


def trace_recursive(word: Word):
    """Full metric expansion of ``tr(w)`` for a duplicate-free even word.

    Returns a :class:`~dirac_chords.deltas.DeltaPolynomial` with ``(|w|-1)!!``
    terms, each carrying the overall factor 4.
    """
    from .deltas import DeltaPolynomial

    word = check_word(word, max_power=1)
    if len(word) % 2:
        raise OddWordError(f"trace of odd word (length {len(word)}) is not defined")
    if not word:
        return DeltaPolynomial._reduced({((), ()): 4})
    return DeltaPolynomial._reduced(_trace_terms(_trace_key(word)))
