"""Fully contracted normal form: sums of delta products times an open word."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .errors import IllFormedExpressionError
from .words import format_word

Pair = tuple  # (i, j) with i < j


def make_pair(i: int, j: int) -> Pair:
    return (i, j) if i <= j else (j, i)


def pairings(word) -> Iterator[tuple]:
    """Signed perfect matchings of the positions of ``word``.

    Follows the trace recursion: the first letter is paired with the letter at
    1-based position ``j`` with sign ``(-1)^j``.  Yields ``(sign, pairs)`` where
    ``pairs`` is a sorted tuple of letter pairs.
    """
    word = tuple(word)
    if not word:
        yield 1, ()
        return
    first = word[0]
    for j in range(1, len(word)):
        sign = 1 if j % 2 else -1
        rest = word[1:j] + word[j + 1:]
        pair = make_pair(first, word[j])
        for s, pairs in pairings(rest):
            yield sign * s, tuple(sorted(pairs + (pair,)))


def _pairs_letters(pairs) -> list:
    out = []
    for i, j in pairs:
        out.extend((i, j))
    return out


def reduce_deltas(pairs: Iterable[Pair], residual=()) -> tuple:
    """Apply ``d_ii = 4``, ``d_ij d_jk = d_ik`` and ``d_ij a_j = a_i``.

    Returns ``(factor, pairs, residual)``; the residual must be duplicate free.
    """
    pairs = [tuple(p) for p in pairs]
    residual = list(residual)
    factor = 1
    changed = True
    while changed:
        changed = False
        for idx, (i, j) in enumerate(pairs):
            if i == j:
                factor *= 4
                del pairs[idx]
                changed = True
                break
            hit = None
            for jdx, (k, l) in enumerate(pairs):
                if jdx != idx and (j in (k, l) or i in (k, l)):
                    hit = jdx
                    break
            if hit is not None:
                k, l = pairs[hit]
                if j in (k, l):
                    other, keep = (l if k == j else k), i
                else:
                    other, keep = (l if k == i else k), j
                first, second = sorted((idx, hit), reverse=True)
                del pairs[first]
                del pairs[second]
                pairs.append(make_pair(keep, other))
                changed = True
                break
            for pos, letter in enumerate(residual):
                if letter == j or letter == i:
                    residual[pos] = i if letter == j else j
                    del pairs[idx]
                    changed = True
                    break
            if changed:
                break
    if len(set(residual)) != len(residual):
        raise IllFormedExpressionError(f"residual word {residual} still has duplicates")
    return factor, tuple(sorted(make_pair(*p) for p in pairs)), tuple(residual)


@lru_cache(maxsize=None)
def sort_residual(word: tuple) -> tuple:
    """Rewrite a duplicate-free word over ascending words via ``ab = -ba + 2 d_ab``.

    Returns a tuple of ``((pairs, ascending_word), coefficient)`` items.
    """
    for p in range(len(word) - 1):
        a, b = word[p], word[p + 1]
        if a > b:
            out: dict = {}
            swapped = word[:p] + (b, a) + word[p + 2:]
            for (pairs, w), c in sort_residual(swapped):
                out[(pairs, w)] = out.get((pairs, w), 0) - c
            dropped = word[:p] + word[p + 2:]
            for (pairs, w), c in sort_residual(dropped):
                key = (tuple(sorted(pairs + ((b, a),))), w)
                out[key] = out.get(key, 0) + 2 * c
            return tuple((k, v) for k, v in out.items() if v)
    return ((((), word), 1),)


class DeltaPolynomial:
    """Rational combination of ``(delta pairs, residual word)`` terms.

    Every letter appears at most once per term.  Two polynomials compare equal
    when their :meth:`canonical` forms coincide.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None):
        out: dict = {}
        for (pairs, residual), coef in (terms or {}).items():
            if not coef:
                continue
            factor, pairs, residual = reduce_deltas(pairs, residual)
            key = (pairs, residual)
            out[key] = out.get(key, 0) + coef * factor
        self._terms = {k: v for k, v in out.items() if v}

    @classmethod
    def _reduced(cls, terms: dict) -> "DeltaPolynomial":
        # caller guarantees every key is already in reduced form
        obj = cls.__new__(cls)
        obj._terms = {k: v for k, v in terms.items() if v}
        return obj

    def letters(self) -> set:
        out = set()
        for pairs, residual in self._terms:
            for p in pairs:
                out.update(p)
            out.update(residual)
        return out

    @classmethod
    def scalar(cls, value) -> "DeltaPolynomial":
        return cls({((), ()): value})

    @classmethod
    def word(cls, word, coef=1) -> "DeltaPolynomial":
        return cls({((), tuple(word)): coef})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_scalar(self) -> bool:
        return all(not pairs and not res for pairs, res in self._terms)

    def scalar_value(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if not self.is_scalar():
            raise ValueError("polynomial is not a pure scalar")
        return Fraction(self._terms[((), ())])

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DeltaPolynomial.scalar(other)
        if not isinstance(other, DeltaPolynomial):
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        res = DeltaPolynomial()
        res._terms = {k: v for k, v in out.items() if v}
        return res

    __radd__ = __add__

    def __neg__(self):
        res = DeltaPolynomial()
        res._terms = {k: -v for k, v in self._terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            res = DeltaPolynomial()
            res._terms = {k: v * other for k, v in self._terms.items() if v * other}
            return res
        if not isinstance(other, DeltaPolynomial):
            return NotImplemented
        out: dict = {}
        disjoint = not (self.letters() & other.letters())
        for (p1, r1), c1 in self._terms.items():
            for (p2, r2), c2 in other._terms.items():
                if r1 and r2:
                    raise IllFormedExpressionError("product of two open residual words")
                pairs = tuple(sorted(p1 + p2)) if disjoint else p1 + p2
                key = (pairs, r1 + r2)
                out[key] = out.get(key, 0) + c1 * c2
        if disjoint:
            return DeltaPolynomial._reduced(out)
        return DeltaPolynomial(out)

    __rmul__ = __mul__

    def canonical(self) -> "DeltaPolynomial":
        """Residual words rewritten in ascending letter order."""
        out: dict = {}
        for (pairs, residual), coef in self._terms.items():
            if len(residual) < 2 or residual == tuple(sorted(residual)):
                out[(pairs, residual)] = out.get((pairs, residual), 0) + coef
                continue
            for (extra, word), c in sort_residual(residual):
                key = (tuple(sorted(pairs + extra)), word)
                out[key] = out.get(key, 0) + coef * c
        res = DeltaPolynomial()
        res._terms = {k: v for k, v in sorted(out.items()) if v}
        return res

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DeltaPolynomial.scalar(other)
        if not isinstance(other, DeltaPolynomial):
            return NotImplemented
        return self.canonical()._terms == other.canonical()._terms

    def __hash__(self):
        return hash(frozenset(self.canonical()._terms.items()))

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: (len(kv[0][1]), kv[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        chunks = []
        for (pairs, residual), coef in self.sorted_items():
            factors = [f"d({i},{j})" for i, j in pairs]
            if residual:
                factors.append(format_word(residual))
            mag = abs(coef)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = " ".join(factors)
            else:
                body = f"{mag} * " + " ".join(factors)
            chunks.append(("-" if coef < 0 else "+", body))
        text = ("-" if chunks[0][0] == "-" else "") + chunks[0][1]
        for sign, body in chunks[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"DeltaPolynomial({self.sorted_items()!r})"


# -- four-dimensional evaluation ---------------------------------------------
#
# Formal delta polynomials that differ by identities special to four
# dimensions (vanishing antisymmetrisations over five indices) describe the
# same tensor.  They are compared by evaluating both at random integer
# vectors, with real 4x4 gamma matrices of signature (2, 2) so everything
# stays in exact integer arithmetic.

_METRIC = (1, 1, -1, -1)


def _kron(a, b):
    n, m = len(a), len(b)
    return [[a[i // m][j // m] * b[i % m][j % m] for j in range(n * m)] for i in range(n * m)]


_S1 = [[0, 1], [1, 0]]
_S3 = [[1, 0], [0, -1]]
_EPS = [[0, 1], [-1, 0]]
_ONE = [[1, 0], [0, 1]]
GAMMA = (_kron(_S1, _ONE), _kron(_S3, _ONE), _kron(_EPS, _S1), _kron(_EPS, _S3))


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4)] for i in range(4)]


def _slash(p):
    return [[sum(p[mu] * GAMMA[mu][i][j] for mu in range(4)) for j in range(4)] for i in range(4)]


def _dot(p, q):
    return sum(g * x * y for g, x, y in zip(_METRIC, p, q))


def evaluate_4d(poly: "DeltaPolynomial", vectors: Mapping) -> list:
    """Value of ``poly`` as a 4x4 matrix with ``a_i -> slash(vectors[i])``."""
    total = [[Fraction(0)] * 4 for _ in range(4)]
    slashes: dict = {}
    for (pairs, residual), coef in poly.items():
        scalar = Fraction(coef)
        for i, j in pairs:
            scalar *= _dot(vectors[i], vectors[j])
        if not scalar:
            continue
        mat = None
        for letter in residual:
            if letter not in slashes:
                slashes[letter] = _slash(vectors[letter])
            mat = slashes[letter] if mat is None else _matmul(mat, slashes[letter])
        for i in range(4):
            for j in range(4):
                if mat is None:
                    if i == j:
                        total[i][j] += scalar
                else:
                    total[i][j] += scalar * mat[i][j]
    return total


def letters_of(poly: "DeltaPolynomial") -> set:
    out = set()
    for pairs, residual in poly._terms:
        for p in pairs:
            out.update(p)
        out.update(residual)
    return out


def equal_in_four_dimensions(a: "DeltaPolynomial", b: "DeltaPolynomial", rng=None, samples: int = 3) -> bool:
    """Randomised exact identity test of two delta polynomials in four dimensions."""
    import random

    rng = rng or random.Random(0x5EED)
    letters = letters_of(a) | letters_of(b)
    diff = a - b
    for _ in range(samples):
        vectors = {x: tuple(rng.randint(-10**6, 10**6) for _ in range(4)) for x in letters}
        value = evaluate_4d(diff, vectors)
        if any(v for row in value for v in row):
            return False
    return True
