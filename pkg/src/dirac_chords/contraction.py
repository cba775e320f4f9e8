"""Closed-form contraction through cycle words.

For a single trace, ``tr(w) = (-2)^(k + c2 + c3) * wbar(D(w))`` where the
cycle word ``wbar = (prod sym(u_i) + prod sym(u_i*)) / 2`` is read off the
three-coloured cycles.  Products of traces sum over relative colourings.
Open (odd) words are closed with the dummy letter ``a0`` and the dummy's
cycle factor is unsymmetrised afterwards.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .chords import (
    ChordDiagram,
    TaitColoring,
    coloring,
    components,
    from_words,
    relative_colorings,
)
from .deltas import DeltaPolynomial
from .errors import EvenWordError, OddWordError
from .words import (
    HALF,
    WordSum,
    check_word,
    concat,
    format_word,
    star_shift,
    sym,
    trace_recursive,
)

DUMMY = 0


@dataclass(frozen=True)
class CycleWord:
    """Cycle word of a diagram under one colouring, with its counts."""

    k: int
    c2: int
    c3: int
    cycles: tuple
    content: WordSum

    @property
    def exponent(self) -> int:
        return self.k + self.c2 + self.c3

    @property
    def factor(self) -> int:
        return (-2) ** self.exponent


@dataclass(frozen=True)
class Contraction:
    """A contraction result: ``sum(scalar * cycle_word.content)``.

    ``closed`` results are central (traces); open results keep an odd word.
    """

    summands: tuple
    closed: bool = True

    def value(self) -> WordSum:
        total = WordSum.zero()
        for scalar, cw in self.summands:
            total = total + cw.content * Fraction(scalar)
        return total

    @property
    def is_scalar(self) -> bool:
        return all(not cw.cycles for _, cw in self.summands)

    def __str__(self):
        return format_contraction(self)


def cycle_words(D: ChordDiagram, c: Optional[TaitColoring] = None) -> list:
    """Letter sequences of the 3-cycles, each read 01-path first."""
    comps = components(D, c or coloring(D))
    return [tuple(D.letter(v) for v in cyc) for cyc in comps.three_cycles]


def _product(factors) -> WordSum:
    out = WordSum.scalar(1)
    for f in factors:
        out = concat(out, f)
    return out


def cycle_word(D: ChordDiagram, c: Optional[TaitColoring] = None) -> CycleWord:
    c = c or coloring(D)
    comps = components(D, c)
    cycles = tuple(tuple(D.letter(v) for v in cyc) for cyc in comps.three_cycles)
    plain = _product(sym(u) for u in cycles)
    starred = _product(sym(star_shift(u)) for u in cycles)
    content = (plain + starred) * HALF
    c2 = len(comps.cycles01) + len(comps.cycles02) + D.ell
    return CycleWord(D.k, c2, len(cycles), cycles, content)


_EMPTY = CycleWord(0, 1, 1, (), WordSum.scalar(1))


def contract_trace(w) -> tuple:
    """``tr(w)`` as ``(scalar, CycleWord)`` with scalar ``(-2)^(k+c2+c3)``."""
    w = check_word(w)
    if len(w) % 2:
        raise OddWordError(f"trace of odd word (length {len(w)}); use contract_open")
    if not w:
        return 4, _EMPTY
    cw = cycle_word(from_words([w]))
    return cw.factor, cw


def contract_multi(words: Sequence, reference: int = 0) -> Contraction:
    """Product of traces as a sum over the ``2^(l-1)`` relative colourings."""
    words = [check_word(w) for w in words]
    for w in words:
        if len(w) % 2:
            raise OddWordError(f"trace of odd word (length {len(w)})")
    empties = sum(1 for w in words if not w)
    words = [w for w in words if w]
    pre = Fraction(4) ** empties
    if not words:
        return Contraction(((pre, CycleWord(0, 0, 0, (), WordSum.scalar(1))),))
    D = from_words(words)
    summands = []
    for c in relative_colorings(D, reference):
        cw = cycle_word(D, c)
        summands.append((pre * Fraction(cw.factor, 2 ** (D.ell - 1)), cw))
    return Contraction(tuple(summands))


def contract(words: Sequence) -> Contraction:
    """Product of traces; a single trace is the one-colouring special case."""
    if len(words) == 1:
        scalar, cw = contract_trace(words[0])
        return Contraction(((Fraction(scalar), cw),))
    return contract_multi(words)


def contract_open(w, traces: Sequence = ()) -> Contraction:
    """Contract an odd word (optionally times traces) into reduced words.

    The dummy ``a0`` is put in front of ``w``.  In the cycle word of the
    closed trace the factor through ``a0`` is unsymmetrised in place and the
    dummy dropped, leaving ``(x P + P* x) / 2`` with ``x`` the letters read
    after ``a0``.
    """
    w = check_word(w)
    if len(w) % 2 == 0:
        raise EvenWordError(f"open word must have odd length, got {len(w)}")
    if DUMMY in w:
        raise ValueError("letter a0 is reserved for the dummy")
    traces = [check_word(t) for t in traces]
    empties = sum(1 for t in traces if not t)
    traces = [t for t in traces if t]
    closed = (DUMMY,) + w
    D = from_words([closed] + traces)
    pre = Fraction(4) ** empties / 4
    summands = []
    for c in relative_colorings(D, 0):
        comps = components(D, c)
        cycles = [tuple(D.letter(v) for v in cyc) for cyc in comps.three_cycles]
        # vertex 1 is the dummy and the smallest free vertex, so it heads
        # cycle 0: u = a0 x in the plain product, u* = x a0 in the starred one
        head, others = cycles[0], cycles[1:]
        line = head[1:]
        plain = concat(line, _product(sym(u) for u in others))
        starred = concat(_product(sym(star_shift(u)) for u in others), line)
        content = (plain + starred) * HALF
        c2 = len(comps.cycles01) + len(comps.cycles02) + D.ell
        cw = CycleWord(D.k, c2, len(cycles), tuple(cycles), content)
        summands.append((pre * Fraction(cw.factor, 2 ** (D.ell - 1)), cw))
    return Contraction(tuple(summands), closed=False)


def to_delta(result) -> DeltaPolynomial:
    """Fully expand a contraction result into canonical delta form."""
    if isinstance(result, DeltaPolynomial):
        return result.canonical()
    if isinstance(result, (int, Fraction)):
        return DeltaPolynomial.scalar(result)
    if isinstance(result, tuple) and len(result) == 2 and isinstance(result[1], CycleWord):
        result = Contraction(((Fraction(result[0]), result[1]),))
    if isinstance(result, Contraction):
        return _expand(result.value(), result.closed)
    if isinstance(result, WordSum):
        closed = all(len(x) % 2 == 0 for x in result)
        return _expand(result, closed)
    raise TypeError(f"cannot expand {type(result).__name__}")


def _expand(value: WordSum, closed: bool) -> DeltaPolynomial:
    out = DeltaPolynomial()
    for word, coef in value.items():
        if closed:
            # central elements equal a quarter of their trace
            out = out + trace_recursive(word) * (Fraction(coef) / 4)
        else:
            out = out + DeltaPolynomial.word(word, coef)
    return out.canonical()


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_contraction(result: Contraction) -> str:
    """Factored text form, ``-8 * tr(a1 a2 a6 a5)`` style where possible."""
    if result.closed and len(result.summands) == 1:
        scalar, cw = result.summands[0]
        scalar = Fraction(scalar)
        if not cw.cycles:
            return _fmt_coef(scalar * cw.content.coefficient(()))
        if len(cw.cycles) == 1:
            return _join([(scalar / 4, f"tr({format_word(cw.cycles[0])})")])
    if result.closed and all(len(cw.cycles) <= 1 for _, cw in result.summands):
        parts = []
        for scalar, cw in result.summands:
            scalar = Fraction(scalar)
            if cw.cycles:
                parts.append((scalar / 4, f"tr({format_word(cw.cycles[0])})"))
            else:
                parts.append((scalar * cw.content.coefficient(()), None))
        return _join(parts)
    value = result.value()
    if not value:
        return "0"
    return str(value)


def _join(parts) -> str:
    merged: dict = {}
    for coef, body in parts:
        merged[body] = merged.get(body, 0) + coef
    chunks = []
    for body, coef in merged.items():
        if not coef:
            continue
        text = _fmt_coef(abs(coef)) if body is None else (
            body if abs(coef) == 1 else f"{_fmt_coef(abs(coef))} * {body}")
        chunks.append(("-" if coef < 0 else "+", text))
    if not chunks:
        return "0"
    out = ("-" if chunks[0][0] == "-" else "") + chunks[0][1]
    for sign, text in chunks[1:]:
        out += f" {sign} {text}"
    return out


def letter_counts(words) -> Counter:
    return Counter(x for w in words for x in w)
