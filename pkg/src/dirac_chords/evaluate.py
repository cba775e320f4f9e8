"""Evaluate parsed expressions with the closed formula or the rewriting oracle."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .contraction import Contraction, contract, contract_open, format_contraction, to_delta
from .deltas import DeltaPolynomial, equal_in_four_dimensions, make_pair
from .oracle import TraceExpression, normal_form
from .parser import Monomial, Sum, expand
from .words import WordSum, concat, format_word


def absorb_deltas(mono: Monomial) -> Monomial:
    """Use ``d_ii = 4`` and ``d_ij x_j = x_i`` until every delta is isolated."""
    coef = mono.coefficient
    deltas = [make_pair(*p) for p in mono.deltas]
    traces = [tuple(t) for t in mono.traces]
    open_ = mono.open
    changed = True
    while changed:
        changed = False
        for idx, (i, j) in enumerate(deltas):
            rest = deltas[:idx] + deltas[idx + 1:]
            if i == j:
                coef *= 4
                deltas = rest
                changed = True
                break
            elsewhere = {x for p in rest for x in p}
            for t in traces:
                elsewhere.update(t)
            elsewhere.update(open_ or ())
            for old, new in ((j, i), (i, j)):
                if old in elsewhere:
                    swap = lambda w: tuple(new if x == old else x for x in w)
                    deltas = [make_pair(*swap(p)) for p in rest]
                    traces = [swap(t) for t in traces]
                    open_ = swap(open_) if open_ is not None else None
                    changed = True
                    break
            if changed:
                break
    return Monomial(coef, tuple(deltas), tuple(traces), open_)


@dataclass(frozen=True)
class EngineResult:
    """One monomial after closed-form contraction.

    ``contraction`` is ``None`` when the monomial vanishes; ``fallback`` marks
    even open words whose ends are both contracted, which go to the oracle.
    ``prefix`` and ``suffix`` are uncontracted letters peeled off an even
    open word.
    """

    coefficient: Fraction
    deltas: Tuple[Tuple[int, int], ...]
    contraction: Optional[Contraction]
    prefix: Tuple[int, ...] = ()
    suffix: Tuple[int, ...] = ()
    fallback: Optional[DeltaPolynomial] = None

    @property
    def is_zero(self) -> bool:
        return not self.coefficient or (self.contraction is None and self.fallback is None)

    def value(self) -> DeltaPolynomial:
        """The contracted part without the isolated deltas and coefficient."""
        if self.fallback is not None:
            return self.fallback
        inner = self.contraction
        if inner.closed:
            return (to_delta(inner) * DeltaPolynomial.word(self.prefix + self.suffix)).canonical()
        words = concat(concat(WordSum.word(self.prefix), inner.value()), WordSum.word(self.suffix))
        out = DeltaPolynomial()
        for word, coef in words.items():
            out = out + DeltaPolynomial.word(word, coef)
        return out.canonical()

    def to_delta(self) -> DeltaPolynomial:
        if self.is_zero:
            return DeltaPolynomial()
        outer = DeltaPolynomial({(self.deltas, ()): self.coefficient})
        return (outer * self.value()).canonical()

    def _body(self) -> str:
        if self.fallback is not None:
            return str(self.fallback * self.coefficient)
        inner = _scaled(self.contraction, self.coefficient)
        if not inner.closed:
            words = concat(concat(WordSum.word(self.prefix), inner.value()), WordSum.word(self.suffix))
            return str(words)
        text = format_contraction(inner)
        word = format_word(self.prefix + self.suffix) if self.prefix or self.suffix else ""
        if not word:
            return text
        if text == "1":
            return word
        if text == "-1":
            return f"-{word}"
        if _atomic(text):
            return f"{text} {word}" if "*" in text else f"{text} * {word}"
        return f"({text}) {word}"

    def text(self) -> str:
        if self.is_zero:
            return "0"
        body = self._body()
        if not self.deltas:
            return body
        head = " ".join(f"d({i},{j})" for i, j in self.deltas)
        if body == "1":
            return head
        if body == "-1":
            return f"-{head}"
        if not _atomic(body):
            return f"{head} ({body})"
        scaled = _SCALED.match(body)
        if scaled:
            return f"{scaled.group(1)} * {head} {scaled.group(2)}"
        if body.startswith("-"):
            return f"-{head} {body[1:]}"
        if _NUMBER.match(body):
            return f"{body} * {head}"
        return f"{head} {body}"


_SCALED = re.compile(r"^(-?\d+(?:/\d+)?) \* (.+)$")
_NUMBER = re.compile(r"^\d+(?:/\d+)?$")


def _atomic(text: str) -> bool:
    return " + " not in text and " - " not in text[1:]


def _scaled(c: Contraction, factor: Fraction) -> Contraction:
    return Contraction(tuple((Fraction(s) * factor, cw) for s, cw in c.summands), c.closed)


def engine_monomial(mono: Monomial) -> EngineResult:
    mono = absorb_deltas(mono)
    if any(len(t) % 2 for t in mono.traces) or not mono.coefficient:
        return EngineResult(Fraction(0), (), None)
    traces = list(mono.traces)
    w = mono.open
    if w is None:
        return EngineResult(mono.coefficient, mono.deltas, contract(traces) if traces else _unit())
    if len(w) % 2:
        return EngineResult(mono.coefficient, mono.deltas, contract_open(w, traces))
    # an even open word: peel letters that occur nowhere else until it is odd
    counts = mono.letter_counts()
    prefix, suffix = [], []
    while w and len(w) % 2 == 0:
        if counts[w[0]] == 1:
            prefix.append(w[0])
            w = w[1:]
        elif counts[w[-1]] == 1:
            suffix.insert(0, w[-1])
            w = w[:-1]
        else:
            break
    if not w:
        inner = contract(traces) if traces else _unit()
        return EngineResult(mono.coefficient, mono.deltas, inner, tuple(prefix), tuple(suffix))
    if len(w) % 2:
        return EngineResult(mono.coefficient, mono.deltas, contract_open(w, traces), tuple(prefix), tuple(suffix))
    fallback = normal_form(TraceExpression(Fraction(1), (), tuple(traces), tuple(prefix) + w + tuple(suffix)))
    return EngineResult(mono.coefficient, mono.deltas, None, fallback=fallback)


def _unit() -> Contraction:
    from .contraction import CycleWord

    return Contraction(((Fraction(1), CycleWord(0, 0, 0, (), WordSum.scalar(1))),))


def engine(expr: Sum) -> List[EngineResult]:
    return [engine_monomial(m) for m in expand(expr)]


def engine_text(results: List[EngineResult]) -> str:
    parts = [r.text() for r in results]
    parts = [p for p in parts if p != "0"] or ["0"]
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def engine_delta(results: List[EngineResult]) -> DeltaPolynomial:
    total = DeltaPolynomial()
    for r in results:
        total = total + r.to_delta()
    return total.canonical()


def to_expressions(expr: Sum) -> List[TraceExpression]:
    """Monomials as oracle input; traces of odd words vanish and are dropped."""
    return [
        TraceExpression(m.coefficient, m.deltas, m.traces, m.open)
        for m in expand(expr)
        if not any(len(t) % 2 for t in m.traces)
    ]


def oracle(expr: Sum, rng: Optional[random.Random] = None) -> DeltaPolynomial:
    items = to_expressions(expr)
    if not items:
        return DeltaPolynomial()
    return normal_form(items, rng)


def compare(a: DeltaPolynomial, b: DeltaPolynomial, rng: Optional[random.Random] = None) -> Optional[str]:
    """``"formal"`` or ``"4d"`` when equal, ``None`` otherwise.

    Formal delta forms can differ by identities that hold only in four
    dimensions; those are settled by exact evaluation at random vectors.
    """
    a, b = a.canonical(), b.canonical()
    if a == b:
        return "formal"
    if equal_in_four_dimensions(a, b, rng or random.Random(0x5EED)):
        return "4d"
    return None
