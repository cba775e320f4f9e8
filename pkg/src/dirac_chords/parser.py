"""Text syntax for products of traces, deltas and open words.

::

    expr   := term (('+' | '-') term)*
    term   := [rational '*'] factor+ | rational
    factor := 'tr(' word? ')' | 'd(' int ',' int ')' | word | '(' expr ')'
    word   := ('a' int)+

A leading ``-`` negates the first term.  Adjacent letters always form a
single word, so printing and re-parsing gives back the same tree.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .errors import ExpressionSyntaxError, MultiplicityError
from .words import format_word


@dataclass(frozen=True)
class Trace:
    word: Tuple[int, ...]

    def __str__(self):
        return f"tr({format_word(self.word)})" if self.word else "tr()"


@dataclass(frozen=True)
class Delta:
    i: int
    j: int

    def __str__(self):
        return f"d({self.i},{self.j})"


@dataclass(frozen=True)
class Word:
    letters: Tuple[int, ...]

    def __str__(self):
        return format_word(self.letters)


@dataclass(frozen=True)
class Group:
    expr: "Sum"

    def __str__(self):
        return f"({self.expr})"


Factor = Union[Trace, Delta, Word, Group]


@dataclass(frozen=True)
class Term:
    coefficient: Fraction
    factors: Tuple[Factor, ...]


@dataclass(frozen=True)
class Sum:
    terms: Tuple[Term, ...]

    def __str__(self):
        return format_expr(self)


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_term(term: Term, magnitude: Fraction) -> str:
    body = " ".join(str(f) for f in term.factors)
    if not body:
        return _fmt_rational(magnitude)
    if magnitude == 1:
        return body
    return f"{_fmt_rational(magnitude)} * {body}"


def format_expr(expr: Sum) -> str:
    out = []
    for idx, term in enumerate(expr.terms):
        neg = term.coefficient < 0
        text = _fmt_term(term, abs(term.coefficient))
        if idx == 0:
            out.append(("-" if neg else "") + text)
        else:
            out.append((" - " if neg else " + ") + text)
    return "".join(out) or "0"


# -- tokenizer ----------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<tr>tr\()|(?P<delta>d\()|(?P<letter>a\d+)|(?P<num>\d+)"
    r"|(?P<op>[-+*/(),])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            if "\n" in chunk:
                line += chunk.count("\n")
                line_start = pos + chunk.rindex("\n") + 1
        else:
            tokens.append(Token(kind if kind != "op" else m.group(), m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise ExpressionSyntaxError(message, tok.line, tok.column)

    def eat(self, kind: str) -> Token:
        if self.tok.kind != kind:
            found = self.tok.text or "end of input"
            self.fail(f"expected {kind!r}, found {found!r}")
        tok = self.tok
        self.pos += 1
        return tok

    def parse(self) -> Sum:
        expr = self.expr()
        if self.tok.kind != "end":
            self.fail(f"unexpected {self.tok.text!r}")
        return expr

    def expr(self) -> Sum:
        sign = 1
        if self.tok.kind in ("+", "-"):
            sign = -1 if self.eat(self.tok.kind).kind == "-" else 1
        terms = [self.term(sign)]
        while self.tok.kind in ("+", "-"):
            sign = -1 if self.eat(self.tok.kind).kind == "-" else 1
            terms.append(self.term(sign))
        return Sum(tuple(terms))

    def term(self, sign: int) -> Term:
        coef = Fraction(1)
        if self.tok.kind == "num":
            coef = self.rational()
            if self.tok.kind != "*":
                if self._starts_factor():
                    self.fail("expected '*' between a number and a factor")
                return Term(sign * coef, ())
            self.eat("*")
        factors = []
        while self._starts_factor():
            factors.append(self.factor())
        if not factors:
            found = self.tok.text or "end of input"
            self.fail(f"expected a factor, found {found!r}")
        return Term(sign * coef, tuple(factors))

    def _starts_factor(self) -> bool:
        return self.tok.kind in ("tr", "delta", "letter", "(")

    def rational(self) -> Fraction:
        num = int(self.eat("num").text)
        if self.tok.kind == "/":
            self.eat("/")
            den_tok = self.eat("num")
            den = int(den_tok.text)
            if den == 0:
                self.fail("zero denominator", den_tok)
            return Fraction(num, den)
        return Fraction(num)

    def letters(self) -> Tuple[int, ...]:
        out = []
        while self.tok.kind == "letter":
            tok = self.eat("letter")
            letter = int(tok.text[1:])
            if letter == 0:
                self.fail("letter a0 is reserved", tok)
            out.append(letter)
        return tuple(out)

    def factor(self) -> Factor:
        kind = self.tok.kind
        if kind == "tr":
            self.eat("tr")
            word = self.letters()
            self.eat(")")
            return Trace(word)
        if kind == "delta":
            self.eat("delta")
            i = int(self.eat("num").text)
            self.eat(",")
            j = int(self.eat("num").text)
            self.eat(")")
            if i == 0 or j == 0:
                self.fail("index 0 is reserved")
            return Delta(i, j)
        if kind == "letter":
            return Word(self.letters())
        self.eat("(")
        inner = self.expr()
        self.eat(")")
        return Group(inner)


# -- expansion ----------------------------------------------------------------

@dataclass(frozen=True)
class Monomial:
    """``coefficient * deltas * traces * open`` with ``open`` a word or ``None``."""

    coefficient: Fraction
    deltas: Tuple[Tuple[int, int], ...] = ()
    traces: Tuple[Tuple[int, ...], ...] = ()
    open: Optional[Tuple[int, ...]] = None

    def letter_counts(self) -> Counter:
        counts: Counter = Counter()
        for i, j in self.deltas:
            counts[i] += 1
            counts[j] += 1
        for t in self.traces:
            counts.update(t)
        counts.update(self.open or ())
        return counts

    def times(self, other: "Monomial") -> "Monomial":
        if self.open is None:
            open_ = other.open
        elif other.open is None:
            open_ = self.open
        else:
            open_ = self.open + other.open
        return Monomial(
            self.coefficient * other.coefficient,
            self.deltas + other.deltas,
            self.traces + other.traces,
            open_,
        )


def expand(expr: Sum) -> List[Monomial]:
    """Distribute products over sums; monomials keep the order of open words."""
    out: List[Monomial] = []
    for term in expr.terms:
        partial = [Monomial(term.coefficient)]
        for f in term.factors:
            if isinstance(f, Group):
                options = expand(f.expr)
            elif isinstance(f, Trace):
                options = [Monomial(Fraction(1), traces=(f.word,))]
            elif isinstance(f, Delta):
                options = [Monomial(Fraction(1), deltas=((f.i, f.j),))]
            else:
                options = [Monomial(Fraction(1), open=f.letters)]
            partial = [p.times(o) for p in partial for o in options]
        out.extend(partial)
    return out


def check_multiplicity(monomials: List[Monomial]) -> None:
    for mono in monomials:
        for letter, count in mono.letter_counts().items():
            if count > 2:
                raise MultiplicityError(f"letter a{letter} occurs {count} times in one product")


def parse(text: str) -> Sum:
    """Parse ``text`` and check that no product repeats a letter three times."""
    expr = _Parser(text).parse()
    check_multiplicity(expand(expr))
    return expr
