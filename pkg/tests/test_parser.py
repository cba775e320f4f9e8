import random
from fractions import Fraction

import pytest

from dirac_chords.errors import ExpressionSyntaxError, MultiplicityError
from dirac_chords.parser import Delta, Group, Sum, Term, Trace, Word, expand, parse

from conftest import SEED


class Letters:
    def __init__(self):
        self.next = 1

    def take(self, n):
        out = tuple(range(self.next, self.next + n))
        self.next += n
        return out


def random_sum(rng, letters, depth=0):
    terms = []
    for _ in range(rng.randint(1, 3)):
        coef = Fraction(rng.randint(1, 9), rng.choice([1, 1, 2, 3])) * rng.choice([1, -1])
        factors = []
        for _ in range(rng.randint(0 if depth else 1, 3)):
            kind = rng.choice(["tr", "d", "w", "g"] if depth < 2 else ["tr", "d", "w"])
            if kind == "w" and factors and isinstance(factors[-1], Word):
                kind = "tr"
            if kind == "tr":
                factors.append(Trace(letters.take(rng.choice([0, 2, 4]))))
            elif kind == "d":
                factors.append(Delta(*letters.take(2)))
            elif kind == "w":
                factors.append(Word(letters.take(rng.randint(1, 3))))
            else:
                factors.append(Group(random_sum(rng, letters, depth + 1)))
        terms.append(Term(coef, tuple(factors)))
    return Sum(tuple(terms))


def corpus(count=150):
    rng = random.Random(SEED)
    return [random_sum(rng, Letters()) for _ in range(count)]


def test_round_trip_corpus():
    exprs = corpus()
    assert len(exprs) >= 100
    for ast in exprs:
        text = str(ast)
        assert parse(text) == ast, text


def test_worked_example_input():
    ast = parse("d(3,7) d(4,8) tr(a1 a2 a3 a4 a5 a6 a7 a8)")
    (term,) = ast.terms
    assert term.factors == (Delta(3, 7), Delta(4, 8), Trace(tuple(range(1, 9))))


def test_multiplicity():
    with pytest.raises(MultiplicityError):
        parse("tr(a1 a1 a1)")
    with pytest.raises(MultiplicityError):
        parse("d(1,2) tr(a1 a2 a1 a3)")
    # separate monomials may reuse letters
    parse("tr(a1 a1) + tr(a1 a1)")


def test_half_sum_is_delta():
    monos = expand(parse("1/2 * (a1 a2 + a2 a1)"))
    assert [(m.coefficient, m.open) for m in monos] == [(Fraction(1, 2), (1, 2)), (Fraction(1, 2), (2, 1))]


def test_constants():
    assert str(parse("3")) == "3"
    assert str(parse("-2/4 * a1")) == "-1/2 * a1"
    assert str(parse("tr()")) == "tr()"


@pytest.mark.parametrize("text, column", [
    ("tr(a1 a2", 9),
    ("a1 + * a2", 6),
    ("2 a1", 3),
    ("d(1 2)", 5),
    ("a1 $ a2", 4),
    ("1/0 * a1", 3),
    ("a0 a1", 1),
])
def test_syntax_errors(text, column):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse(text)
    assert info.value.line == 1
    assert info.value.column == column


def test_error_line_numbers():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse("tr(a1 a2)\n  + @")
    assert (info.value.line, info.value.column) == (2, 5)


def test_expand_distributes():
    monos = expand(parse("(a1 + 2 * a2) (a3 - a4)"))
    assert [(m.coefficient, m.open) for m in monos] == [
        (1, (1, 3)), (-1, (1, 4)), (2, (2, 3)), (-2, (2, 4)),
    ]
