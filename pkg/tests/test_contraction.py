import random
from fractions import Fraction

import pytest

from dirac_chords.chords import ChordDiagram, from_words
from dirac_chords.contraction import (
    contract,
    contract_multi,
    contract_open,
    contract_trace,
    cycle_word,
    format_contraction,
    to_delta,
)
from dirac_chords.deltas import DeltaPolynomial
from dirac_chords.errors import EvenWordError, OddWordError
from dirac_chords.evaluate import compare
from dirac_chords.generators import random_fully_paired, random_paired_word, random_trace_product
from dirac_chords.oracle import expression, normal_form
from dirac_chords.words import WordSum, canonical_form, star_shift, sym, trace_symmetric

from conftest import D3

LONG = (1, 2, 3, 4, 1, 6, 2, 8, 9, 10, 9, 3, 10, 14, 4, 8, 6, 14)
quarter = Fraction(1, 4)


def agrees(result, e) -> bool:
    return compare(to_delta(result), normal_form(e)) is not None


def test_cycle_word_of_worked_diagram():
    w = cycle_word(D3)
    expected = WordSum({(1, 2, 6, 5): quarter, (5, 6, 2, 1): quarter, (2, 6, 5, 1): quarter, (1, 5, 6, 2): quarter})
    assert canonical_form(w.content) == canonical_form(expected)
    assert (w.k, w.c2, w.c3) == (2, 2, 1)


def test_cycle_word_with_one_chord():
    D = ChordDiagram.build([6], [(3, 6)])
    expected = WordSum({(2, 1): 1, (1, 2): 1}) * WordSum({(4, 5): 1, (5, 4): 1}) * quarter
    content = cycle_word(D).content
    assert compare(to_delta(content), to_delta(expected)) is not None


def test_cycle_word_of_chordless_base():
    w = (1, 2, 3, 4, 5, 6)
    assert canonical_form(cycle_word(from_words([w])).content) == canonical_form(trace_symmetric(w) * quarter)


def test_fully_chorded_cycle_word_is_one():
    D = ChordDiagram.build([4], [(1, 3), (2, 4)])
    assert cycle_word(D).content == WordSum.scalar(1)


def test_worked_trace():
    scalar, cw = contract_trace((1, 2, 3, 4, 5, 6, 3, 4))
    assert scalar == -32
    assert cw.cycles and len(cw.cycles[0]) == 4
    assert format_contraction(contract([(1, 2, 3, 4, 5, 6, 3, 4)])) == "-8 * tr(a1 a2 a6 a5)"


def test_long_trace():
    scalar, cw = contract_trace(LONG)
    assert (cw.k, cw.c2, cw.c3) == (9, 4, 0)
    assert scalar == (-2) ** 13
    assert cw.content == WordSum.scalar(1)


def test_duplicate_free_trace():
    scalar, cw = contract_trace((1, 2, 3, 4))
    assert scalar == 4 == (-2) ** (0 + 1 + 1)
    assert canonical_form(cw.content * scalar) == canonical_form(trace_symmetric((1, 2, 3, 4)))


def test_odd_trace_rejected():
    with pytest.raises(OddWordError):
        contract_trace((1, 2, 3))


def test_two_trace_example():
    # d(1,5) d(6,12) d(8,10) d(9,11) d(14,15) absorbed into tr(a1..a8) tr(a9..a16)
    first = (1, 2, 3, 4, 1, 6, 7, 8)
    second = (9, 8, 9, 6, 13, 14, 14, 16)
    D = from_words([first, second])
    assert D.chords == ((1, 5), (6, 12), (8, 10), (9, 11), (14, 15))
    result = contract_multi([first, second])
    assert len(result.summands) == 2
    u1, u2 = (3, 4, 16, 13, 7, 2), (3, 4, 7, 16, 13, 2)
    expected = (trace_symmetric(u1) + trace_symmetric(u2)) * -64
    assert compare(to_delta(result), to_delta(expected)) is not None
    assert agrees(result, expression(traces=[first, second]))


def test_single_trace_reduces_to_contract_trace():
    w = (1, 2, 3, 1, 4, 5)
    (scalar, cw), = contract_multi([w, ()]).summands
    ref_scalar, ref_cw = contract_trace(w)
    assert scalar == 4 * ref_scalar
    assert cw.content == ref_cw.content


def test_independent_traces_multiply():
    a, b = (1, 2, 3, 4), (5, 6)
    result = contract_multi([a, b])
    assert to_delta(result) == normal_form(expression(traces=[a])) * normal_form(expression(traces=[b]))


def test_open_examples():
    assert to_delta(contract_open((2, 3, 4, 5, 6, 3, 4))) == DeltaPolynomial.word((2, 6, 5), -8)
    assert to_delta(contract_open((1,))) == DeltaPolynomial.word((1,))
    assert to_delta(contract_open((2, 1, 2))) == DeltaPolynomial.word((1,), -2)


def test_even_open_rejected():
    with pytest.raises(EvenWordError):
        contract_open((1, 2))


def test_to_delta_examples():
    worked = to_delta(contract([(1, 2, 3, 4, 5, 6, 3, 4)]))
    assert worked == DeltaPolynomial({
        (((1, 2), (5, 6)), ()): -32,
        (((1, 6), (2, 5)), ()): 32,
        (((1, 5), (2, 6)), ()): -32,
    })
    assert to_delta(Fraction(5)) == DeltaPolynomial.scalar(5)


def test_to_delta_is_idempotent(rng):
    for _ in range(30):
        once = to_delta(contract([random_paired_word(rng, 8)]))
        assert to_delta(once) == once


def test_fully_paired_is_power_of_two(rng):
    for _ in range(40):
        w = random_fully_paired(rng, 2 * rng.randint(1, 6))
        result = to_delta(contract([w]))
        assert result.is_scalar()
        value = abs(result.scalar_value())
        assert value.denominator == 1 and value.numerator & (value.numerator - 1) == 0
        assert result == normal_form(expression(traces=[w]))


def test_representative_independence(rng):
    for _ in range(40):
        D = from_words([random_paired_word(rng, 2 * rng.randint(2, 6))])
        cw = cycle_word(D)
        # rebuild with random representatives of every 3-cycle
        plain, starred = WordSum.scalar(1), WordSum.scalar(1)
        for u in cw.cycles:
            shift = 2 * rng.randint(0, len(u))
            v = u[shift % len(u):] + u[:shift % len(u)] if u else u
            if rng.random() < 0.5:
                v = v[::-1]
            a, b = v, star_shift(v) if v else v
            if rng.random() < 0.5:
                a, b = b, a
            plain = plain * sym(a)
            starred = starred * sym(b)
        rebuilt = (plain + starred) * Fraction(1, 2)
        assert compare(to_delta(rebuilt), to_delta(cw.content)) is not None


def test_reference_colouring_is_irrelevant(rng):
    for _ in range(20):
        words = random_trace_product(rng, (4, 4, 2))
        words = [w for w in words if w]
        a = to_delta(contract_multi(words, reference=0))
        b = to_delta(contract_multi(words, reference=len(words) - 1))
        assert compare(a, b) is not None


def test_random_agreement(rng):
    for _ in range(60):
        kind = rng.randrange(3)
        if kind == 0:
            w = random_paired_word(rng, 2 * rng.randint(1, 5))
            assert agrees(contract([w]), expression(traces=[w]))
        elif kind == 1:
            words = random_trace_product(rng, rng.choice([(2, 4), (4, 4), (2, 2, 4)]))
            assert agrees(contract(words), expression(traces=words))
        else:
            w = random_paired_word(rng, 2 * rng.randint(0, 4) + 1)
            assert agrees(contract_open(w), expression(open=w))


def test_engine_is_deterministic():
    w = random_paired_word(random.Random(3), 10)
    assert to_delta(contract([w])) == to_delta(contract([w]))
