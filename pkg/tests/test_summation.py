import json
from math import factorial

import pytest

from dirac_chords.chords import ChordDiagram, cycle_stats, enumerate_diagrams, partial_matchings
from dirac_chords.errors import NoFreeVertexError, RangeError
from dirac_chords.summation import (
    compositions,
    segment_census,
    sum_all,
    sum_k_chords,
    sum_one_chord,
)

from conftest import D1, D2, D3


def random_d0(rng, m, max_bases=3):
    """A diagram with exactly ``m`` missing chords on random bases."""
    while True:
        bases = [2 * rng.randint(1, 4) for _ in range(rng.randint(1, max_bases))]
        N = sum(bases) // 2
        if N >= m:
            break
    verts = list(range(1, 2 * N + 1))
    rng.shuffle(verts)
    chords = [(verts[2 * t], verts[2 * t + 1]) for t in range(N - m)]
    return ChordDiagram.build(bases, chords)


def test_one_chord_small():
    D = ChordDiagram.build([4], [(1, 3)])
    r = sum_one_chord(D)
    assert r.m == 1
    assert r.lhs == -2 * (-2) ** cycle_stats(D).s
    assert r.count == 1


def test_one_chord_worked_diagrams():
    for D in (D2, D3):
        r = sum_one_chord(D)
        assert r.equal
        assert r.count == len(D.free_vertices()) * (len(D.free_vertices()) - 1) // 2


def test_one_chord_two_missing():
    # four free vertices on one 3-cycle, then on two 3-cycles
    assert sum_one_chord(D3).lhs == -6 * (-2) ** cycle_stats(D3).s
    split = ChordDiagram.build([6], [(1, 4)])
    assert sum_one_chord(split).lhs == -6 * (-2) ** cycle_stats(split).s


def test_no_free_vertex():
    with pytest.raises(NoFreeVertexError):
        sum_one_chord(D1)


def test_k_range():
    with pytest.raises(RangeError):
        sum_k_chords(D3, 3)
    with pytest.raises(RangeError):
        sum_k_chords(D3, 0)


def test_k_chords_random(rng):
    for _ in range(40):
        m = rng.randint(1, 5)
        D0 = random_d0(rng, m)
        for k in range(1, m + 1):
            assert sum_k_chords(D0, k).equal


def test_completion_value():
    for m in range(1, 5):
        D0 = ChordDiagram.build([2 * m])
        r = sum_k_chords(D0, m)
        assert r.rhs == (-1) ** m * factorial(m + 1) * 4


def test_iterated_single_sums(rng):
    # sum over ordered chord additions divided by k! is the direct sum
    for _ in range(10):
        m = rng.randint(2, 4)
        D0 = random_d0(rng, m, max_bases=2)
        k = rng.randint(1, m)

        def ordered(D, left):
            if not left:
                return (-2) ** cycle_stats(D).s
            return sum(ordered(D.with_chords([c]), left - 1) for (c,) in partial_matchings(D.free_vertices(), 1))

        assert ordered(D0, k) == factorial(k) * sum_k_chords(D0, k).lhs


def test_partition_independence(rng):
    by_m = {}
    for _ in range(60):
        m = rng.randint(1, 5)
        D0 = random_d0(rng, m)
        r = sum_one_chord(D0)
        ratio = r.lhs // (-2) ** cycle_stats(D0).s
        by_m.setdefault(m, set()).add(ratio)
    for m, ratios in by_m.items():
        assert ratios == {-m * (m + 1)}


def test_case_census():
    for l in range(1, 6):
        census = segment_census(ChordDiagram.build([2 * l]))
        # odd segments raise s by one, even segments keep it
        assert census[+1] == l * l
        assert census[0] == l * (l - 1)


def test_sum_all_examples():
    assert sum_all((1,)).lhs == -8
    assert sum_all((2,)).lhs == 24
    assert sum_all((2,)).count == 3


def test_sum_all_single_base():
    for N in range(1, 7):
        r = sum_all((N,))
        assert r.equal and r.matches_stated
        assert r.lhs == 4 * (-1) ** N * factorial(N + 1)


def test_sum_all_compositions():
    for N in range(1, 6):
        for n in compositions(N):
            r = sum_all(n)
            assert r.equal
            assert r.rhs == (-1) ** N * factorial(N + 1) * (-2) ** (2 * len(n))


def test_sum_all_guard():
    with pytest.raises(RangeError):
        sum_all(())
    with pytest.raises(RangeError):
        sum_all((0, 2))


def test_report_json():
    data = json.loads(sum_all((2,)).to_json())
    assert data["lhs"] == "24" and data["rhs"] == "24"
    assert data["count"] == 3 and data["equal"] is True
    assert set(data) >= {"n", "k", "lhs", "rhs", "count", "equal", "ms"}


def test_compositions():
    assert list(compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert len(list(compositions(7))) == 64


def test_enumeration_agrees_with_histogram():
    n = (2, 1)
    direct = sum((-2) ** cycle_stats(D).s for D in enumerate_diagrams(n, 3))
    assert direct == sum_all(n).lhs
