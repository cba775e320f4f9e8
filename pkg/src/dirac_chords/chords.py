"""Generalised chord diagrams and their Tait colourings.

Vertices are numbered ``1..2N`` globally; base ``b`` occupies one consecutive
block and its edges join neighbours in the block, wrapping around.  In the
canonical colouring the edge leaving the first vertex of a block has colour
1 and colours alternate along the block; a per-base flip swaps 1 and 2.
Chords always carry colour 0.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from . import kernels
from .errors import (
    NoFreeVertexError,
    OccupiedVertexError,
    OddWordError,
    RangeError,
)
from .words import check_word


@dataclass(frozen=True)
class ChordDiagram:
    bases: tuple
    chords: tuple
    labels: tuple

    def __post_init__(self):
        bases = tuple(int(m) for m in self.bases)
        for m in bases:
            if m <= 0 or m % 2:
                raise ValueError(f"base sizes must be positive and even, got {m}")
        total = sum(bases)
        seen = set()
        chords = []
        for u, v in self.chords:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"chord ({u},{v}) is a loop")
            for x in (u, v):
                if not 1 <= x <= total:
                    raise ValueError(f"vertex {x} out of range 1..{total}")
                if x in seen:
                    raise OccupiedVertexError(f"vertex {x} carries two chords")
                seen.add(x)
            chords.append((min(u, v), max(u, v)))
        chords.sort()
        if self.labels is None or len(self.labels) == 0 and total:
            labels = list(range(1, total + 1))
            for u, v in chords:
                labels[v - 1] = labels[u - 1]
        else:
            labels = [int(x) for x in self.labels]
            if len(labels) != total:
                raise ValueError(f"expected {total} labels, got {len(labels)}")
        # labels agree exactly along chords
        by_letter: dict = {}
        for v, letter in enumerate(labels, start=1):
            by_letter.setdefault(letter, []).append(v)
        pairs = {tuple(vs) for vs in by_letter.values() if len(vs) == 2}
        if any(len(vs) > 2 for vs in by_letter.values()) or pairs != set(chords):
            raise ValueError("labels must coincide exactly on chord endpoints")
        object.__setattr__(self, "bases", bases)
        object.__setattr__(self, "chords", tuple(chords))
        object.__setattr__(self, "labels", tuple(labels))

    @classmethod
    def build(cls, bases, chords=(), labels=None) -> "ChordDiagram":
        return cls(tuple(bases), tuple(tuple(c) for c in chords), labels)

    @property
    def n_vertices(self) -> int:
        return sum(self.bases)

    @property
    def order(self) -> int:
        return self.n_vertices // 2

    @property
    def k(self) -> int:
        return len(self.chords)

    @property
    def ell(self) -> int:
        return len(self.bases)

    def partner(self) -> dict:
        out = {}
        for u, v in self.chords:
            out[u] = v
            out[v] = u
        return out

    def partner_array(self) -> list:
        """0-based partner table with ``-1`` on free vertices."""
        arr = [-1] * self.n_vertices
        for u, v in self.chords:
            arr[u - 1] = v - 1
            arr[v - 1] = u - 1
        return arr

    def free_vertices(self) -> list:
        taken = self.partner()
        return [v for v in range(1, self.n_vertices + 1) if v not in taken]

    def base_of(self, v: int) -> int:
        start = 0
        for b, m in enumerate(self.bases):
            if v <= start + m:
                return b
            start += m
        raise ValueError(f"vertex {v} out of range")

    def letter(self, v: int) -> int:
        return self.labels[v - 1]

    def with_chords(self, extra) -> "ChordDiagram":
        labels = list(self.labels)
        for u, v in extra:
            labels[max(u, v) - 1] = labels[min(u, v) - 1]
        return ChordDiagram(self.bases, self.chords + tuple(tuple(c) for c in extra), tuple(labels))

    def degree(self, v: int) -> int:
        return 3 if v in self.partner() else 2

    # -- serialisation ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "bases": list(self.bases),
            "chords": [list(c) for c in self.chords],
            "labels": {str(v): str(x) for v, x in enumerate(self.labels, start=1)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "ChordDiagram":
        bases = data["bases"]
        labels = None
        if data.get("labels"):
            total = sum(bases)
            raw = {int(v): int(x) for v, x in data["labels"].items()}
            labels = tuple(raw[v] for v in range(1, total + 1))
        return cls.build(bases, data.get("chords", ()), labels)

    @classmethod
    def from_json(cls, text: str) -> "ChordDiagram":
        return cls.from_dict(json.loads(text))


def from_words(words: Sequence) -> ChordDiagram:
    """Diagram of a product of traces: one base per word, chords on repeats."""
    words = [tuple(w) for w in words]
    flat = check_word([x for w in words for x in w])
    for w in words:
        if len(w) % 2:
            raise OddWordError(f"word of odd length {len(w)}")
    first: dict = {}
    chords = []
    for pos, letter in enumerate(flat, start=1):
        if letter in first:
            chords.append((first[letter], pos))
        else:
            first[letter] = pos
    return ChordDiagram.build([len(w) for w in words if w], chords, flat)


# -- colourings --------------------------------------------------------------

@dataclass(frozen=True)
class TaitColoring:
    flips: tuple

    def edge_colours(self, D: ChordDiagram) -> list:
        """``(u, v, colour)`` for every edge, base edges first."""
        out = []
        start = 1
        for b, m in enumerate(D.bases):
            for t in range(m):
                colour = 1 if t % 2 == 0 else 2
                if self.flips[b]:
                    colour = 3 - colour
                out.append((start + t, start + (t + 1) % m, colour))
            start += m
        out.extend((u, v, 0) for u, v in D.chords)
        return out

    def is_proper(self, D: ChordDiagram) -> bool:
        at: dict = {}
        for u, v, colour in self.edge_colours(D):
            for x in (u, v):
                at.setdefault(x, []).append(colour)
        return all(len(cs) == len(set(cs)) for cs in at.values())


def coloring(D: ChordDiagram, flips=None) -> TaitColoring:
    if flips is None:
        flips = (False,) * D.ell
    flips = tuple(bool(f) for f in flips)
    if len(flips) != D.ell:
        raise ValueError(f"need {D.ell} flips, got {len(flips)}")
    return TaitColoring(flips)


def relative_colorings(D: ChordDiagram, reference: int = 0) -> list:
    """The ``2^(l-1)`` colourings with base ``reference`` held canonical."""
    out = []
    for mask in range(1 << max(D.ell - 1, 0)):
        flips, bit = [], 0
        for b in range(D.ell):
            if b == reference:
                flips.append(False)
            else:
                flips.append(bool(mask >> bit & 1))
                bit += 1
        out.append(TaitColoring(tuple(flips)))
    return out


@dataclass(frozen=True)
class ColoredComponents:
    cycles01: tuple
    cycles02: tuple
    paths01: tuple
    paths02: tuple
    three_cycles: tuple


@dataclass(frozen=True)
class CycleStats:
    c2: int
    c3: int

    @property
    def s(self) -> int:
        return self.c2 + self.c3


def _neighbours(D: ChordDiagram, c: TaitColoring):
    nb1, nb2 = kernels.neighbour_tables(D.bases, c.flips)
    return [x + 1 for x in nb1], [x + 1 for x in nb2]


def components(D: ChordDiagram, c: Optional[TaitColoring] = None) -> ColoredComponents:
    c = c or coloring(D)
    nb1, nb2 = _neighbours(D, c)
    partner = D.partner()
    free = D.free_vertices()
    found = []
    for nb in (nb1, nb2):
        paths, cycles, seen = [], [], set()
        for v in free:
            if v in seen:
                continue
            path = [v]
            cur = v
            while True:
                nxt = nb[cur - 1]
                path.append(nxt)
                if nxt not in partner:
                    break
                cur = partner[nxt]
                path.append(cur)
            seen.update(path)
            paths.append(tuple(path))
        for v in range(1, D.n_vertices + 1):
            if v in seen:
                continue
            cyc, cur = [], v
            while True:
                nxt = nb[cur - 1]
                cyc += [cur, nxt]
                cur = partner[nxt]
                if cur == v:
                    break
            seen.update(cyc)
            cycles.append(tuple(cyc))
        found.append((paths, cycles))
    (p1, c1), (p2, c2) = found
    ends = []
    for paths in (p1, p2):
        end = {}
        for p in paths:
            end[p[0]] = p[-1]
            end[p[-1]] = p[0]
        ends.append(end)
    threes, seen = [], set()
    for v in free:
        if v in seen:
            continue
        cyc, cur = [], v
        while True:
            a = ends[0][cur]
            cyc += [cur, a]
            cur = ends[1][a]
            if cur == v:
                break
        seen.update(cyc)
        threes.append(tuple(cyc))
    return ColoredComponents(tuple(c1), tuple(c2), tuple(p1), tuple(p2), tuple(threes))


def cycle_stats(D: ChordDiagram, c: Optional[TaitColoring] = None) -> CycleStats:
    c = c or coloring(D)
    nb1, nb2 = kernels.neighbour_tables(D.bases, c.flips)
    c01, c02, c3 = kernels.cycle_counts(nb1, nb2, D.partner_array())
    return CycleStats(c01 + c02 + D.ell, c3)


def project(D: ChordDiagram, c: Optional[TaitColoring] = None) -> ChordDiagram:
    """Collapse two-coloured paths: the 3-cycles become chordless bases."""
    threes = components(D, c).three_cycles
    labels = tuple(D.letter(v) for cyc in threes for v in cyc)
    return ChordDiagram(tuple(len(cyc) for cyc in threes), (), labels)


# -- chord addition ----------------------------------------------------------

class CaseTag(enum.Enum):
    ADJACENT = ("1(a)", 2, -1)
    ONE_ODD = ("1(b)", 1, 0)
    EVEN = ("1(c)", 0, 0)
    ODD = ("1(d)", 0, 1)
    SEPARATE = ("2", 0, -1)

    @property
    def label(self) -> str:
        return self.value[0]

    @property
    def delta(self) -> tuple:
        return self.value[1], self.value[2]


def classify_chord(D: ChordDiagram, i: int, j: int, c: Optional[TaitColoring] = None) -> CaseTag:
    """Case of adding chord ``(i, j)`` from the segment lengths in its 3-cycle."""
    free = set(D.free_vertices())
    for x in (i, j):
        if x not in free:
            raise OccupiedVertexError(f"vertex {x} already carries a chord")
    if i == j:
        raise ValueError("a chord needs two distinct vertices")
    for cyc in components(D, c).three_cycles:
        if i in cyc and j in cyc:
            d1 = (cyc.index(j) - cyc.index(i)) % len(cyc)
            d2 = len(cyc) - d1
            lo, hi = sorted((d1, d2))
            if hi == 1:
                return CaseTag.ADJACENT
            if lo % 2 == 0:
                return CaseTag.EVEN
            if lo == 1:
                return CaseTag.ONE_ODD
            return CaseTag.ODD
    return CaseTag.SEPARATE


def add_chord(D: ChordDiagram, i: int, j: int, c: Optional[TaitColoring] = None):
    tag = classify_chord(D, i, j, c)
    return D.with_chords([(i, j)]), tag


# -- enumeration -------------------------------------------------------------

def partial_matchings(vertices: Sequence[int], k: int) -> Iterator[tuple]:
    """All sets of ``k`` disjoint pairs from ``vertices``, lexicographically."""
    vertices = tuple(vertices)
    if k == 0:
        yield ()
        return
    if len(vertices) < 2 * k:
        return
    v, rest = vertices[0], vertices[1:]
    for idx, w in enumerate(rest):
        remaining = rest[:idx] + rest[idx + 1:]
        for tail in partial_matchings(remaining, k - 1):
            yield ((v, w),) + tail
    if len(rest) >= 2 * k:
        yield from partial_matchings(rest, k)


def enumerate_diagrams(n: Sequence[int], k: int, D0: Optional[ChordDiagram] = None) -> Iterator[ChordDiagram]:
    """Every diagram on bases ``2*n_i`` with ``k`` chords containing ``D0``."""
    n = tuple(n)
    if D0 is None:
        D0 = ChordDiagram.build([2 * x for x in n])
    elif D0.bases != tuple(2 * x for x in n):
        raise ValueError("D0 does not live on the requested bases")
    extra = k - D0.k
    if extra < 0 or k > sum(n):
        raise RangeError(f"cannot have {k} chords on order {sum(n)} with {D0.k} fixed")
    for chords in partial_matchings(D0.free_vertices(), extra):
        yield D0.with_chords(chords)


def count_completions(free: int, extra: int) -> int:
    """Number of ways to place ``extra`` disjoint chords on ``free`` vertices."""
    from math import comb, prod

    if 2 * extra > free:
        return 0
    return comb(free, 2 * extra) * prod(range(2 * extra - 1, 0, -2))


def s_histogram(D0: ChordDiagram, extra: int) -> dict:
    """``{s: count}`` over all completions of ``D0`` by ``extra`` chords."""
    if extra < 0 or 2 * extra > len(D0.free_vertices()):
        raise RangeError(f"cannot add {extra} chords to {len(D0.free_vertices())} free vertices")
    return dict(kernels.s_histogram(list(D0.bases), D0.partner_array(), extra))


def require_free(D: ChordDiagram) -> list:
    free = D.free_vertices()
    if not free:
        raise NoFreeVertexError("diagram has no free vertex")
    return free
