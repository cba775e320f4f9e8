"""QED numerators of single fermion loops as chord-diagram sums.

A fermion loop ``v1 e1 v2 e2 ...`` labels the vertices of one base cycle in
order; photon edges become fixed chords between vertex slots and the sum runs
over every way of pairing up the fermion-edge slots.  Each diagram carries
the weight ``(-1)^k / 2 * (-2)^(c2 + c3)``, a product of cycle polynomials
over the added chords, and its cycle word, whose letters stand for the
formal slots ``X^i``.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .chords import ChordDiagram, cycle_stats, partial_matchings
from .contraction import CycleWord, cycle_word
from .errors import MalformedGraphError, RangeError
from .polynomials import MultiPoly, UGraph, cycle_poly, kirchhoff
from .words import trace_recursive


@dataclass(frozen=True)
class QEDGraph:
    """A fermion loop with photon pairs and the slot-to-edge map.

    ``fermion_cycle`` alternates vertex and edge labels, starting with a
    vertex; diagram vertex ``p`` is position ``p - 1`` of that list.
    """

    fermion_cycle: Tuple[str, ...]
    photon_pairs: Tuple[Tuple[str, str], ...]
    external: Tuple[str, str]
    edge_map: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        cyc = tuple(str(x) for x in self.fermion_cycle)
        if not cyc or len(cyc) % 2:
            raise MalformedGraphError("fermion cycle must alternate vertices and edges")
        if len(set(cyc)) != len(cyc):
            raise MalformedGraphError("fermion cycle labels must be distinct")
        pairs = tuple(tuple(str(x) for x in p) for p in self.photon_pairs)
        ext = tuple(str(x) for x in self.external)
        object.__setattr__(self, "fermion_cycle", cyc)
        object.__setattr__(self, "photon_pairs", pairs)
        object.__setattr__(self, "external", ext)
        object.__setattr__(self, "edge_map", {int(k): int(v) for k, v in dict(self.edge_map).items()})

    @property
    def n(self) -> int:
        return len(self.fermion_cycle) // 2

    @property
    def vertex_labels(self) -> Tuple[str, ...]:
        return self.fermion_cycle[0::2]

    @property
    def edge_labels(self) -> Tuple[str, ...]:
        return self.fermion_cycle[1::2]

    def slot(self, label: str) -> int:
        return self.fermion_cycle.index(label) + 1

    def to_dict(self) -> dict:
        return {
            "fermionCycle": list(self.fermion_cycle),
            "photonPairs": [list(p) for p in self.photon_pairs],
            "external": list(self.external),
            "edgeMap": {str(k): v for k, v in sorted(self.edge_map.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Mapping) -> "QEDGraph":
        return cls(
            tuple(data["fermionCycle"]),
            tuple(tuple(p) for p in data["photonPairs"]),
            tuple(data["external"]),
            {int(k): int(v) for k, v in data.get("edgeMap", {}).items()},
        )

    @classmethod
    def from_json(cls, text: str) -> "QEDGraph":
        return cls.from_dict(json.loads(text))


def base_diagram(Q: QEDGraph) -> ChordDiagram:
    """The loop as one base with a fixed chord per photon edge."""
    vertices = set(Q.vertex_labels)
    used: Dict[str, int] = {}
    for pair in Q.photon_pairs:
        if len(pair) != 2 or pair[0] == pair[1]:
            raise MalformedGraphError(f"photon pair {pair} must join two distinct vertices")
        for x in pair:
            if x not in vertices:
                raise MalformedGraphError(f"photon pair {pair} touches {x!r}, which is not a loop vertex")
            used[x] = used.get(x, 0) + 1
    missing = sorted(vertices - set(used))
    if missing:
        raise MalformedGraphError(f"vertices {missing} carry no photon")
    doubled = sorted(x for x, c in used.items() if c > 1)
    if doubled:
        raise MalformedGraphError(f"vertices {doubled} carry more than one photon")
    if set(Q.external) not in [set(p) for p in Q.photon_pairs]:
        raise MalformedGraphError(f"external pair {Q.external} is not among the photon pairs")
    chords = [(Q.slot(a), Q.slot(b)) for a, b in Q.photon_pairs]
    return ChordDiagram.build([2 * Q.n], chords)


@dataclass(frozen=True)
class IntegrandTerm:
    """One diagram's contribution; ``kappa_power`` is the power of psi below."""

    k: int
    coefficient: Fraction
    poly_factor: MultiPoly
    kappa_power: int
    residual: CycleWord
    diagram: ChordDiagram
    added: Tuple[Tuple[int, int], ...]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "coefficient": str(self.coefficient),
            "poly": self.poly_factor.to_text(),
            "kappaPower": self.kappa_power,
            "chords": [list(c) for c in self.added],
            "residual": str(self.residual.content) if self.residual.cycles else "1",
        }


class _CycleCache:
    def __init__(self, G: UGraph, edge_map: Mapping[int, int]):
        self.G = G
        self.edge_map = edge_map
        self._memo: Dict[Tuple[int, int], MultiPoly] = {}

    def edges(self, u: int, v: int) -> Tuple[int, int]:
        try:
            a, b = self.edge_map[u], self.edge_map[v]
        except KeyError as exc:
            raise MalformedGraphError(f"edge map does not cover diagram vertex {exc.args[0]}") from None
        return (a, b) if a <= b else (b, a)

    def __call__(self, u: int, v: int) -> MultiPoly:
        key = self.edges(u, v)
        if key not in self._memo:
            self._memo[key] = cycle_poly(self.G, *key)
        return self._memo[key]


def assemble(Q: QEDGraph, G: UGraph) -> List[IntegrandTerm]:
    """All terms ``k = n/2 + 1 .. n`` of the numerator, in enumeration order."""
    D0 = base_diagram(Q)
    cp = _CycleCache(G, Q.edge_map)
    free = D0.free_vertices()
    n = Q.n
    terms = []
    for extra in range(1, len(free) // 2 + 1):
        for added in partial_matchings(free, extra):
            D = D0.with_chords(added)
            stats = cycle_stats(D)
            poly = MultiPoly.const(1)
            for u, v in added:
                poly = poly * cp(u, v)
            coef = Fraction((-1) ** D.k, 2) * (-2) ** stats.s
            terms.append(IntegrandTerm(D.k, coef, poly, 2 * n - D.k - 1, cycle_word(D), D, tuple(added)))
    return terms


def expand_trace(word) -> List[Tuple[Fraction, Tuple[Tuple[int, int], ...]]]:
    """``tr(word)`` over signed pairings, e.g. ``tr(a1 a2) -> [(4, ((1, 2),))]``."""
    out = []
    for (pairs, _), coef in trace_recursive(tuple(word)).items():
        out.append((Fraction(coef), pairs))
    return sorted(out, key=lambda t: t[1])


def scalarize(term: IntegrandTerm) -> List[Tuple[Fraction, MultiPoly, Tuple[Tuple[int, int], ...]]]:
    """Expand the residual cycle word into pairings ``X^i . X^j`` of slots.

    The cycle word is central, so it equals a quarter of its trace.
    """
    merged: Dict[tuple, Fraction] = defaultdict(Fraction)
    for word, coef in term.residual.content.items():
        for c, pairs in expand_trace(word):
            merged[pairs] += term.coefficient * Fraction(coef) * c / 4
    return [(c, term.poly_factor, pairs) for pairs, c in sorted(merged.items()) if c]


def conjecture_lhs(
    n: Sequence[int],
    G: UGraph,
    edge_map: Mapping[int, int],
    cp: Optional[Callable[[int, int], MultiPoly]] = None,
) -> MultiPoly:
    """``sum over perfect diagrams D of (-2)^s(D) * prod over chords cp{u}{v}``.

    ``cp`` overrides the cycle polynomial of a chord ``(u, v)``; by default it
    is ``cycle_poly`` on the edges that ``edge_map`` assigns to ``u`` and ``v``.
    """
    n = tuple(int(x) for x in n)
    if not n or any(x < 1 for x in n):
        raise RangeError(f"base half-sizes must be positive, got {n}")
    D0 = ChordDiagram.build([2 * x for x in n])
    verts = range(1, D0.n_vertices + 1)
    if cp is None:
        missing = [v for v in verts if v not in edge_map]
        if missing:
            raise MalformedGraphError(f"edge map does not cover diagram vertices {missing}")
        cache = _CycleCache(G, edge_map)
        key_of, value_of = cache.edges, (lambda key: cycle_poly(G, *key))
    else:
        key_of, value_of = (lambda u, v: (u, v)), (lambda key: MultiPoly.coerce(cp(*key)))
    # diagrams sharing the same multiset of cycle polynomials are merged first
    weights: Dict[tuple, int] = defaultdict(int)
    for chords in partial_matchings(list(verts), sum(n)):
        D = D0.with_chords(chords)
        key = tuple(sorted(key_of(u, v) for u, v in chords))
        weights[key] += (-2) ** cycle_stats(D).s
    values: Dict[tuple, MultiPoly] = {}
    total = MultiPoly()
    for key, w in weights.items():
        if not w:
            continue
        prod = MultiPoly.const(w)
        for pair in key:
            if pair not in values:
                values[pair] = value_of(pair)
            prod = prod * values[pair]
        total = total + prod
    return total


def base_edge_products(n: Sequence[int], cp: Callable[[int, int], MultiPoly]) -> Tuple[MultiPoly, MultiPoly]:
    """Products of ``cp`` over the colour-1 and colour-2 base edges."""
    from .chords import coloring

    D0 = ChordDiagram.build([2 * x for x in n])
    colours = coloring(D0).edge_colours(D0)
    prods = {1: MultiPoly.const(1), 2: MultiPoly.const(1)}
    for u, v, colour in colours:
        if colour in prods:
            prods[colour] = prods[colour] * MultiPoly.coerce(cp(u, v))
    return prods[1], prods[2]


def stated_scale(n: Sequence[int]) -> int:
    """``(-2)^l``, the prefactor in front of the conjectured right-hand side."""
    return (-2) ** len(tuple(n))


def collapse_scale(n: Sequence[int]) -> int:
    """``(-1)^N 4^l / 2``: the prefactor the ``cp = 1`` collapse forces on the psi-free part."""
    n = tuple(n)
    return (-1) ** sum(n) * 4 ** len(n) // 2


def leading_stratum(n: Sequence[int], cp: Callable[[int, int], MultiPoly], scale: Optional[int] = None) -> MultiPoly:
    """``scale (N+1)! (prod_E1 cp + prod_E2 cp)``, by default with ``scale = (-2)^l``."""
    from math import factorial

    n = tuple(n)
    if scale is None:
        scale = stated_scale(n)
    p1, p2 = base_edge_products(n, cp)
    return (p1 + p2) * (scale * factorial(sum(n) + 1))


def stratum_residual(
    n: Sequence[int], G: UGraph, edge_map: Mapping[int, int], scale: Optional[int] = None
) -> Tuple[MultiPoly, Optional[MultiPoly]]:
    """Left-hand side minus its leading stratum, and its quotient by psi if exact."""
    from .polynomials import exact_divide

    cache = _CycleCache(G, edge_map)
    lhs = conjecture_lhs(n, G, edge_map)
    residual = lhs - leading_stratum(n, cache, scale)
    return residual, exact_divide(residual, kirchhoff(G))
