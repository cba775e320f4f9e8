"""Sparse integer polynomials in Schwinger variables and graph polynomials.

Variables are named ``a<e>`` after the edge index ``e`` (edges count from 1,
vertices from 0).  Monomials are sorted tuples of ``(variable, exponent)``
pairs; terms are ordered graded-lexicographically with ``a1 > a2 > ...``.

The graph matrix is ``[[L, E^T], [-E, 0]]`` with ``L = diag(a_e)`` and ``E``
the signed incidence matrix (tail +1, head -1) with the highest vertex row
deleted.  Its determinant is the Kirchhoff polynomial; Dodgson polynomials
are its minors.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .errors import (
    DisconnectedError,
    MalformedGraphError,
    ShapeError,
    UnknownEdgeError,
    ZeroDivisorError,
)

Monomial = Tuple[Tuple[int, int], ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for v, e in b:
        merged[v] = merged.get(v, 0) + e
    return tuple(sorted(merged.items()))


def _mono_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    exps = dict(a)
    for v, e in b:
        left = exps.get(v, 0) - e
        if left < 0:
            return None
        if left:
            exps[v] = left
        else:
            del exps[v]
    return tuple(sorted(exps.items()))


def _degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def grlex_key(m: Monomial) -> tuple:
    """Sort key; larger keys are larger monomials."""
    return (_degree(m), tuple((-v, e) for v, e in m))


class MultiPoly:
    """Immutable sparse polynomial with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        clean: Dict[Monomial, int] = {}
        for m, c in (terms or {}).items():
            if c:
                clean[m] = int(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, int]) -> "MultiPoly":
        out = cls.__new__(cls)
        out._terms = terms
        out._hash = None
        return out

    @classmethod
    def const(cls, c: int) -> "MultiPoly":
        return cls({(): c})

    @classmethod
    def var(cls, index: int, power: int = 1) -> "MultiPoly":
        return cls({((index, power),): 1} if power else {(): 1})

    @classmethod
    def coerce(cls, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, int):
            return cls.const(other)
        return NotImplemented

    @property
    def terms(self) -> Dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        """Terms in descending grlex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant(self) -> int:
        return self._terms.get((), 0)

    def variables(self) -> set:
        return {v for m in self._terms for v, _ in m}

    def degree(self) -> int:
        return max((_degree(m) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({_degree(m) for m in self._terms}) <= 1

    def leading(self) -> Tuple[Monomial, int]:
        if not self._terms:
            raise ZeroDivisorError("zero polynomial has no leading term")
        m = max(self._terms, key=grlex_key)
        return m, self._terms[m]

    def __eq__(self, other):
        other = MultiPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self):
        return MultiPoly._raw({m: -c for m, c in self._terms.items()})

    def __add__(self, other):
        other = MultiPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = MultiPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return MultiPoly()
            return MultiPoly._raw({m: c * other for m, c in self._terms.items()})
        other = MultiPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[Monomial, int] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return MultiPoly({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out, base = MultiPoly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def subs(self, values: Mapping[int, Union[int, "MultiPoly"]]) -> "MultiPoly":
        """Substitute variables by integers or polynomials."""
        out = MultiPoly()
        for m, c in self._terms.items():
            term = MultiPoly.const(c)
            keep = []
            for v, e in m:
                if v in values:
                    term = term * MultiPoly.coerce(values[v]) ** e
                else:
                    keep.append((v, e))
            out = out + term * MultiPoly({tuple(keep): 1})
        return out

    def evaluate(self, point: Mapping[int, int]) -> int:
        total = 0
        for m, c in self._terms.items():
            for v, e in m:
                c *= point[v] ** e
            total += c
        return total

    def content(self) -> int:
        """Gcd of the coefficients (0 for the zero polynomial)."""
        from math import gcd

        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for m, c in self.items():
            body = "*".join(f"a{v}" if e == 1 else f"a{v}^{e}" for v, e in m)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not out:
                out.append(("-" if c < 0 else "") + text)
            else:
                out.append((" - " if c < 0 else " + ") + text)
        return "".join(out)

    __str__ = to_text

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r})"

    @classmethod
    def from_text(cls, text: str) -> "MultiPoly":
        return parse_poly(text)


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^(?:(\d+)|a(\d+)(?:\^(\d+))?)$")


def parse_poly(text: str) -> MultiPoly:
    """Parse the canonical text form, e.g. ``3*a1^2*a4 - a2 + 5``."""
    src = text.strip()
    if not src:
        raise ValueError("empty polynomial")
    out = MultiPoly()
    pos = 0
    while pos < len(src):
        match = _TERM.match(src, pos)
        if not match or match.end() == pos:
            raise ValueError(f"cannot parse polynomial at column {pos + 1}: {text!r}")
        sign = -1 if match.group(1) == "-" else 1
        term = MultiPoly.const(sign)
        for factor in match.group(2).split("*"):
            f = _FACTOR.match(factor.strip())
            if not f:
                raise ValueError(f"bad factor {factor.strip()!r} in {text!r}")
            if f.group(1) is not None:
                term = term * int(f.group(1))
            else:
                term = term * MultiPoly.var(int(f.group(2)), int(f.group(3) or 1))
        out = out + term
        pos = match.end()
    return out


def exact_divide(p: MultiPoly, q: MultiPoly) -> Optional[MultiPoly]:
    """Return ``r`` with ``p == q * r``, or ``None`` if ``q`` does not divide ``p``."""
    p, q = MultiPoly.coerce(p), MultiPoly.coerce(q)
    if q.is_zero():
        raise ZeroDivisorError("division by the zero polynomial")
    if q.is_constant():
        c = q.constant()
        if any(v % c for v in p._terms.values()):
            return None
        return MultiPoly._raw({m: v // c for m, v in p._terms.items()})
    lm_q, lc_q = q.leading()
    rem = p
    quot: Dict[Monomial, int] = {}
    while rem:
        lm, lc = rem.leading()
        m = _mono_div(lm, lm_q)
        if m is None or lc % lc_q:
            return None
        c = lc // lc_q
        quot[m] = c
        rem = rem - q * MultiPoly._raw({m: c})
    return MultiPoly(quot)


def bareiss_det(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant by fraction-free elimination; every division is exact."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        return MultiPoly.const(1)
    a = [[MultiPoly.coerce(x) for x in row] for row in matrix]
    sign = 1
    prev = MultiPoly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if swap is None:
                return MultiPoly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * pivot - a[i][k] * a[k][j]
                q = exact_divide(num, prev)
                assert q is not None, "inexact division in fraction-free elimination"
                a[i][j] = q
            a[i][k] = MultiPoly()
        prev = pivot
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


@dataclass(frozen=True)
class UGraph:
    """Graph with oriented edges; edge ``e`` (from 1) carries variable ``a<e>``."""

    vertex_count: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(t), int(h)) for t, h in self.edges))
        if self.vertex_count < 1:
            raise MalformedGraphError("a graph needs at least one vertex")
        for e, (t, h) in enumerate(self.edges, 1):
            if not (0 <= t < self.vertex_count and 0 <= h < self.vertex_count):
                raise MalformedGraphError(f"edge {e} has an endpoint outside 0..{self.vertex_count - 1}")
            if t == h:
                raise MalformedGraphError(f"edge {e} is a self-loop")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def edge_ids(self) -> range:
        return range(1, len(self.edges) + 1)

    def loops(self) -> int:
        return self.edge_count - self.vertex_count + 1

    def is_connected(self) -> bool:
        return _components(self.vertex_count, self.edges) == 1

    def check_edge(self, e: int) -> int:
        if not isinstance(e, int) or not 1 <= e <= len(self.edges):
            raise UnknownEdgeError(e)
        return e

    def delete(self, e: int) -> "UGraph":
        """Graph with edge ``e`` removed; later edges keep their variables via relabelling."""
        self.check_edge(e)
        return UGraph(self.vertex_count, self.edges[: e - 1] + self.edges[e:])

    def to_dict(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(x) for x in self.edges]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "UGraph":
        return cls(int(data["vertices"]), tuple(tuple(x) for x in data["edges"]))


def _components(n: int, edges: Iterable[Tuple[int, int]]) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = n
    for t, h in edges:
        rt, rh = find(t), find(h)
        if rt != rh:
            parent[rt] = rh
            count -= 1
    return count


def spanning_trees(G: UGraph):
    """Yield spanning trees as sets of edge ids."""
    need = G.vertex_count - 1
    for tree in combinations(G.edge_ids, need):
        if _components(G.vertex_count, (G.edges[e - 1] for e in tree)) == 1:
            yield frozenset(tree)


def kirchhoff(G: UGraph, variables: Optional[Sequence[int]] = None) -> MultiPoly:
    """Sum over spanning trees of the product of variables of the omitted edges.

    ``variables`` renames edges (position ``e - 1`` holds the variable of edge
    ``e``); by default edge ``e`` carries ``a<e>``.
    """
    if not G.is_connected():
        raise DisconnectedError("Kirchhoff polynomial needs a connected graph")
    names = list(variables) if variables is not None else list(G.edge_ids)
    out: Dict[Monomial, int] = {}
    for tree in spanning_trees(G):
        mono = tuple(sorted((names[e - 1], 1) for e in G.edge_ids if e not in tree))
        merged: Dict[int, int] = {}
        for v, k in mono:
            merged[v] = merged.get(v, 0) + k
        key = tuple(sorted(merged.items()))
        out[key] = out.get(key, 0) + 1
    return MultiPoly(out)


def graph_matrix(G: UGraph, K: Iterable[int] = ()) -> list:
    """``[[L, E^T], [-E, 0]]`` with ``a_K`` set to zero."""
    K = {G.check_edge(e) for e in K}
    ne, nv = G.edge_count, G.vertex_count - 1
    size = ne + nv
    zero, one, minus = MultiPoly(), MultiPoly.const(1), MultiPoly.const(-1)
    M = [[zero] * size for _ in range(size)]
    for e, (t, h) in enumerate(G.edges, 1):
        r = e - 1
        if e not in K:
            M[r][r] = MultiPoly.var(e)
        for v, s in ((t, 1), (h, -1)):
            if v < nv:
                M[r][ne + v] = one if s > 0 else minus
                M[ne + v][r] = minus if s > 0 else one
    return M


def dodgson(G: UGraph, I: Iterable[int] = (), J: Iterable[int] = (), K: Iterable[int] = ()) -> MultiPoly:
    """Minor of the graph matrix without edge rows ``I`` and edge columns ``J``, with ``a_K = 0``."""
    I = sorted({G.check_edge(e) for e in I})
    J = sorted({G.check_edge(e) for e in J})
    if len(I) != len(J):
        raise ShapeError(f"|I| = {len(I)} differs from |J| = {len(J)}")
    M = graph_matrix(G, K)
    rows = [r for r in range(len(M)) if r + 1 not in I or r >= G.edge_count]
    cols = [c for c in range(len(M)) if c + 1 not in J or c >= G.edge_count]
    return bareiss_det([[M[r][c] for c in cols] for r in rows])


def cycle_poly(G: UGraph, i: int, j: int) -> MultiPoly:
    """``Psi^{{i},{j}}``; symmetric in ``i`` and ``j`` under this convention."""
    G.check_edge(i)
    G.check_edge(j)
    return dodgson(G, (i,), (j,))
