"""Per-vertex and per-edge statistics: face incidences, t(v), n_i(v),
exact second neighbourhoods, class tags, special edges and support
neighbours."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .errors import D2Error, NotAnEdge, UnknownVertex
from .planegraph import FaceRecord, PlaneGraph


@dataclass(frozen=True)
class ClassTag:
    kd: tuple[int, int]
    bad4: bool
    bad5: bool
    poor: bool


def classify(degree: int, m3: int, delta_case: int | None) -> ClassTag:
    if delta_case == 6:
        bad4 = degree == 4 and 1 <= m3 <= 2
    elif delta_case == 7:
        bad4 = degree == 4 and 1 <= m3 <= 3
    else:
        bad4 = False
    bad5 = degree == 5 and m3 >= 4
    poor = delta_case == 7 and (degree == 4 or (degree == 5 and m3 == 5))
    return ClassTag((degree, m3), bad4, bad5, poor)


@dataclass(frozen=True)
class VertexProfile:
    vertex: int
    degree: int
    m3: int
    m4: int
    mk: dict[int, int]
    boundary_edges: tuple[tuple[int, int], ...]
    t: int
    n_by_degree: dict[int, int]
    d2: int
    tag: ClassTag
    neighbors: tuple[int, ...]
    slot_lengths: tuple[int, ...]

    def n(self, i: int) -> int:
        return self.n_by_degree.get(i, 0)

    def line(self) -> str:
        k, d = self.tag.kd
        return f"{self.vertex} {self.degree} {self.m3} {self.m4} {self.t} {self.d2} {k}({d})"


def second_neighborhood(g: PlaneGraph, v: int) -> set[int]:
    """Vertices at distance 1 or 2 from ``v``."""
    near = set(g.neighbor_set(v))
    for u in g.neighbors(v):
        near.update(g.neighbor_set(u))
    near.discard(v)
    return near


def d2_exact(g: PlaneGraph, v: int) -> int:
    return len(second_neighborhood(g, v))


def in_two_triangles(g: PlaneGraph, u: int, v: int) -> bool:
    return g.face_of(u, v).length == 3 and g.face_of(v, u).length == 3


def boundary_edges(g: PlaneGraph, v: int) -> tuple[tuple[int, int], ...]:
    """E(v): edges between rotation-consecutive neighbours, each once."""
    nb = g.neighbors(v)
    k = len(nb)
    seen: set[frozenset[int]] = set()
    out = []
    for i in range(k):
        a, b = nb[i], nb[(i + 1) % k]
        if a != b and g.has_edge(a, b) and frozenset((a, b)) not in seen:
            seen.add(frozenset((a, b)))
            out.append((a, b))
    return tuple(out)


def profile(g: PlaneGraph, v: int, delta_case: int | None = None) -> VertexProfile:
    if v not in g:
        raise UnknownVertex(f"vertex {v} not in graph")
    if delta_case is None:
        delta_case = g.max_degree
    nb = g.neighbors(v)
    lengths = tuple(f.length for f in g.slot_faces(v))
    mk = dict(sorted(Counter(lengths).items()))
    edges = boundary_edges(g, v)
    t = sum(1 for a, b in edges if in_two_triangles(g, a, b))
    n_by = dict(sorted(Counter(g.degree(u) for u in nb).items()))
    m3 = mk.get(3, 0)
    return VertexProfile(
        vertex=v,
        degree=len(nb),
        m3=m3,
        m4=mk.get(4, 0),
        mk=mk,
        boundary_edges=edges,
        t=t,
        n_by_degree=n_by,
        d2=d2_exact(g, v),
        tag=classify(len(nb), m3, delta_case),
        neighbors=nb,
        slot_lengths=lengths,
    )


def d2_bound(g: PlaneGraph, v: int) -> int:
    """Σ d(u) − 2·m3 − m4 − t: the counting bound, diagnostic only.

    Over-subtracts when a t-edge's second triangle has its apex in N(v);
    on K4 it gives 0 although every vertex sees 3 others.
    """
    p = profile(g, v)
    return sum(g.degree(u) for u in p.neighbors) - 2 * p.m3 - p.m4 - p.t


def square(g: PlaneGraph) -> dict[int, set[int]]:
    return {v: second_neighborhood(g, v) for v in g.vertices}


def _triangle_touches_long_face(g: PlaneGraph, face: FaceRecord) -> bool:
    return any(g.face_of(b, a).length >= 4 for a, b in face.boundary)


def is_special(g: PlaneGraph, u: int, v: int) -> bool:
    """Edge uv at a 5(5)-vertex whose two triangles each border a 4+-face."""
    for centre, other in ((v, u), (u, v)):
        if g.degree(centre) != 5:
            continue
        if any(f.length != 3 for f in g.slot_faces(centre)):
            continue
        if not in_two_triangles(g, centre, other):
            continue
        if all(_triangle_touches_long_face(g, f)
               for f in (g.face_of(centre, other), g.face_of(other, centre))):
            return True
    return False


def support_threshold(delta_case: int, high_degree: int) -> int | None:
    """Largest degree a support neighbour of a ``high_degree`` vertex may have."""
    if delta_case == 7 and high_degree == 7:
        return 4
    if delta_case == 8:
        return {7: 5, 8: 4}.get(high_degree)
    return None


def is_support(g: PlaneGraph, high: int, low: int, delta_case: int) -> bool:
    """Is ``low`` a support neighbour of ``high``?"""
    if not g.has_edge(high, low):
        return False
    limit = support_threshold(delta_case, g.degree(high))
    if limit is None:
        return False
    if delta_case == 7 and g.degree(low) != 4:
        return False
    return g.degree(low) <= limit and in_two_triangles(g, high, low)


@dataclass(frozen=True)
class EdgeFlag:
    special: bool
    support: bool


def edge_flags(g: PlaneGraph, u: int, v: int, delta_case: int) -> EdgeFlag:
    if not g.has_edge(u, v):
        raise NotAnEdge(f"{u}{v} is not an edge")
    special = delta_case == 6 and is_special(g, u, v)
    support = delta_case in (7, 8) and (is_support(g, u, v, delta_case)
                                        or is_support(g, v, u, delta_case))
    return EdgeFlag(special, support)


class GraphAnalysis:
    """Lazily cached profiles and flags for one graph under one Δ-case."""

    def __init__(self, g: PlaneGraph, delta_case: int | None = None):
        self.g = g
        self.delta_case = g.max_degree if delta_case is None else delta_case
        self._profiles: dict[int, VertexProfile] = {}
        self._special: dict[tuple[int, int], bool] = {}

    def profile(self, v: int) -> VertexProfile:
        p = self._profiles.get(v)
        if p is None:
            p = profile(self.g, v, self.delta_case)
            self._profiles[v] = p
        return p

    def deg(self, v: int) -> int:
        return self.g.degree(v)

    def m3(self, v: int) -> int:
        return self.profile(v).m3

    def kd(self, v: int) -> tuple[int, int]:
        return self.profile(v).tag.kd

    def special(self, u: int, v: int) -> bool:
        key = (min(u, v), max(u, v))
        if key not in self._special:
            self._special[key] = is_special(self.g, u, v)
        return self._special[key]

    def support(self, high: int, low: int) -> bool:
        return is_support(self.g, high, low, self.delta_case)

    def matches(self, v: int, desc: str) -> bool:
        return vertex_predicate(desc)(self, v)

    def count(self, v: int, desc: str) -> int:
        """Number of neighbours of ``v`` matching a vertex descriptor."""
        pred = vertex_predicate(desc)
        return sum(1 for u in self.g.neighbors(v) if pred(self, u))


# descriptors
#
# A vertex descriptor is a small expression over class tokens, e.g. ``6(3-)``,
# ``7(4..5)``, ``4|6(5)``, ``6(5)&no4nbr``, ``bad5``; ``|`` binds looser than
# ``&`` and ``!`` negates a token.  Faces are described as ``face:3`` or
# ``face:5+``.

_BOUND = r"(\d+)([+-]?)"
_TERM = re.compile(rf"^{_BOUND}(?:\((?:(\d+)\.\.(\d+)|{_BOUND})\))?$")
_FACE = re.compile(r"^face:(\d+)([+-]?)$")

VertexPred = Callable[[GraphAnalysis, int], bool]


def _range(value: int, sign: str) -> tuple[int, int]:
    if sign == "+":
        return value, 10**9
    if sign == "-":
        return 0, value
    return value, value


def _term(token: str) -> VertexPred:
    if token.startswith("!"):
        inner = _term(token[1:])
        return lambda a, v: not inner(a, v)
    if token == "any":
        return lambda a, v: True
    if token in ("bad4", "bad5", "poor"):
        return lambda a, v: getattr(a.profile(v).tag, token)
    if token == "no4nbr":
        return lambda a, v: all(a.deg(u) != 4 for u in a.g.neighbors(v))
    match = _TERM.match(token)
    if not match:
        raise D2Error(f"unknown vertex descriptor {token!r}")
    dlo, dhi = _range(int(match.group(1)), match.group(2))
    if match.group(3) is not None:
        mlo, mhi = int(match.group(3)), int(match.group(4))
    elif match.group(5) is not None:
        mlo, mhi = _range(int(match.group(5)), match.group(6))
    else:
        mlo, mhi = 0, 10**9

    def pred(a: GraphAnalysis, v: int) -> bool:
        if not dlo <= a.deg(v) <= dhi:
            return False
        if mlo == 0 and mhi == 10**9:
            return True
        return mlo <= a.m3(v) <= mhi

    return pred


@lru_cache(maxsize=None)
def vertex_predicate(desc: str) -> VertexPred:
    alternatives = []
    for alt in desc.split("|"):
        terms = [_term(t) for t in alt.split("&")]
        alternatives.append(terms)

    def pred(a: GraphAnalysis, v: int) -> bool:
        return any(all(t(a, v) for t in terms) for terms in alternatives)

    return pred


@lru_cache(maxsize=None)
def face_predicate(desc: str) -> Callable[[FaceRecord], bool]:
    match = _FACE.match(desc)
    if not match:
        raise D2Error(f"unknown face descriptor {desc!r}")
    lo, hi = _range(int(match.group(1)), match.group(2))
    return lambda f: lo <= f.length <= hi
