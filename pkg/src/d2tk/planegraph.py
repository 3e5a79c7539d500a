"""Plane graphs as clockwise rotation systems, with face derivation and
the delete-a-vertex-then-add-chords surgery used by every reduction."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    AsymmetricAdjacency,
    CrossingChords,
    D2Error,
    Disconnects,
    Duplicate,
    NotConnected,
    NotSphere,
    ParseError,
    SelfLoop,
    UnknownVertex,
)

Dart = tuple[int, int]


@dataclass(frozen=True)
class FaceRecord:
    """One face: its closed walk as a cyclic sequence of darts."""

    index: int
    boundary: tuple[Dart, ...]

    @property
    def length(self) -> int:
        return len(self.boundary)

    @property
    def walk(self) -> tuple[int, ...]:
        return tuple(u for u, _ in self.boundary)


class PlaneGraph:
    """Immutable simple connected plane graph.

    ``rotation[v]`` lists the neighbours of ``v`` in clockwise order.  The face
    walk leaving dart ``(u, v)`` continues with ``(v, w)`` where ``w`` follows
    ``u`` in the rotation of ``v``.  With ``v_1..v_k`` the rotation of ``v``,
    slot ``i`` of ``v`` is the face containing ``v_i -> v -> v_{i+1}``.
    """

    __slots__ = ("_rot", "_pos", "_adj", "_faces", "_dart_face", "vertices",
                 "max_degree", "m")

    def __init__(self, rotation: Mapping[int, Sequence[int]]):
        rot: dict[int, tuple[int, ...]] = {}
        for v in sorted(rotation):
            rot[int(v)] = tuple(int(u) for u in rotation[v])
        if not rot:
            raise NotConnected("graph has no vertices")
        _check_simple(rot)
        self._rot = rot
        self._pos = {v: {u: i for i, u in enumerate(nb)} for v, nb in rot.items()}
        self._adj = {v: frozenset(nb) for v, nb in rot.items()}
        self.vertices: tuple[int, ...] = tuple(rot)
        self.m: int = sum(len(nb) for nb in rot.values()) // 2
        self.max_degree: int = max(len(nb) for nb in rot.values())
        if not _is_connected(self._adj):
            raise NotConnected("rotation system is not connected")
        self._faces, self._dart_face = self._trace_faces()
        f = len(self._faces)
        if self.n - self.m + f != 2:
            raise NotSphere(f"Euler count n-m+f = {self.n}-{self.m}+{f} != 2")
        assert sum(face.length for face in self._faces) == 2 * self.m

    def _trace_faces(self) -> tuple[tuple[FaceRecord, ...], dict[Dart, int]]:
        dart_face: dict[Dart, int] = {}
        faces: list[FaceRecord] = []
        if self.m == 0:
            return (FaceRecord(0, ()),), dart_face
        for u in self.vertices:
            for v in self._rot[u]:
                if (u, v) in dart_face:
                    continue
                idx = len(faces)
                walk = []
                dart = (u, v)
                while dart not in dart_face:
                    dart_face[dart] = idx
                    walk.append(dart)
                    dart = self.next_dart(dart)
                if dart != (u, v):
                    raise NotSphere("face traversal is not a permutation cycle")
                faces.append(FaceRecord(idx, tuple(walk)))
        return tuple(faces), dart_face

    # basic queries

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def faces(self) -> tuple[FaceRecord, ...]:
        return self._faces

    @property
    def rotation(self) -> dict[int, tuple[int, ...]]:
        return dict(self._rot)

    def __contains__(self, v: object) -> bool:
        return v in self._rot

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlaneGraph) and self._rot == other._rot

    def __hash__(self) -> int:
        return hash(tuple(self._rot.items()))

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self.n}, m={self.m}, f={len(self._faces)}, Δ={self.max_degree})"

    def _require(self, v: int) -> None:
        if v not in self._rot:
            raise UnknownVertex(f"vertex {v} not in graph")

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._require(v)
        return self._rot[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        self._require(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        self._require(v)
        return len(self._rot[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.vertices for v in self._rot[u] if u < v]

    def next_dart(self, dart: Dart) -> Dart:
        u, v = dart
        nb = self._rot[v]
        return v, nb[(self._pos[v][u] + 1) % len(nb)]

    def face_of(self, u: int, v: int) -> FaceRecord:
        """Face containing the dart ``u -> v``."""
        return self._faces[self._dart_face[(u, v)]]

    def slot_faces(self, v: int) -> list[FaceRecord]:
        """Face slots around ``v``: entry ``i`` lies between ``v_i`` and ``v_{i+1}``."""
        self._require(v)
        nb = self._rot[v]
        if not nb:
            return []
        return [self._faces[self._dart_face[(v, nb[(i + 1) % len(nb)])]]
                for i in range(len(nb))]


def _check_simple(rot: dict[int, tuple[int, ...]]) -> None:
    for v, nb in rot.items():
        seen = set()
        for u in nb:
            if u == v:
                raise SelfLoop(f"self-loop at vertex {v}")
            if u in seen:
                raise Duplicate(f"neighbour {u} listed twice at vertex {v}")
            if u not in rot:
                raise UnknownVertex(f"vertex {v} lists unknown neighbour {u}")
            seen.add(u)
    for v, nb in rot.items():
        for u in nb:
            if v not in rot[u]:
                raise AsymmetricAdjacency(f"{v} lists {u} but {u} does not list {v}")


def _is_connected(adj: Mapping[int, Iterable[int]]) -> bool:
    start = next(iter(adj))
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == len(adj)


def build_from_rotation(spec: Mapping[int, Sequence[int]]) -> PlaneGraph:
    return PlaneGraph(spec)


def faces_incident(g: PlaneGraph, v: int) -> list[FaceRecord]:
    return g.slot_faces(v)


@dataclass(frozen=True)
class Surgery:
    """Delete ``delete`` and insert ``chords`` inside the hole it leaves."""

    delete: int
    chords: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        chords = tuple((int(a), int(b)) for a, b in self.chords)
        for a, b in chords:
            if a == b:
                raise D2Error(f"chord ({a}, {b}) has equal endpoints")
        object.__setattr__(self, "chords", chords)


@dataclass(frozen=True)
class SurgeryResult:
    graph: PlaneGraph
    inserted: tuple[tuple[int, int], ...]
    skipped: tuple[tuple[int, int], ...] = field(default=())


def chords_cross(k: int, a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Do chords between cyclic positions cross inside a k-gon?"""
    if len({*a, *b}) < 4:
        return False
    lo, hi = sorted(a)
    inside = [lo < p < hi for p in b]
    return inside[0] != inside[1]


def perform_surgery(g: PlaneGraph, s: Surgery) -> SurgeryResult:
    v = s.delete
    nb = g.neighbors(v)
    k = len(nb)
    pos = {u: i for i, u in enumerate(nb)}
    inserted: list[tuple[int, int]] = []
    skipped: list[tuple[int, int]] = []
    present: set[frozenset[int]] = set()
    for a, b in s.chords:
        if a not in pos or b not in pos:
            raise D2Error(f"chord ({a}, {b}) is not between neighbours of {v}")
        key = frozenset((a, b))
        if g.has_edge(a, b) or key in present:
            skipped.append((a, b))
            continue
        for c in inserted:
            if chords_cross(k, (pos[a], pos[b]), (pos[c[0]], pos[c[1]])):
                raise CrossingChords(f"chord ({a}, {b}) crosses ({c[0]}, {c[1]})")
        present.add(key)
        inserted.append((a, b))

    partners: dict[int, list[int]] = {u: [] for u in nb}
    for a, b in inserted:
        partners[a].append(b)
        partners[b].append(a)
    rot: dict[int, list[int]] = {}
    for x in g.vertices:
        if x == v:
            continue
        if x not in pos:
            rot[x] = list(g.neighbors(x))
            continue
        i = pos[x]
        # the slot of v at v_i faces v_{i+1} on one side and v_{i-1} on the other
        fill = sorted(partners[x], key=lambda y: (pos[y] - i) % k)
        new = []
        for y in g.neighbors(x):
            if y == v:
                new.extend(fill)
            else:
                new.append(y)
        rot[x] = new
    if not rot:
        raise Disconnects(f"deleting {v} leaves an empty graph")
    adj = {x: set(r) for x, r in rot.items()}
    if not _is_connected(adj):
        raise Disconnects(f"deleting {v} disconnects the graph")
    return SurgeryResult(PlaneGraph(rot), tuple(inserted), tuple(skipped))


def apply_surgery(g: PlaneGraph, s: Surgery) -> PlaneGraph:
    return perform_surgery(g, s).graph


# ROTG text format


def dump_rotg(g: PlaneGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    for v in g.vertices:
        nb = " ".join(str(u) for u in g.neighbors(v))
        lines.append(f"{v}: {nb}" if nb else f"{v}:")
    return "\n".join(lines) + "\n"


def _int(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno) from None
    if value < 0:
        raise ParseError(f"negative id {value}", lineno)
    return value


def parse_rotg(text: str) -> PlaneGraph:
    rows: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise ParseError("empty input", 1)
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("header must be 'n m'", lineno)
    n, m = (_int(p, lineno) for p in parts)
    body = rows[1:]
    if len(body) < n:
        line = body[-1][0] + 1 if body else lineno + 1
        raise ParseError(f"expected {n} vertex lines, found {len(body)}", line)
    if len(body) > n:
        raise ParseError("trailing content after vertex lines", body[n][0])
    spec: dict[int, list[int]] = {}
    for lineno, line in body:
        head, sep, tail = line.partition(":")
        if not sep:
            raise ParseError("vertex line must look like 'v: u1 u2 ...'", lineno)
        v = _int(head.strip(), lineno)
        if v in spec:
            raise ParseError(f"vertex {v} listed twice", lineno)
        spec[v] = [_int(t, lineno) for t in tail.split()]
    g = PlaneGraph(spec)
    if g.m != m:
        raise ParseError(f"header says m={m} but rotations give m={g.m}", rows[0][0])
    return g


def read_rotg(path: str) -> PlaneGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_rotg(fh.read())
