"""Deterministic plane-graph generation: random triangulations, edge
subsampling, filtered streams and named fixtures."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BadSpec, UnknownFixture
from .planegraph import PlaneGraph

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64: state += 0x9E3779B97F4A7C15, then the output is mixed with
    multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB and shifts 30/27/31."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = ((1 << 64) // n) * n
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))


def derive_seed(seed: int, index: int) -> int:
    """Independent child seed for the ``index``-th member of a stream."""
    rng = SplitMix64(seed ^ ((index * 0xD1B54A32D192ED03) & MASK64))
    return rng.next_u64()


@dataclass(frozen=True)
class GenSpec:
    seed: int
    n_target: int
    mode: str = "triangulation"
    delta_filter: frozenset[int] | None = None
    edge_keep_probability: float = 1.0
    flips: int | None = None
    balance: bool = False

    def __post_init__(self) -> None:
        if self.delta_filter is not None:
            object.__setattr__(self, "delta_filter", frozenset(self.delta_filter))
        if not 0.0 <= self.edge_keep_probability <= 1.0:
            raise BadSpec("edge_keep_probability must lie in [0, 1]")
        if self.flips is not None and self.flips < 0:
            raise BadSpec("flips must be non-negative")


class _Triangulation:
    """Mutable rotation system of a triangulation under construction."""

    def __init__(self) -> None:
        # a triangle: two faces, both listed as darts a->b->c
        self.rot: dict[int, list[int]] = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
        self.faces: list[tuple[int, int, int]] = [(0, 1, 2), (0, 2, 1)]

    def insert(self, face_index: int) -> None:
        a, b, c = self.faces[face_index]
        d = len(self.rot)
        # darts a->b->c become a->b->d, b->c->d, c->a->d
        self._insert_after(b, a, d)
        self._insert_after(c, b, d)
        self._insert_after(a, c, d)
        self.rot[d] = [b, a, c]
        self.faces[face_index] = (a, b, d)
        self.faces.append((b, c, d))
        self.faces.append((c, a, d))

    def _insert_after(self, x: int, after: int, new: int) -> None:
        r = self.rot[x]
        r.insert(r.index(after) + 1, new)

    def succ(self, x: int, y: int) -> int:
        r = self.rot[x]
        return r[(r.index(y) + 1) % len(r)]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in sorted(self.rot) for v in self.rot[u] if u < v]

    def try_flip(self, u: int, v: int, balance: bool) -> tuple[int, int] | None:
        rot = self.rot
        ru, rv = rot[u], rot[v]
        du, dv = len(ru), len(rv)
        if du <= 3 or dv <= 3:
            return None
        w = rv[(rv.index(u) + 1) % dv]
        x = ru[(ru.index(v) + 1) % du]
        rw, rx = rot[w], rot[x]
        if w == x or x in rw:
            return None
        if balance and du + dv <= len(rw) + len(rx) + 2:
            return None
        ru.remove(v)
        rv.remove(u)
        rw.insert(rw.index(v) + 1, x)
        rx.insert(rx.index(u) + 1, w)
        return (w, x) if w < x else (x, w)


def _flip_phase(tri: _Triangulation, rng: SplitMix64, count: int, balance: bool) -> None:
    edges = tri.edges()
    below = rng.below
    flip = tri.try_flip
    size = len(edges)
    for _ in range(count):
        i = below(size)
        u, v = edges[i]
        flipped = flip(u, v, balance)
        if flipped is not None:
            edges[i] = flipped


def random_triangulation(spec: GenSpec) -> PlaneGraph:
    if spec.n_target < 4:
        raise BadSpec("a triangulation needs n_target >= 4")
    rng = SplitMix64(spec.seed)
    tri = _Triangulation()
    while len(tri.rot) < spec.n_target:
        tri.insert(rng.below(len(tri.faces)))
    m = 3 * spec.n_target - 6
    _flip_phase(tri, rng, 10 * m if spec.flips is None else spec.flips, False)
    if spec.balance:
        _flip_phase(tri, rng, 10 * m, True)
    return PlaneGraph(tri.rot)


def _still_connected_without(rot: dict[int, list[int]], u: int, v: int) -> bool:
    """Is v reachable from u once the edge uv is removed?"""
    seen = {u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in rot[x]:
            if x == u and y == v:
                continue
            if y == v:
                return True
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return False


def subsample(g: PlaneGraph, spec: GenSpec) -> PlaneGraph:
    """Delete each edge with probability 1-keep unless that disconnects."""
    rng = SplitMix64(derive_seed(spec.seed, 0x5AB))
    rot = {v: list(g.neighbors(v)) for v in g.vertices}
    keep = spec.edge_keep_probability
    for u, v in g.edges():
        if rng.random() < keep:
            continue
        if _still_connected_without(rot, u, v):
            rot[u].remove(v)
            rot[v].remove(u)
    return PlaneGraph(rot)


def generate(spec: GenSpec) -> PlaneGraph:
    if spec.mode == "triangulation":
        return random_triangulation(spec)
    if spec.mode == "subsampled":
        return subsample(random_triangulation(spec), spec)
    return fixture(spec.mode)


def stream(spec: GenSpec, count: int, max_attempts: int | None = None) -> Iterator[PlaneGraph]:
    """``count`` graphs from child seeds of ``spec.seed``, honouring the Δ filter."""
    budget = max_attempts if max_attempts is not None else 200 * max(count, 1)
    produced = 0
    index = 0
    while produced < count:
        if index >= budget:
            raise BadSpec(f"Δ filter accepted only {produced} of {index} attempts")
        child = GenSpec(derive_seed(spec.seed, index), spec.n_target, spec.mode,
                        spec.delta_filter, spec.edge_keep_probability,
                        spec.flips, spec.balance)
        index += 1
        g = generate(child)
        if spec.delta_filter is None or g.max_degree in spec.delta_filter:
            produced += 1
            yield g


# fixtures


def from_faces(faces: Sequence[Sequence[int]]) -> PlaneGraph:
    """Plane graph whose face walks are ``faces`` (dart w_i -> w_{i+1})."""
    succ: dict[int, dict[int, int]] = {}
    for walk in faces:
        k = len(walk)
        for i in range(k):
            prev, cur, nxt = walk[i - 1], walk[i], walk[(i + 1) % k]
            if prev in succ.setdefault(cur, {}):
                raise BadSpec(f"dart {prev}->{cur} used by two faces")
            succ[cur][prev] = nxt
    rot: dict[int, list[int]] = {}
    for v, mapping in succ.items():
        start = min(mapping)
        cycle = [start]
        while (nxt := mapping[cycle[-1]]) != start:
            cycle.append(nxt)
        if len(cycle) != len(mapping):
            raise BadSpec(f"faces around {v} do not close into one rotation")
        rot[v] = cycle
    return PlaneGraph(rot)


def cycle(k: int) -> PlaneGraph:
    return PlaneGraph({i: [(i - 1) % k, (i + 1) % k] for i in range(k)})


def wheel(k: int) -> PlaneGraph:
    """Hub 0 with rim 1..k."""
    rot = {0: list(range(1, k + 1))}
    for i in range(1, k + 1):
        prev = k if i == 1 else i - 1
        nxt = 1 if i == k else i + 1
        rot[i] = [0, prev, nxt]
    return PlaneGraph(rot)


def grid(a: int, b: int) -> PlaneGraph:
    if a < 1 or b < 1:
        raise BadSpec("grid sides must be positive")
    rot: dict[int, list[int]] = {}
    for r in range(a):
        for c in range(b):
            nb = []
            if r > 0:
                nb.append((r - 1) * b + c)
            if c + 1 < b:
                nb.append(r * b + c + 1)
            if r + 1 < a:
                nb.append((r + 1) * b + c)
            if c > 0:
                nb.append(r * b + c - 1)
            rot[r * b + c] = nb
    return PlaneGraph(rot)


def _octahedron() -> PlaneGraph:
    top, bottom = 0, 5
    faces = []
    for i in range(4):
        a, b = 1 + i, 1 + (i + 1) % 4
        faces.append((a, top, b))
        faces.append((b, bottom, a))
    return from_faces(faces)


def _icosahedron() -> PlaneGraph:
    top, bottom = 0, 11
    faces = []
    for i in range(5):
        u, u2 = 1 + i, 1 + (i + 1) % 5
        low, low2 = 6 + i, 6 + (i + 1) % 5
        faces += [(top, u, u2), (u, low, u2), (u2, low, low2), (bottom, low2, low)]
    return from_faces(faces)


def _figure1() -> PlaneGraph:
    """A 5(5)-vertex v=0 whose edge to u=1 is special.

    Rotation of v is u, u1, u3, u4, u2 = 1, 2, 3, 4, 5; the faces across u-u1
    and u-u2 are 4-faces, closed off by outer vertices w=6, a=7, b=8.
    """
    v, u, u1, u3, u4, u2, w, a, b = range(9)
    faces = [
        (u, v, u1), (u1, v, u3), (u3, v, u4), (u4, v, u2), (u2, v, u),
        (u, u1, w, a), (u1, u3, w), (u3, u4, w), (u4, u2, w),
        (u2, u, b, w), (u, a, b), (a, w, b),
    ]
    return from_faces(faces)


_GRID = re.compile(r"grid_(\d+)x(\d+)$")


def fixture(name: str) -> PlaneGraph:
    match = _GRID.match(name)
    if match:
        return grid(int(match.group(1)), int(match.group(2)))
    builders = {
        "K4": lambda: wheel(3),
        "C5": lambda: cycle(5),
        "C6": lambda: cycle(6),
        "W6": lambda: wheel(6),
        "W7": lambda: wheel(7),
        "octahedron": _octahedron,
        "icosahedron": _icosahedron,
        "figure1": _figure1,
    }
    if name not in builders:
        raise UnknownFixture(f"unknown fixture {name!r}")
    return builders[name]()


FIXTURE_NAMES = ("K4", "C5", "C6", "W6", "W7", "octahedron", "icosahedron", "figure1")


def mixed_spec(seed: int, index: int, n_lo: int, n_hi: int) -> GenSpec:
    """One member of the mixed corpus: balanced triangulations, balanced
    subsampled triangulations, and subsampled raw triangulations."""
    child = derive_seed(seed, index)
    rng = SplitMix64(child)
    n = n_lo + rng.below(n_hi - n_lo + 1)
    kind = rng.below(4)
    if kind == 0:
        return GenSpec(child, n, "triangulation", balance=True)
    if kind in (1, 2):
        return GenSpec(child, n, "subsampled", edge_keep_probability=0.5 + 0.5 * rng.random(),
                       balance=True)
    return GenSpec(child, n, "subsampled", edge_keep_probability=0.3 + 0.6 * rng.random())


def corpus(seed: int, count: int, n_lo: int = 12, n_hi: int = 120,
           delta_filter: frozenset[int] | None = None,
           max_attempts: int | None = None) -> Iterator[PlaneGraph]:
    """``count`` graphs of the mixed corpus whose Δ passes ``delta_filter``."""
    if not 4 <= n_lo <= n_hi:
        raise BadSpec("need 4 <= n_lo <= n_hi")
    budget = max_attempts if max_attempts is not None else 50 * max(count, 1)
    produced = 0
    for index in range(budget):
        if produced == count:
            return
        g = generate(mixed_spec(seed, index, n_lo, n_hi))
        if delta_filter is None or g.max_degree in delta_filter:
            produced += 1
            yield g
    if produced < count:
        raise BadSpec(f"Δ filter accepted only {produced} of {budget} attempts")
