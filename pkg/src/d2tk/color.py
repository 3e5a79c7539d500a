"""2-distance colouring: the reduce-recurse-extend colourer, greedy and
DSATUR colourers of the square, an exact χ₂ solver and a validity check."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .analysis import d2_exact, second_neighborhood
from .catalog import first_configuration
from .errors import NotConnected, PaletteExceeded, PartialAssignment, TooLarge
from .planegraph import PlaneGraph, apply_surgery

REDUCIBLE_DELTAS = (6, 7, 8)
BASE_SIZE = 12
EXACT_FALLBACK_SIZE = 20
GREEDY_ORDERS = ("degeneracy", "descending-d2", "input")

Graph = PlaneGraph | Mapping[int, Iterable[int]]


@dataclass(frozen=True)
class TraceStep:
    config_id: str
    deleted: int | None
    chords: tuple[tuple[int, int], ...] = ()
    note: str = ""

    def line(self) -> str:
        chords = ",".join(f"{a}-{b}" for a, b in self.chords) or "-"
        text = f"{self.config_id} delete={self.deleted} chords={chords}"
        return f"{text} note={self.note}" if self.note else text


@dataclass
class ColoringCertificate:
    assignment: dict[int, int]
    palette_size: int
    valid: bool
    trace: list[TraceStep] = field(default_factory=list)
    method: str = "greedy"


def _adjacency(g: Graph) -> dict[int, set[int]]:
    if isinstance(g, PlaneGraph):
        return {v: set(g.neighbor_set(v)) for v in g.vertices}
    adj = {int(v): {int(u) for u in nb} for v, nb in g.items()}
    for v, nb in list(adj.items()):
        for u in nb:
            adj.setdefault(u, set()).add(v)
    return adj


def _square(adj: Mapping[int, set[int]]) -> dict[int, set[int]]:
    sq: dict[int, set[int]] = {}
    for v, nb in adj.items():
        near = set(nb)
        for u in nb:
            near |= adj[u]
        near.discard(v)
        sq[v] = near
    return sq


def _certificate(adj: Mapping[int, set[int]], assignment: dict[int, int], method: str,
                 trace: list[TraceStep] | None = None) -> ColoringCertificate:
    ok, _ = _validate_adj(adj, assignment)
    return ColoringCertificate(dict(sorted(assignment.items())), len(set(assignment.values())),
                               ok, list(trace or []), method)


# validation


def _within_two(adj: Mapping[int, set[int]], v: int) -> list[int]:
    """Vertices at distance 1 or 2 from ``v`` by a depth-limited BFS."""
    dist = {v: 0}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        if dist[x] == 2:
            continue
        for y in sorted(adj[x]):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return sorted(u for u, d in dist.items() if d > 0)


def _validate_adj(adj: Mapping[int, set[int]], assignment: Mapping[int, int]
                  ) -> tuple[bool, tuple[int, int] | None]:
    missing = [v for v in adj if v not in assignment]
    if missing:
        raise PartialAssignment(f"no colour for vertex {min(missing)}")
    for v in sorted(adj):
        for u in _within_two(adj, v):
            if u > v and assignment[u] == assignment[v]:
                return False, (v, u)
    return True, None


def validate(g: Graph, assignment: Mapping[int, int]) -> tuple[bool, tuple[int, int] | None]:
    """Is ``assignment`` a 2-distance colouring?  Returns the first clashing pair otherwise."""
    return _validate_adj(_adjacency(g), assignment)


# greedy colourers


def _degeneracy_order(sq: Mapping[int, set[int]]) -> list[int]:
    """Smallest-last order of the square, reversed so hard vertices come first."""
    degree = {v: len(nb) for v, nb in sq.items()}
    removed: set[int] = set()
    order = []
    for _ in range(len(sq)):
        v = min((u for u in sq if u not in removed), key=lambda u: (degree[u], u))
        removed.add(v)
        order.append(v)
        for u in sq[v]:
            if u not in removed:
                degree[u] -= 1
    return order[::-1]


def _order(sq: Mapping[int, set[int]], hint: str) -> list[int]:
    if hint == "degeneracy":
        return _degeneracy_order(sq)
    if hint == "descending-d2":
        return sorted(sq, key=lambda v: (-len(sq[v]), v))
    if hint == "input":
        return sorted(sq)
    raise ValueError(f"unknown order hint {hint!r}")


def _smallest_free(used: set[int]) -> int:
    c = 0
    while c in used:
        c += 1
    return c


def _greedy_square(sq: Mapping[int, set[int]], order: list[int]) -> dict[int, int]:
    col: dict[int, int] = {}
    for v in order:
        col[v] = _smallest_free({col[u] for u in sq[v] if u in col})
    return col


def _dsatur(sq: Mapping[int, set[int]]) -> dict[int, int]:
    col: dict[int, int] = {}
    seen: dict[int, set[int]] = {v: set() for v in sq}
    while len(col) < len(sq):
        v = max((u for u in sq if u not in col),
                key=lambda u: (len(seen[u]), len(sq[u]), -u))
        c = _smallest_free(seen[v])
        col[v] = c
        for u in sq[v]:
            seen[u].add(c)
    return col


def greedy(g: Graph, order: str = "degeneracy") -> ColoringCertificate:
    adj = _adjacency(g)
    sq = _square(adj)
    return _certificate(adj, _greedy_square(sq, _order(sq, order)), "greedy")


def dsatur(g: Graph) -> ColoringCertificate:
    adj = _adjacency(g)
    return _certificate(adj, _dsatur(_square(adj)), "greedy")


def best_heuristic(g: Graph) -> ColoringCertificate:
    """Fewest colours among DSATUR and every greedy order."""
    adj = _adjacency(g)
    sq = _square(adj)
    candidates = [_dsatur(sq)] + [_greedy_square(sq, _order(sq, h)) for h in GREEDY_ORDERS]
    best = min(candidates, key=lambda col: len(set(col.values())))
    return _certificate(adj, best, "greedy")


# exact solver


def _greedy_clique(sq: Mapping[int, set[int]]) -> list[int]:
    best: list[int] = []
    for start in sorted(sq, key=lambda v: (-len(sq[v]), v)):
        clique = [start]
        cand = set(sq[start])
        while cand:
            u = max(cand, key=lambda x: (len(sq[x] & cand), -x))
            clique.append(u)
            cand &= sq[u]
        if len(clique) > len(best):
            best = clique
    return best


def _branch_and_bound(sq: Mapping[int, set[int]]) -> dict[int, int]:
    best = _dsatur(sq)
    upper = len(set(best.values()))
    clique = _greedy_clique(sq)
    lower = len(clique)
    if upper <= lower:
        return best
    col: dict[int, int] = {}
    # pre-colour the clique: any optimal colouring can be renamed to agree on it
    for i, v in enumerate(clique):
        col[v] = i

    def pick() -> int:
        return max((u for u in sq if u not in col),
                   key=lambda u: (len({col[x] for x in sq[u] if x in col}),
                                  sum(1 for x in sq[u] if x not in col), -u))

    def search(used: int) -> bool:
        nonlocal best, upper
        if len(col) == len(sq):
            best, upper = dict(col), used
            return upper == lower
        v = pick()
        blocked = {col[x] for x in sq[v] if x in col}
        for c in range(min(used + 1, upper - 1)):
            if c in blocked:
                continue
            col[v] = c
            done = search(max(used, c + 1))
            del col[v]
            if done:
                return True
        return False

    search(lower)
    return best


def exact_chi2(g: Graph, bound: int = 30) -> tuple[int, ColoringCertificate]:
    adj = _adjacency(g)
    if len(adj) > bound:
        raise TooLarge(f"{len(adj)} vertices exceed the exact-solver bound {bound}")
    col = _branch_and_bound(_square(adj)) if adj else {}
    cert = _certificate(adj, col, "exact")
    return cert.palette_size, cert


# constructive colourer


def _fallback(g: PlaneGraph) -> ColoringCertificate:
    if g.n <= EXACT_FALLBACK_SIZE:
        return exact_chi2(g)[1]
    return best_heuristic(g)


def _base_colouring(g: PlaneGraph, cap: int) -> dict[int, int]:
    if g.n <= BASE_SIZE:
        return exact_chi2(g)[1].assignment
    cert = best_heuristic(g)
    if cert.palette_size > cap and g.n <= EXACT_FALLBACK_SIZE:
        cert = exact_chi2(g)[1]
    return cert.assignment


def color_constructive(g: PlaneGraph) -> ColoringCertificate:
    if not isinstance(g, PlaneGraph):
        raise NotConnected("expected a connected PlaneGraph")
    delta = g.max_degree
    cap = 2 * delta + 7
    trace: list[TraceStep] = []
    failed = ""
    colouring: dict[int, int] | None = None

    if delta in REDUCIBLE_DELTAS:
        levels: list[tuple[PlaneGraph, int]] = []
        cur = g
        while cur.max_degree in REDUCIBLE_DELTAS and cur.n > BASE_SIZE:
            conf = first_configuration(cur, cur.max_degree)
            if conf is None:
                failed = f"no configuration at n={cur.n}"
                break
            nxt = apply_surgery(cur, conf.recipe)
            trace.append(TraceStep(conf.id, conf.center, conf.recipe.chords))
            if nxt.max_degree > cur.max_degree:
                failed = f"{conf.id} at {conf.center} raised Δ to {nxt.max_degree}"
                break
            levels.append((cur, conf.center))
            cur = nxt
        if not failed:
            colouring = dict(_base_colouring(cur, cap))
            if len(set(colouring.values())) > cap:
                failed = f"base graph on {cur.n} vertices needed more than {cap} colours"
            for level, v in reversed(levels if not failed else []):
                forbidden = {colouring[u] for u in second_neighborhood(level, v)}
                assert len(forbidden) <= d2_exact(level, v)
                c = _smallest_free(forbidden)
                if c >= cap:
                    failed = f"no free colour for {v}: {len(forbidden)} forbidden"
                    break
                colouring[v] = c
        if failed:
            trace.append(TraceStep("fallback", None, (), failed))
            colouring = None
        if colouring is not None:
            cert = _certificate(_adjacency(g), colouring, "constructive", trace)
            if cert.valid and cert.palette_size <= cap:
                return cert
            trace.append(TraceStep("fallback", None, (), "constructive colouring rejected"))

    cert = _fallback(g)
    cert.trace = trace
    if not cert.valid or cert.palette_size > cap:
        raise PaletteExceeded(f"{cert.palette_size} colours exceed 2Δ+7 = {cap}", trace)
    return cert
