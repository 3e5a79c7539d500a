"""Brute-force reference implementations used as test oracles.

Nothing here imports toolkit internals beyond reading a graph's adjacency.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import combinations


def adjacency(g) -> dict[int, set[int]]:
    return {v: set(g.neighbors(v)) for v in g.vertices}


def distances_from(adj: dict[int, set[int]], s: int) -> dict[int, int]:
    dist = {s: 0}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def all_distances(adj: dict[int, set[int]]) -> dict[int, dict[int, int]]:
    return {v: distances_from(adj, v) for v in adj}


def d2(adj: dict[int, set[int]], v: int) -> int:
    return sum(1 for u, d in distances_from(adj, v).items() if 1 <= d <= 2)


def square_pairs(adj: dict[int, set[int]]) -> set[frozenset[int]]:
    dist = all_distances(adj)
    return {frozenset((u, v)) for u, v in combinations(sorted(adj), 2)
            if dist[u].get(v, 99) <= 2}


def proper(g_adj: dict[int, set[int]], h_adj: dict[int, set[int]]) -> bool:
    """Every pair within distance 2 in g that survives in h is within distance 2 in h."""
    dg, dh = all_distances(g_adj), all_distances(h_adj)
    for u, v in combinations(sorted(set(g_adj) & set(h_adj)), 2):
        if dg[u].get(v, 99) <= 2 and dh[u].get(v, 99) > 2:
            return False
    return True


def chi2(adj: dict[int, set[int]]) -> int:
    """Minimum number of colour classes over all colourings up to renaming.

    Enumerates restricted-growth strings, i.e. every set partition of the
    vertices, and keeps those whose classes are independent in the square.
    """
    verts = sorted(adj)
    clash = square_pairs(adj)
    n = len(verts)
    if n == 0:
        return 0
    best = n
    col = [0] * n

    def extend(i: int, used: int) -> None:
        nonlocal best
        if used >= best:
            return
        if i == n:
            best = used
            return
        for c in range(used + 1):
            if any(col[j] == c and frozenset((verts[i], verts[j])) in clash for j in range(i)):
                continue
            col[i] = c
            extend(i + 1, max(used, c + 1))

    extend(0, 0)
    return best


def all_colourings_min(adj: dict[int, set[int]]) -> int:
    """Minimum palette by scanning every colouring in range(k)^n, k = 1, 2, ..."""
    from itertools import product

    verts = sorted(adj)
    clash = [(verts.index(min(p)), verts.index(max(p))) for p in square_pairs(adj)]
    for k in range(1, len(verts) + 1):
        for col in product(range(k), repeat=len(verts)):
            if all(col[i] != col[j] for i, j in clash):
                return k
    return 0


def charges(g) -> dict[tuple[str, int], Fraction]:
    out = {("v", v): Fraction(g.degree(v) - 4) for v in g.vertices}
    for f in g.faces:
        out[("f", f.index)] = Fraction(f.length - 4)
    return out
