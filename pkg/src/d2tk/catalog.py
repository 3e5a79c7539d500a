"""Reducible configurations: one detector and reduction recipe per forbidden
structure for Δ = 6, 7, 8, plus the certificate checker for reductions.

A detector evaluates its trigger on the centre's profile.  When it fires,
the entry's recipes are tried in order over every labeling v_1..v_k of the
centre's neighbours (rotations, then reflections).  A recipe applies under a
labeling when its guard holds, its chords do not cross, no neighbour would
exceed degree Δ, and every pair of former neighbours stays within distance 2.
A trigger that fires with no applicable recipe is reported as a near miss
instead of a configuration.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator, Sequence

from .analysis import (
    GraphAnalysis, VertexProfile, d2_exact, in_two_triangles, second_neighborhood,
)
from .errors import UnsupportedDelta
from .planegraph import PlaneGraph, Surgery, chords_cross, perform_surgery


@dataclass(frozen=True)
class Labeling:
    """Neighbours v_1..v_k of a centre with the face length between v_i and v_{i+1}."""

    verts: tuple[int, ...]
    lengths: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.verts[(i - 1) % len(self.verts)]

    def flen(self, i: int) -> int:
        return self.lengths[(i - 1) % len(self.lengths)]

    def tri(self, *idx: int) -> bool:
        return all(self.flen(i) == 3 for i in idx)

    def quad(self, *idx: int) -> bool:
        return all(self.flen(i) == 4 for i in idx)


def labelings(p: VertexProfile) -> Iterator[Labeling]:
    nb, ln = p.neighbors, p.slot_lengths
    k = len(nb)
    seen = set()
    for r in range(k):
        lab = Labeling(nb[r:] + nb[:r], ln[r:] + ln[:r])
        seen.add(lab.verts)
        yield lab
    for r in range(k):
        verts = tuple(nb[(r - i) % k] for i in range(k))
        if verts in seen:
            continue
        seen.add(verts)
        yield Labeling(verts, tuple(ln[(r - i - 1) % k] for i in range(k)))


Guard = Callable[[GraphAnalysis, int, Labeling], bool]


def _always(a: GraphAnalysis, v: int, lab: Labeling) -> bool:
    return True


@dataclass(frozen=True)
class Recipe:
    """Chords as 1-based labeling indices; ``None`` means a fan from v_1."""

    name: str
    chords: tuple[tuple[int, int], ...] | None
    guard: Guard = _always
    clauses: frozenset[str] | None = None

    def pairs(self, k: int) -> tuple[tuple[int, int], ...]:
        if self.chords is None:
            return tuple((1, j) for j in range(2, k + 1))
        return self.chords


Trigger = Callable[[GraphAnalysis, VertexProfile], list[str]]


@dataclass(frozen=True)
class Entry:
    id: str
    delta_case: int
    title: str
    degrees: frozenset[int] | None
    trigger: Trigger
    recipes: tuple[Recipe, ...]


@dataclass(frozen=True)
class ReducibleConfiguration:
    id: str
    delta_case: int
    center: int
    witnesses: tuple[int, ...]
    recipe: Surgery
    clause: str = ""
    recipe_name: str = ""

    def line(self) -> str:
        chords = ",".join(f"{a}-{b}" for a, b in self.recipe.chords) or "-"
        wit = " ".join(str(w) for w in self.witnesses)
        return (f"{self.id} {self.center} [{wit}] delete={self.recipe.delete} "
                f"chords={chords} clause={self.clause}")

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "delta_case": self.delta_case,
            "center": self.center,
            "witnesses": list(self.witnesses),
            "delete": self.recipe.delete,
            "chords": [list(c) for c in self.recipe.chords],
            "clause": self.clause,
            "recipe": self.recipe_name,
        }


@dataclass(frozen=True)
class NearMiss:
    """A trigger that fired although none of the entry's recipes applies."""

    id: str
    center: int
    clauses: tuple[str, ...]


def _fired(**conds: bool) -> list[str]:
    return [name for name, ok in conds.items() if ok]


# applicability of a recipe under a labeling


def _applicable(a: GraphAnalysis, v: int, lab: Labeling, recipe: Recipe
                ) -> tuple[tuple[int, int], ...] | None:
    g = a.g
    k = len(lab.verts)
    pos = {u: i for i, u in enumerate(g.neighbors(v))}
    chords: list[tuple[int, int]] = []
    seen: set[frozenset[int]] = set()
    for i, j in recipe.pairs(k):
        x, y = lab[i], lab[j]
        key = frozenset((x, y))
        if x == y or key in seen:
            continue
        seen.add(key)
        chords.append((x, y))
    added = [(x, y) for x, y in chords if not g.has_edge(x, y)]
    for c1, c2 in combinations(added, 2):
        if chords_cross(k, (pos[c1[0]], pos[c1[1]]), (pos[c2[0]], pos[c2[1]])):
            return None
    gain = Counter()
    for x, y in added:
        gain[x] += 1
        gain[y] += 1
    limit = a.delta_case
    if any(g.degree(x) - 1 + gain[x] > limit for x in lab.verts):
        return None
    extra: dict[int, set[int]] = {x: set() for x in lab.verts}
    for x, y in added:
        extra[x].add(y)
        extra[y].add(x)
    adj = {x: (g.neighbor_set(x) - {v}) | extra[x] for x in lab.verts}
    for x, y in combinations(lab.verts, 2):
        if y in adj[x]:
            continue
        if not adj[x] & adj[y]:
            return None
    return tuple(chords)


def _realize(a: GraphAnalysis, entry: Entry, p: VertexProfile, clauses: list[str]
             ) -> ReducibleConfiguration | None:
    """First recipe with an applicable labeling; among its labelings, the
    earliest one whose chords are all new edges, else the one with fewest
    chords already present."""
    g = a.g
    for recipe in entry.recipes:
        if recipe.clauses is not None and not recipe.clauses.intersection(clauses):
            continue
        best = None
        for lab in labelings(p):
            if not recipe.guard(a, p.vertex, lab):
                continue
            chords = _applicable(a, p.vertex, lab, recipe)
            if chords is None:
                continue
            present = sum(1 for x, y in chords if g.has_edge(x, y))
            if best is None or present < best[0]:
                best = (present, lab, chords)
            if present == 0:
                break
        if best is None:
            continue
        _, lab, chords = best
        clause = clauses[0] if recipe.clauses is None else next(
            c for c in clauses if c in recipe.clauses)
        return ReducibleConfiguration(entry.id, entry.delta_case, p.vertex, lab.verts,
                                      Surgery(p.vertex, chords), clause, recipe.name)
    return None


# shared recipe pieces


def _fan_from(desc: str) -> Guard:
    return lambda a, v, lab: a.matches(lab[1], desc)


def _support_fan(a: GraphAnalysis, v: int, lab: Labeling) -> bool:
    return a.support(v, lab[1])


def _tri(*idx: int) -> Guard:
    return lambda a, v, lab: lab.tri(*idx)


MIN_DEGREE = Recipe("chord-neighbours", None)
THREE_TRI = Recipe("v1v3", ((1, 3),), _tri(1), frozenset({"m3"}))
THREE_QUAD = Recipe("v1v3", ((1, 3),), lambda a, v, lab: lab.quad(1, 2), frozenset({"m4"}))
TWO_TRI_ADJ = Recipe("v2v4", ((2, 4),), _tri(1, 2))
TWO_TRI_OPP = Recipe("v2v3+v1v4", ((2, 3), (1, 4)), _tri(1, 3))
THREE_TRI_4 = Recipe("v1v4", ((1, 4),), _tri(1, 2, 3))
FOUR_TRI_5 = Recipe("v1v5", ((1, 5),), _tri(1, 2, 3, 4))
DELETE = Recipe("delete", ())
SIX_FIVE_C = Recipe("v1v6+v3v1+v3v5", ((1, 6), (3, 1), (3, 5)), _tri(1, 2, 3, 4, 5))
SUPPORT_FAN = Recipe("support-fan", None, _support_fan)


def _degrees(*ds: int) -> frozenset[int]:
    return frozenset(ds)


# Δ = 6


def _t6_1(a, p):
    return _fired(low=p.degree <= 2)


def _t6_4(a, p):
    return _fired(nbr=a.count(p.vertex, "5-") > 0)


def _t6_7(a, p):
    v = p.vertex
    n4 = p.n(4)
    return _fired(nbr=p.m3 == 1 and (n4 >= 2 or (n4 >= 1 and a.count(v, "bad5") > 0)))


def _t6_8(a, p):
    return _fired(count=p.m3 == 1 and p.n(6) <= p.m4)


def _two_low(a, v, lab):
    return a.count(v, "5-") >= 2


C68_RECIPES = (
    Recipe("fan-v1", ((1, 3), (1, 4)),
           lambda a, v, lab: lab.tri(1) and a.deg(lab[1]) <= 5 and _two_low(a, v, lab)),
    Recipe("fan-v2", ((2, 3), (2, 4)),
           lambda a, v, lab: lab.tri(1) and a.deg(lab[2]) <= 5 and _two_low(a, v, lab)),
    Recipe("v3v4+v3v2+v4v1", ((3, 4), (3, 2), (4, 1)),
           lambda a, v, lab: lab.tri(1) and a.deg(lab[3]) <= 5 and a.deg(lab[4]) <= 5),
    Recipe("v2v3+v1v4", ((2, 3), (1, 4)), lambda a, v, lab: lab.tri(1) and lab.quad(2, 3, 4)),
)


def _t6_9(a, p):
    return _fired(m4=p.m3 == 2 and p.m4 >= 2)


def _t6_10(a, p):
    return _fired(count=p.m3 == 2 and p.m4 <= 1 and p.n(6) < p.m4 + 3)


def _t6_11(a, p):
    v = p.vertex
    return _fired(four=p.m3 == 2 and p.n(4) > 0,
                  bad5=p.m3 == 2 and a.count(v, "bad5") > 0)


C611_RECIPES = (
    Recipe("fan-4", None, _fan_from("4"), frozenset({"four"})),
    Recipe("fan-bad5", ((1, 3), (1, 4)),
           lambda a, v, lab: a.matches(lab[1], "bad5") and a.g.has_edge(lab[1], lab[2]),
           frozenset({"bad5"})),
)


def _t6_12(a, p):
    v = p.vertex
    n4 = p.n(4)
    return _fired(nbr=p.m3 == 4 and (n4 >= 2 or (n4 >= 1 and a.count(v, "5(4)") > 0)))


def _t6_13(a, p):
    light = a.count(p.vertex, "6(5-)")
    return _fired(m4_0=p.m3 == 4 and p.m4 == 0 and light < 2,
                  m4_1=p.m3 == 4 and p.m4 == 1 and light < 3)


def _t6_14(a, p):
    if p.m3 != 4:
        return []
    fives = [u for u in p.neighbors if a.kd(u) == (5, 4)]
    far = any(not a.g.has_edge(x, y) for x, y in combinations(fives, 2))
    return _fired(nonadjacent=far)


def _t6_15(a, p):
    v = p.vertex
    if p.m3 != 5:
        return []
    return _fired(four=p.n(4) > 0, bad5=a.count(v, "bad5") > 0,
                  six6=a.count(v, "6(6)") > 0, fives=p.n(5) >= 2)


def _t6_16(a, p):
    v = p.vertex
    if p.m3 != 5:
        return []
    tedges = [(x, y) for x, y in p.boundary_edges if in_two_triangles(a.g, x, y)]
    if not tedges:
        return _fired(b=a.count(v, "6(4-)") < 4)
    heavy = a.count(v, "!6(5-)") > 0
    unspecial = any(not a.special(v, u) for x, y in tedges for u in p.neighbors
                    if u not in (x, y))
    return _fired(a_neighbour=heavy, a_special=unspecial)


def _t6_17(a, p):
    v = p.vertex
    if p.m3 != 5:
        return []
    n4, b5, light = p.n(4), a.count(v, "bad5"), a.count(v, "6(4-)")
    return _fired(
        n4=n4 >= 4,
        a=n4 == 3 and b5 >= 1,
        b=n4 == 2 and b5 >= 3,
        c=n4 == 2 and b5 == 2 and light < 2,
        d=n4 == 1 and b5 >= 4,
        e=n4 == 1 and b5 == 3 and light == 0,
        f=n4 == 0 and b5 >= 5,
        g=n4 == 0 and p.m4 == 1 and b5 == 4 and light < 2,
    )


SIX_FIVE_RECIPES = (
    Recipe("fan-4", None,
           lambda a, v, lab: a.deg(lab[1]) == 4 and lab.tri(len(lab.verts), 1)),
    Recipe("v1v6+v2v4+v2v6", ((1, 6), (2, 4), (2, 6)), _tri(1, 2, 3, 4, 5)),
    SIX_FIVE_C,
)


def _m3_at_least(n):
    return lambda a, p: _fired(m3=p.m3 >= n)


def _three_vertex(a, p):
    return _fired(m3=p.m3 >= 1, m4=p.m4 >= 2)


def _kk_nbr(a, p):
    return _fired(nbr=any(a.kd(u)[0] == a.kd(u)[1] for u in p.neighbors))


def _is_kk(a, v, lab):
    k, d = a.kd(lab[2])
    return k == d


ENTRIES_6 = (
    Entry("C6.1", 6, "vertex of degree at most 2", _degrees(0, 1, 2), _t6_1, (MIN_DEGREE,)),
    Entry("C6.2", 6, "3-vertex incident to a 3-face", _degrees(3),
          lambda a, p: _fired(m3=p.m3 >= 1), (THREE_TRI,)),
    Entry("C6.3", 6, "3-vertex incident to two 4-faces", _degrees(3),
          lambda a, p: _fired(m4=p.m4 >= 2), (THREE_QUAD,)),
    Entry("C6.4", 6, "3-vertex with a 5- neighbour", _degrees(3), _t6_4,
          (Recipe("fan", None, _fan_from("5-")),)),
    Entry("C6.5", 6, "4-vertex with three 3-faces", _degrees(4),
          lambda a, p: _fired(m3=p.m3 >= 3), (THREE_TRI_4,)),
    Entry("C6.6", 6, "4-vertex with a k(k)-neighbour", _degrees(4), _kk_nbr,
          (Recipe("v2v4", ((2, 4),), _is_kk),)),
    Entry("C6.7", 6, "4(1)-vertex with a 4-neighbour and another 4- or bad 5-neighbour",
          _degrees(4), _t6_7, (Recipe("fan-4", None, _fan_from("4")),)),
    Entry("C6.8", 6, "4(1)-vertex with n6 <= m4", _degrees(4), _t6_8, C68_RECIPES),
    Entry("C6.9", 6, "4(2)-vertex with two 4-faces", _degrees(4), _t6_9,
          (TWO_TRI_ADJ, TWO_TRI_OPP)),
    Entry("C6.10", 6, "4(2)-vertex with n6 < m4 + 3", _degrees(4), _t6_10,
          (TWO_TRI_ADJ, TWO_TRI_OPP)),
    Entry("C6.11", 6, "4(2)-vertex with a 4- or bad 5-neighbour", _degrees(4), _t6_11,
          C611_RECIPES),
    Entry("C6.12", 6, "5(4)-vertex with a 4-neighbour and another 4- or 5(4)-neighbour",
          _degrees(5), _t6_12, (FOUR_TRI_5,)),
    Entry("C6.13", 6, "5(4)-vertex with too few 6(5-)-neighbours", _degrees(5), _t6_13,
          (FOUR_TRI_5,)),
    Entry("C6.14", 6, "5(4)-vertex with two non-adjacent 5(4)-neighbours", _degrees(5),
          _t6_14, (FOUR_TRI_5,)),
    Entry("C6.15", 6, "5(5)-vertex with a 4-, bad 5- or 6(6)-neighbour, or two 5-neighbours",
          _degrees(5), _t6_15, (DELETE,)),
    Entry("C6.16", 6, "5(5)-vertex breaking the special-edge structure", _degrees(5),
          _t6_16, (DELETE,)),
    Entry("C6.17", 6, "6(5)-vertex with too many 4- or bad 5-neighbours", _degrees(6),
          _t6_17, SIX_FIVE_RECIPES),
)


# Δ = 7


def _t7_6(a, p):
    return _fired(nbr=a.count(p.vertex, "5(5)") > 0)


def _is_55_at_2(a, v, lab):
    return a.kd(lab[2]) == (5, 5)


def _t7_7(a, p):
    v = p.vertex
    n4 = p.n(4)
    return _fired(b=p.m3 >= 1 and n4 >= 2,
                  c=p.m3 >= 1 and n4 >= 1 and a.count(v, "5(4)") > 0)


def _t7_8(a, p):
    v = p.vertex
    if p.m3 != 1:
        return []
    return _fired(
        a=p.m4 == 2 and a.count(v, "7(5-)") == 0 and a.count(v, "7(6)") < 2,
        b=p.m4 == 3 and a.count(v, "7(6-)") < 2,
    )


def _t7_9(a, p):
    v = p.vertex
    if p.m3 != 2:
        return []
    c75, c76m, c64, c76 = (a.count(v, d) for d in ("7(5-)", "7(6-)", "6(4-)", "7(6)"))
    return _fired(
        d2=p.d2 <= 20,
        a=p.m4 == 0 and not ((c75 >= 1 and c64 >= 1) or c76m >= 2),
        b=p.m4 == 1 and not ((c76m >= 2 and c64 >= 2) or c76m >= 3),
        c=p.m4 == 2 and not ((c75 >= 2 and c76 >= 2) or c75 >= 3),
    )


def _t7_10(a, p):
    v = p.vertex
    if p.m3 != 3:
        return []
    c75, c76, c64 = (a.count(v, d) for d in ("7(5-)", "7(6)", "6(4-)"))
    allowed_a = (c75 == 4 or (c75 == 3 and c76 == 1) or (c75 == 3 and c64 == 1)
                 or (c75 == 2 and c76 == 2))
    return _fired(d2=p.d2 <= 20, a=p.m4 == 0 and not allowed_a, b=p.m4 == 1 and c75 < 4)


def _t7_11(a, p):
    v = p.vertex
    if p.m3 != 4:
        return []
    c55, n4 = a.count(v, "5(5)"), p.n(4)
    good = a.count(v, "6(5-)|7")
    return _fired(
        d2=p.d2 <= 20,
        a=c55 >= 2,
        b=c55 >= 1 and n4 >= 1,
        c=a.count(v, "7(6)") >= 1 and n4 >= 2,
        d=p.m4 == 0 and good < 2,
        e=p.m4 == 1 and good < 3,
        f=p.m4 == 1 and a.count(v, "7(7)") >= 1 and good < 4,
    )


def _t7_12(a, p):
    v = p.vertex
    if p.m3 != 5:
        return []
    n5, c6, c75 = p.n(5), p.n(6), a.count(v, "7(5-)")
    c65, c66, c7 = a.count(v, "6(5-)"), a.count(v, "6(6)"), p.n(7)
    return _fired(
        d2=p.d2 <= 20,
        a=n5 >= 3,
        b=a.count(v, "5(4+)|6(6)") >= 2 or c7 == 0,
        c=c6 >= 4 and c75 == 0,
        d=n5 == 0 and c65 >= 1 and c66 >= 1 and (c7 < 3 or c75 == 0),
        e=n5 == 1 and (c66 >= 1 or c6 >= 3),
        f=n5 == 1 and c65 == 1 and c75 == 0,
        g=n5 == 1 and c65 == 2 and c75 < 2,
        h=n5 == 2 and c75 < 3,
    )


def _t7_13(a, p):
    v = p.vertex
    if p.m3 != 5:
        return []
    b5 = a.count(v, "bad5")
    return _fired(five=b5 >= 5,
                  four=p.m4 == 1 and b5 == 4 and a.count(v, "7(5-)") < 2)


def _has_support(a, p):
    return any(a.support(p.vertex, u) for u in p.neighbors)


def _long_faces(p):
    return sum(1 for ell in p.slot_lengths if ell >= 5)


def _t7_14(a, p):
    v = p.vertex
    sup = _has_support(a, p)
    n4 = p.n(4)
    m35 = p.m3 == 5
    return _fired(
        d2=sup and p.d2 <= 20,
        b=4 <= p.m3 <= 5 and n4 == 7,
        g=m35 and n4 == 4 and sup and a.count(v, "5(4)") > 0 and a.count(v, "5(5)") > 0
        and p.n(7) == 0,
        h=m35 and n4 >= 3 and sup and p.n(3) > 0 and a.count(v, "poor") >= 5,
        i=m35 and n4 == 5 and (a.count(v, "5(4)") >= 2 or (
            (a.count(v, "5(4)") >= 1 or a.count(v, "6(5)") >= 2) and _long_faces(p) < 2)),
        j=m35 and n4 == 6 and (_long_faces(p) < 2 or a.count(v, "bad5") > 0),
    )


ENTRIES_7 = (
    Entry("C7.1", 7, "vertex of degree at most 2", _degrees(0, 1, 2), _t6_1, (MIN_DEGREE,)),
    Entry("C7.2", 7, "3-vertex incident to a 3-face", _degrees(3),
          lambda a, p: _fired(m3=p.m3 >= 1), (THREE_TRI,)),
    Entry("C7.3", 7, "3-vertex incident to two 4-faces", _degrees(3),
          lambda a, p: _fired(m4=p.m4 >= 2), (THREE_QUAD,)),
    Entry("C7.4", 7, "3-vertex with a 6- neighbour", _degrees(3),
          lambda a, p: _fired(nbr=a.count(p.vertex, "6-") > 0),
          (Recipe("fan", None, _fan_from("6-")),)),
    Entry("C7.5", 7, "4(4)-vertex", _degrees(4), lambda a, p: _fired(m3=p.m3 == 4), (DELETE,)),
    Entry("C7.6", 7, "4-vertex with a 5(5)-neighbour", _degrees(4), _t7_6,
          (Recipe("v2v4", ((2, 4),), _is_55_at_2),)),
    Entry("C7.7", 7, "4-vertex with m3 >= 1 and two 4- or a 4- and a 5(4)-neighbour",
          _degrees(4), _t7_7, (Recipe("fan-4", None, _fan_from("4")),)),
    Entry("C7.8", 7, "4(1)-vertex lacking 7-neighbours", _degrees(4), _t7_8, (
        Recipe("v2v3+v3v4+v1v4", ((2, 3), (3, 4), (1, 4)), _tri(1), frozenset({"a"})),
        Recipe("v2v3+v1v4", ((2, 3), (1, 4)), _tri(1), frozenset({"b"})))),
    Entry("C7.9", 7, "4(2)-vertex with a light neighbourhood", _degrees(4), _t7_9,
          (TWO_TRI_ADJ, TWO_TRI_OPP)),
    Entry("C7.10", 7, "4(3)-vertex with a light neighbourhood", _degrees(4), _t7_10,
          (THREE_TRI_4,)),
    Entry("C7.11", 7, "5(4)-vertex with a light neighbourhood", _degrees(5), _t7_11,
          (FOUR_TRI_5,)),
    Entry("C7.12", 7, "5(5)-vertex with a light neighbourhood", _degrees(5), _t7_12,
          (DELETE,)),
    Entry("C7.13", 7, "6(5)-vertex with too many bad 5-neighbours", _degrees(6), _t7_13,
          (SIX_FIVE_C,)),
    Entry("C7.14", 7, "7-vertex with a support neighbour and small second neighbourhood",
          _degrees(7), _t7_14, (SUPPORT_FAN,)),
)


# Δ = 8


def _t8_3(a, p):
    v = p.vertex
    c86 = a.count(v, "8(6-)")
    return _fired(a=a.count(v, "6-") > 0,
                  b=p.m4 == 0 and c86 < 2,
                  c=p.m4 == 1 and c86 < 3)


def _t8_4(a, p):
    v = p.vertex
    return _fired(
        a=p.m3 == 1 and p.n(4) >= 2,
        b=p.m3 == 2 and a.count(v, "5-") >= 2,
        c=p.m3 >= 3 and (p.n(4) >= 1 or a.count(v, "5(4+)") >= 1),
    )


def _t8_5(a, p):
    return _fired(count=p.m3 == 1 and p.m4 >= 2 and a.count(p.vertex, "7+") < 2)


def _t8_6(a, p):
    v = p.vertex
    if p.m3 != 2:
        return []
    c87, mid = a.count(v, "8(7-)"), a.count(v, "7(6-)|8(7-)")
    c76 = a.count(v, "7(6-)")
    allowed_c = (c87 == 1 and c76 == 3) or (c87 == 2 and c76 >= 1) or c87 >= 3
    return _fired(
        d2=p.d2 <= 22,
        a=p.m4 == 0 and mid < 2,
        b=p.m4 == 1 and not (c87 >= 2 or mid >= 3),
        c=p.m4 == 2 and not allowed_c,
    )


def _t8_7(a, p):
    v = p.vertex
    if p.m3 != 3:
        return []
    c87, c76, c88 = a.count(v, "8(7-)"), a.count(v, "7(6-)"), a.count(v, "8(8)")
    allowed_a = ((c87 == 1 and c76 == 3) or (c87 == 2 and c76 >= 1)
                 or (c87 == 2 and c88 == 2) or c87 >= 3)
    allowed_b = (c87 == 2 and c76 == 2) or c87 >= 3
    return _fired(d2=p.d2 <= 22, a=p.m4 == 0 and not allowed_a,
                  b=p.m4 == 1 and not allowed_b)


def _t8_8(a, p):
    v = p.vertex
    if p.m3 != 4:
        return []
    c87, c75 = a.count(v, "8(7-)"), a.count(v, "7(5-)")
    return _fired(d2=p.d2 <= 22, nbrs=not ((c87 == 3 and c75 == 1) or c87 == 4))


def _t8_9(a, p):
    good = a.count(p.vertex, "6(5-)|7+")
    return _fired(a=p.m3 == 4 and p.m4 == 0 and good < 2,
                  b=p.m3 == 4 and p.m4 == 1 and good < 3)


def _t8_10(a, p):
    v = p.vertex
    if p.m3 != 5:
        return []
    return _fired(a=a.count(v, "5(5)") >= 1 and (p.n(4) >= 1 or a.count(v, "5(4)") >= 1),
                  b=a.count(v, "4|5(5)") >= 2)


def _t8_11(a, p):
    v = p.vertex
    if p.m3 != 5:
        return []
    n4, n5 = p.n(4), p.n(5)
    big = a.count(v, "7(6-)|8")
    return _fired(
        a=n4 == 1 and big < 3,
        b=n4 == 0 and n5 == 0 and not (
            a.count(v, "8(7-)") >= 3 or (a.count(v, "6(5-)|7(6-)|8") >= 4 and big >= 2)),
        c=n4 == 0 and n5 == 1 and not (big >= 3 or (a.count(v, "6(5-)") >= 2 and big >= 2)),
        d=n4 == 0 and n5 == 2 and big < 3,
    )


def _t8_12(a, p):
    v = p.vertex
    if p.m3 != 5:
        return []
    b5 = a.count(v, "5(4+)")
    return _fired(five=b5 >= 5,
                  four=p.m4 == 1 and b5 == 4 and a.count(v, "8(6-)") < 2)


def _t8_13(a, p):
    v = p.vertex
    sup = _has_support(a, p)
    is76 = p.degree == 7 and p.m3 == 6
    low = a.count(v, "4|5(4)")
    c55 = a.count(v, "5(5)")
    return _fired(
        d2=sup and p.d2 <= 22,
        b=is76 and a.count(v, "4(1+)") >= 5 and p.n(5) > 0,
        c=is76 and c55 >= 1 and low >= 5,
        d=is76 and c55 >= 2 and low >= 4,
        e=is76 and c55 >= 3 and (p.n(4) >= 2 or low >= 3),
        f=p.degree == 7 and p.m3 == 7 and a.count(v, "5(4+)") >= 6,
        g=p.degree == 8 and p.m3 == 7 and sup and a.count(v, "4(2-)|5(5)") >= 7,
    )


ENTRIES_8 = (
    Entry("C8.1", 8, "vertex of degree at most 2", _degrees(0, 1, 2), _t6_1, (MIN_DEGREE,)),
    Entry("C8.2", 8, "3-vertex incident to a 3-face or two 4-faces", _degrees(3),
          _three_vertex, (THREE_TRI, THREE_QUAD)),
    Entry("C8.3", 8, "3-vertex with a light neighbourhood", _degrees(3), _t8_3,
          (Recipe("fan", None, _fan_from("7-")),)),
    Entry("C8.4", 8, "4-vertex with m3 >= 1 and too many light neighbours", _degrees(4),
          _t8_4, (Recipe("fan", None, _fan_from("5-")),)),
    Entry("C8.5", 8, "4(1)-vertex with two 4-faces and at most one 7+ neighbour",
          _degrees(4), _t8_5,
          (Recipe("fan-v1", ((1, 3), (1, 4)),
                  lambda a, v, lab: lab.tri(1) and a.deg(lab[1]) <= 6),)),
    Entry("C8.6", 8, "4(2)-vertex with a light neighbourhood", _degrees(4), _t8_6,
          (TWO_TRI_ADJ, TWO_TRI_OPP)),
    Entry("C8.7", 8, "4(3)-vertex with a light neighbourhood", _degrees(4), _t8_7,
          (THREE_TRI_4,)),
    Entry("C8.8", 8, "4(4)-vertex with a light neighbourhood", _degrees(4), _t8_8,
          (DELETE,)),
    Entry("C8.9", 8, "5(4)-vertex with too few heavy neighbours", _degrees(5), _t8_9,
          (FOUR_TRI_5,)),
    Entry("C8.10", 8, "5(5)-vertex next to 4- or 5(5)-vertices", _degrees(5), _t8_10,
          (DELETE,)),
    Entry("C8.11", 8, "5(5)-vertex with a light neighbourhood", _degrees(5), _t8_11,
          (DELETE,)),
    Entry("C8.12", 8, "6(5)-vertex with too many 5(4+)-neighbours", _degrees(6), _t8_12,
          (SIX_FIVE_C,)),
    Entry("C8.13", 8, "7+-vertex with a support neighbour and small second neighbourhood",
          _degrees(7, 8), _t8_13, (SUPPORT_FAN,)),
)

CATALOG: dict[int, tuple[Entry, ...]] = {6: ENTRIES_6, 7: ENTRIES_7, 8: ENTRIES_8}


def entries(delta_case: int) -> tuple[Entry, ...]:
    if delta_case not in CATALOG:
        raise UnsupportedDelta(f"no catalog for Δ={delta_case}")
    return CATALOG[delta_case]


def entry(entry_id: str) -> Entry:
    for group in CATALOG.values():
        for e in group:
            if e.id == entry_id:
                return e
    raise KeyError(entry_id)


# detection


@dataclass(frozen=True)
class DetectionReport:
    configurations: tuple[ReducibleConfiguration, ...]
    near_misses: tuple[NearMiss, ...]


def _scan(g: PlaneGraph, delta_case: int, first_only: bool) -> DetectionReport:
    if g.max_degree != delta_case:
        raise UnsupportedDelta(f"Δ(G)={g.max_degree} but detection was asked for Δ={delta_case}")
    a = GraphAnalysis(g, delta_case)
    found: list[ReducibleConfiguration] = []
    misses: list[NearMiss] = []
    for e in entries(delta_case):
        for v in g.vertices:
            if e.degrees is not None and g.degree(v) not in e.degrees:
                continue
            p = a.profile(v)
            clauses = e.trigger(a, p)
            if not clauses:
                continue
            conf = _realize(a, e, p, clauses)
            if conf is None:
                misses.append(NearMiss(e.id, v, tuple(clauses)))
                continue
            found.append(conf)
            if first_only:
                return DetectionReport(tuple(found), tuple(misses))
    return DetectionReport(tuple(found), tuple(misses))


def detect_report(g: PlaneGraph, delta_case: int) -> DetectionReport:
    return _scan(g, delta_case, first_only=False)


def detect(g: PlaneGraph, delta_case: int) -> list[ReducibleConfiguration]:
    """Every catalog match, ordered by (entry id, centre)."""
    return list(_scan(g, delta_case, first_only=False).configurations)


def first_configuration(g: PlaneGraph, delta_case: int) -> ReducibleConfiguration | None:
    found = _scan(g, delta_case, first_only=True).configurations
    return found[0] if found else None


def retrigger(g: PlaneGraph, c: ReducibleConfiguration) -> list[str]:
    """Re-evaluate the trigger of ``c`` from a fresh profile."""
    a = GraphAnalysis(g, c.delta_case)
    return entry(c.id).trigger(a, a.profile(c.center))


# certificates


@dataclass(frozen=True)
class ReducibilityCertificate:
    proper: bool
    shrinks: bool
    headroom: int
    delta_ok: bool

    @property
    def passed(self) -> bool:
        return self.proper and self.shrinks and self.headroom >= 0 and self.delta_ok


def _within_two(h: PlaneGraph, x: int, y: int) -> bool:
    return h.has_edge(x, y) or bool(h.neighbor_set(x) & h.neighbor_set(y))


def pairs_preserved(g: PlaneGraph, h: PlaneGraph, centre: int) -> bool:
    """Properness of ``h`` for a reduction that deleted ``centre`` from ``g``.

    Only pairs whose every short path runs through ``centre`` can lose
    distance <= 2, and those are pairs of former neighbours of ``centre``.
    """
    return all(_within_two(h, x, y) for x, y in combinations(g.neighbors(centre), 2))


def is_proper(g: PlaneGraph, h: PlaneGraph) -> bool:
    """Exhaustive check: every pair within distance 2 in ``g`` stays so in ``h``."""
    for x in g.vertices:
        if x not in h:
            continue
        near_h = second_neighborhood(h, x)
        for y in second_neighborhood(g, x):
            if y in h and y not in near_h:
                return False
    return True


def certify(g: PlaneGraph, c: ReducibleConfiguration) -> ReducibilityCertificate:
    h = perform_surgery(g, c.recipe).graph
    return ReducibilityCertificate(
        proper=pairs_preserved(g, h, c.center),
        shrinks=h.n + h.m < g.n + g.m,
        headroom=2 * g.max_degree + 6 - d2_exact(g, c.center),
        delta_ok=h.max_degree <= g.max_degree,
    )


def summarize(configs: Sequence[ReducibleConfiguration]) -> dict[str, int]:
    return dict(sorted(Counter(c.id for c in configs).items()))
