"""Exact-rational discharging: initial charges, the rule sets RS6/RS7/RS8,
rule application with a materialized transfer ledger, and reporting.

Rules are data; senders and receivers use the descriptor language of
:mod:`d2tk.analysis`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .analysis import GraphAnalysis, face_predicate, vertex_predicate
from .errors import D2Error, NotConnected, UnsupportedDelta
from .planegraph import PlaneGraph

Charge = Fraction
Element = tuple[str, int]  # ("v", vertex id) or ("f", face index)

KINDS = ("vertex>face", "face>vertex", "vertex>nbr")


@dataclass(frozen=True)
class Rule:
    id: str
    kind: str
    sender: str
    receiver: str
    amount: Fraction
    edge: str | None = None

    def to_line(self) -> str:
        return f"{self.id} {self.kind} {self.sender} {self.receiver} {self.amount} {self.edge or '-'}"


@dataclass(frozen=True)
class DischargingRuleSet:
    delta_case: int
    rules: tuple[Rule, ...]

    def to_text(self) -> str:
        return f"delta {self.delta_case}\n" + "".join(r.to_line() + "\n" for r in self.rules)


def parse_rule_set(text: str) -> DischargingRuleSet:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("delta "):
        raise D2Error("rule set must start with 'delta <k>'")
    delta = int(lines[0].split()[1])
    rules = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 6 or parts[1] not in KINDS:
            raise D2Error(f"malformed rule line {ln!r}")
        rid, kind, sender, receiver, amount, edge = parts
        rules.append(Rule(rid, kind, sender, receiver, Fraction(amount),
                          None if edge == "-" else edge))
    return DischargingRuleSet(delta, tuple(rules))


def _edge_predicate(desc: str | None) -> Callable[[GraphAnalysis, int, int], bool]:
    if desc is None:
        return lambda a, u, v: True
    if desc == "special":
        return lambda a, u, v: a.special(u, v)
    if desc == "!special":
        return lambda a, u, v: not a.special(u, v)
    raise D2Error(f"unknown edge descriptor {desc!r}")


# the three rule sets

def _rules(spec: str) -> tuple[Rule, ...]:
    out = []
    for line in spec.strip().splitlines():
        rid, kind, sender, receiver, amount, *edge = line.split()
        out.append(Rule(rid, kind, sender, receiver, Fraction(amount), edge[0] if edge else None))
    return tuple(out)


_FACE_TAX = "R1 vertex>face any face:3 1/3"

RS6 = DischargingRuleSet(6, _rules(f"""
{_FACE_TAX}
R2a face>vertex face:5+ 3|bad4 1/3
R2b face>vertex face:5+ 5(4) 1/5
R2c face>vertex face:5+ 6(5)&no4nbr 1/5
R3 vertex>nbr 6(3-) any 1/6
R4a vertex>nbr 6(4) 4|6(5) 1/12
R4b vertex>nbr 6(4) 3|5(4) 1/9
R4c vertex>nbr 6(4) 5(5) 1/6 special
R4d vertex>nbr 6(4) 5(5) 1/9 !special
R5a vertex>nbr 6(5) bad4 1/12
R5b vertex>nbr 6(5) bad5 1/9
"""))

RS7 = DischargingRuleSet(7, _rules(f"""
{_FACE_TAX}
R2 face>vertex face:5+ any 1/5
R3 vertex>nbr 6(3-) any 1/6
R4 vertex>nbr 6(4) any 1/9
R5 vertex>nbr 6(5) bad5 1/9
R6 vertex>nbr 7(3-) any 2/7
R7a vertex>nbr 7(4..5) 3 1/5
R7b vertex>nbr 7(4..5) bad4 1/4
R7c vertex>nbr 7(4..5) 5(5) 2/9
R7d vertex>nbr 7(4..5) 5(4) 1/9
R7e vertex>nbr 7(4..5) 6(5) 1/18
R8a vertex>nbr 7(6) 5(5) 1/6
R8b vertex>nbr 7(6) 5(4) 1/9
R8c vertex>nbr 7(6) bad4 1/6
R9a vertex>nbr 7(7) 5(5) 1/6
R9b vertex>nbr 7(7) 5(4) 1/12
"""))

RS8 = DischargingRuleSet(8, _rules(f"""
{_FACE_TAX}
R2 face>vertex face:5+ any 1/5
R3 vertex>nbr 8(6-) 3 1/5
R4 vertex>nbr 7(5-) 4(4) 1/3
R5 vertex>nbr 8(6-) 6(5) 1/18
R6 vertex>nbr 6(5-) bad5 1/9
R7a vertex>nbr 7(6-) 4(1..3) 1/6
R7b vertex>nbr 7(6-) 5(4) 1/9
R7c vertex>nbr 7(6-) 5(5) 2/9
R8 vertex>nbr 7(7) bad5 1/9
R9a vertex>nbr 8(7-) 4(1) 1/6
R9b vertex>nbr 8(7-) 4(2) 1/4
R9c vertex>nbr 8(7-) 4(3+) 1/3
R9d vertex>nbr 8(7-) 5(4) 1/9
R9e vertex>nbr 8(7-) 5(5) 2/9
R10a vertex>nbr 8(8) 4(3)|5(4) 1/9
R10b vertex>nbr 8(8) 5(5) 2/9
"""))

RULE_SETS = {6: RS6, 7: RS7, 8: RS8}


def rule_set(delta_case: int) -> DischargingRuleSet:
    if delta_case not in RULE_SETS:
        raise UnsupportedDelta(f"no rule set for Δ={delta_case}")
    return RULE_SETS[delta_case]


# ledger


@dataclass(frozen=True)
class Transfer:
    source: Element
    target: Element
    amount: Fraction
    rule: str


@dataclass(frozen=True)
class ChargeLedger:
    initial: dict[Element, Fraction]
    transfers: tuple[Transfer, ...]
    final: dict[Element, Fraction]

    def total_initial(self) -> Fraction:
        return sum(self.initial.values(), Fraction(0))

    def total_final(self) -> Fraction:
        return sum(self.final.values(), Fraction(0))


def initial_charges(g: PlaneGraph) -> ChargeLedger:
    if not isinstance(g, PlaneGraph):
        raise NotConnected("expected a connected PlaneGraph")
    initial: dict[Element, Fraction] = {}
    for v in g.vertices:
        initial[("v", v)] = Fraction(g.degree(v) - 4)
    for f in g.faces:
        initial[("f", f.index)] = Fraction(f.length - 4)
    return ChargeLedger(initial, (), dict(initial))


def apply_rules(g: PlaneGraph, rs: DischargingRuleSet) -> ChargeLedger:
    if g.max_degree != rs.delta_case:
        raise UnsupportedDelta(f"Δ(G)={g.max_degree} but the rule set is for Δ={rs.delta_case}")
    a = GraphAnalysis(g, rs.delta_case)
    transfers: list[Transfer] = []
    for rule in rs.rules:
        batch: list[Transfer] = []
        if rule.kind == "vertex>face":
            send, take = vertex_predicate(rule.sender), face_predicate(rule.receiver)
            for v in g.vertices:
                if send(a, v):
                    for f in g.slot_faces(v):
                        if take(f):
                            batch.append(Transfer(("v", v), ("f", f.index), rule.amount, rule.id))
        elif rule.kind == "face>vertex":
            send, take = face_predicate(rule.sender), vertex_predicate(rule.receiver)
            for f in g.faces:
                if send(f):
                    for x in f.walk:
                        if take(a, x):
                            batch.append(Transfer(("f", f.index), ("v", x), rule.amount, rule.id))
        elif rule.kind == "vertex>nbr":
            send, take = vertex_predicate(rule.sender), vertex_predicate(rule.receiver)
            edge_ok = _edge_predicate(rule.edge)
            for v in g.vertices:
                if send(a, v):
                    for u in g.neighbors(v):
                        if take(a, u) and edge_ok(a, v, u):
                            batch.append(Transfer(("v", v), ("v", u), rule.amount, rule.id))
        else:
            raise D2Error(f"unknown rule kind {rule.kind!r}")
        batch.sort(key=lambda t: (t.source, t.target))
        transfers.extend(batch)

    base = initial_charges(g)
    final = dict(base.initial)
    for t in transfers:
        final[t.source] -= t.amount
        final[t.target] += t.amount
    ledger = ChargeLedger(base.initial, tuple(transfers), final)
    assert ledger.total_final() == ledger.total_initial()
    return ledger


def negativity_report(ledger: ChargeLedger) -> list[tuple[Element, Fraction]]:
    return sorted((e, c) for e, c in ledger.final.items() if c < 0)


def format_charge(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
