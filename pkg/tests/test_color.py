import pytest
from hypothesis import given, settings

import oracles
from conftest import plane_graphs, reducible_graphs
from d2tk import color, gen
from d2tk.errors import NotConnected, PartialAssignment, TooLarge
from d2tk.planegraph import PlaneGraph


def test_validate_examples():
    c6 = gen.fixture("C6")
    assert color.validate(c6, {i: i % 3 for i in range(6)}) == (True, None)
    assert color.validate(c6, {i: i % 2 for i in range(6)}) == (False, (0, 2))
    assert color.validate(gen.fixture("K4"), {i: i for i in range(4)})[0]


def test_validate_needs_every_vertex():
    with pytest.raises(PartialAssignment):
        color.validate(gen.fixture("C6"), {0: 0})


@pytest.mark.parametrize("order", color.GREEDY_ORDERS)
def test_star_needs_ten_colours(order):
    star = {0: list(range(1, 10))}
    cert = color.greedy(star, order)
    assert cert.valid and cert.palette_size == 10


def test_greedy_on_c5():
    assert color.greedy(gen.fixture("C5")).palette_size == 5


@pytest.mark.parametrize("name, chi", [("C5", 5), ("K4", 4), ("C6", 3), ("W6", 7)])
def test_exact_small(name, chi):
    value, cert = color.exact_chi2(gen.fixture(name))
    assert value == chi and cert.valid and cert.method == "exact"


def test_exact_size_bound():
    with pytest.raises(TooLarge):
        color.exact_chi2(gen.fixture("grid_6x6"))


def test_constructive_examples():
    w6 = color.color_constructive(gen.fixture("W6"))
    assert w6.valid and w6.palette_size == 7
    c6 = color.color_constructive(gen.fixture("C6"))
    assert c6.valid and c6.palette_size == 3
    single = color.color_constructive(PlaneGraph({0: []}))
    assert single.palette_size == 1 and single.assignment == {0: 0}


def test_constructive_needs_a_plane_graph():
    with pytest.raises(NotConnected):
        color.color_constructive({0: [1]})


def test_constructive_trace_records_reductions():
    g = next(gen.corpus(3, 1, 60, 60, frozenset({7})))
    cert = color.color_constructive(g)
    assert cert.method == "constructive"
    # reduction stops at the base size or once Δ leaves 6..8
    assert 0 < len(cert.trace) <= g.n - color.BASE_SIZE
    assert cert.trace[0].config_id.startswith("C7")
    assert all(step.config_id != "fallback" for step in cert.trace)


@given(plane_graphs(n_hi=25))
def test_heuristics_are_valid(g):
    for order in color.GREEDY_ORDERS:
        assert color.validate(g, color.greedy(g, order).assignment)[0]
    assert color.validate(g, color.dsatur(g).assignment)[0]


@settings(max_examples=40)
@given(plane_graphs(n_hi=9))
def test_exact_matches_partition_oracle(g):
    value, cert = color.exact_chi2(g)
    assert cert.valid
    assert value == oracles.chi2(oracles.adjacency(g))


@given(reducible_graphs(n_hi=80))
def test_constructive_within_bound(g):
    cert = color.color_constructive(g)
    assert cert.valid
    assert color.validate(g, cert.assignment) == (True, None)
    assert cert.palette_size <= 2 * g.max_degree + 7
    assert cert.palette_size == len(set(cert.assignment.values()))
