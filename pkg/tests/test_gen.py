import pytest
from hypothesis import given
from hypothesis import strategies as st

from d2tk import gen
from d2tk.errors import BadSpec, UnknownFixture
from d2tk.gen import GenSpec, SplitMix64
from d2tk.planegraph import dump_rotg, parse_rotg


def test_splitmix_reference_values():
    # first outputs for seed 0 of the reference SplitMix64
    rng = SplitMix64(0)
    assert rng.next_u64() == 0xE220A8397B1DCDAF
    assert rng.next_u64() == 0x6E789E6AA1B965F4


def test_below_stays_in_range():
    rng = SplitMix64(7)
    assert all(0 <= rng.below(5) < 5 for _ in range(500))


def test_n4_triangulation_is_k4():
    g = gen.random_triangulation(GenSpec(3, 4))
    assert (g.n, g.m) == (4, 6)


def test_bad_specs():
    with pytest.raises(BadSpec):
        gen.random_triangulation(GenSpec(1, 3))
    with pytest.raises(BadSpec):
        GenSpec(1, 10, edge_keep_probability=1.5)


@given(st.integers(0, 2**64 - 1), st.integers(4, 80), st.booleans())
def test_triangulation_invariants(seed, n, balance):
    g = gen.random_triangulation(GenSpec(seed, n, balance=balance))
    assert g.n == n and g.m == 3 * n - 6
    assert all(f.length == 3 for f in g.faces)


@given(st.integers(0, 2**64 - 1), st.integers(4, 60))
def test_same_seed_same_bytes(seed, n):
    spec = GenSpec(seed, n, "subsampled", edge_keep_probability=0.7)
    assert dump_rotg(gen.generate(spec)) == dump_rotg(gen.generate(spec))


@given(st.integers(0, 2**64 - 1), st.integers(4, 60))
def test_keep_one_is_identity(seed, n):
    tri = gen.random_triangulation(GenSpec(seed, n))
    assert gen.subsample(tri, GenSpec(seed, n, "subsampled", edge_keep_probability=1.0)) == tri


@given(st.integers(0, 2**64 - 1), st.integers(4, 60))
def test_keep_zero_leaves_spanning_tree(seed, n):
    tri = gen.random_triangulation(GenSpec(seed, n))
    g = gen.subsample(tri, GenSpec(seed, n, "subsampled", edge_keep_probability=0.0))
    assert g.n == n and g.m == n - 1


def test_filtered_stream_honours_delta():
    spec = GenSpec(5, 40, "subsampled", frozenset({6, 7, 8}), 0.8, balance=True)
    graphs = list(gen.stream(spec, 20))
    assert len(graphs) == 20 and all(g.max_degree in {6, 7, 8} for g in graphs)


def test_corpus_is_deterministic():
    a = [dump_rotg(g) for g in gen.corpus(4, 10, 10, 50, frozenset({7}))]
    b = [dump_rotg(g) for g in gen.corpus(4, 10, 10, 50, frozenset({7}))]
    assert a == b and all(parse_rotg(t).max_degree == 7 for t in a)


@pytest.mark.parametrize("name, n, m", [
    ("K4", 4, 6), ("C5", 5, 5), ("C6", 6, 6), ("W6", 7, 12), ("W7", 8, 14),
    ("octahedron", 6, 12), ("icosahedron", 12, 30), ("figure1", 9, 19), ("grid_3x4", 12, 17),
])
def test_fixture_sizes(name, n, m):
    g = gen.fixture(name)
    assert (g.n, g.m) == (n, m)
    assert parse_rotg(dump_rotg(g)) == g


def test_platonic_fixtures_are_regular():
    assert {gen.fixture("octahedron").degree(v) for v in range(6)} == {4}
    assert {gen.fixture("icosahedron").degree(v) for v in range(12)} == {5}


def test_unknown_fixture():
    with pytest.raises(UnknownFixture):
        gen.fixture("dodecahedron")
