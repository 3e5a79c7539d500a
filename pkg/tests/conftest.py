import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from d2tk import gen  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def plane_graphs(draw, n_lo: int = 4, n_hi: int = 40):
    seed = draw(st.integers(min_value=0, max_value=2**64 - 1))
    n = draw(st.integers(min_value=n_lo, max_value=n_hi))
    mode = draw(st.sampled_from(["triangulation", "subsampled"]))
    keep = draw(st.floats(min_value=0.0, max_value=1.0))
    balance = draw(st.booleans())
    return gen.generate(gen.GenSpec(seed, n, mode, None, keep, balance=balance))


@st.composite
def reducible_graphs(draw, n_lo: int = 8, n_hi: int = 60):
    seed = draw(st.integers(min_value=0, max_value=2**32))
    return next(gen.corpus(seed, 1, n_lo, n_hi, frozenset({6, 7, 8})))
