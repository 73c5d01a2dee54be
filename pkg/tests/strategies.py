"""Hypothesis strategies for random connected graphs"""

from hypothesis import strategies as st

from core.graph import random_connected

P_VALUES = (0.3, 0.5, 0.8)


@st.composite
def connected_graphs(draw, min_n=2, max_n=10):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    p = draw(st.sampled_from(P_VALUES))
    seed = draw(st.integers(min_value=0, max_value=2 ** 32 - 1))
    return random_connected(n, p, seed)
