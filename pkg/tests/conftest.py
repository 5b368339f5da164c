import numpy as np
import pytest
from hypothesis import strategies as st

from netentangle import Graph


@st.composite
def graphs(draw, min_n=2, max_n=10, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = {p for p, k in zip(pairs, keep) if k}
    if connected:
        # spanning path keeps the graph connected without fixing its shape
        order = draw(st.permutations(range(n)))
        edges |= {(min(a, b), max(a, b)) for a, b in zip(order[:-1], order[1:])}
    return Graph(n, frozenset(edges))


@st.composite
def graph_and_part(draw, **kwargs):
    graph = draw(graphs(**kwargs))
    mask = draw(
        st.lists(st.booleans(), min_size=graph.n, max_size=graph.n).filter(
            lambda m: 0 < sum(m) < len(m)
        )
    )
    return graph, tuple(i for i, on in enumerate(mask) if on)


couplings = st.sampled_from([0.1, 1.0, 10.0])


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
