import hypothesis.strategies as st
import pytest

from gaugefree.graph import DirectedMultigraph, Edge


@st.composite
def graphs(draw, max_vertices=6, max_edges=10, bundles=True):
    n = draw(st.integers(1, max_vertices))
    names = [f"v{i}" for i in range(n)]
    pairs = draw(st.lists(st.tuples(st.sampled_from(names), st.sampled_from(names)), max_size=max_edges))
    inf = []
    if bundles:
        inf = draw(st.lists(st.tuples(st.sampled_from(names), st.sampled_from(names)), max_size=2, unique=True))
    edges = tuple(Edge(f"e{i}", s, d) for i, (s, d) in enumerate(pairs))
    return DirectedMultigraph(tuple(names), edges, tuple(inf))


@pytest.fixture
def loop():
    return DirectedMultigraph.build(["v"], [("e", "v", "v")])


@pytest.fixture
def two_loops():
    return DirectedMultigraph.build(["v"], [("e", "v", "v"), ("f", "v", "v")])


@pytest.fixture
def single_edge():
    return DirectedMultigraph.build(["u", "v"], [("e", "u", "v")])


@pytest.fixture
def inf_loop():
    return DirectedMultigraph.build(["v"], [], [("v", "v")])


@pytest.fixture
def path3():
    return DirectedMultigraph.build(["u0", "u1", "u2"], [("a", "u0", "u1"), ("b", "u1", "u2")])
