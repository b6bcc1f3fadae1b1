import pytest
from hypothesis import given, settings

from conftest import graphs
from gaugefree.correspondence import (
    CommutativeCorrespondence,
    Ideal,
    from_graph,
    full_gauge_free,
    ideal_chain,
    is_faithful,
    is_fg,
    katsura_ideal,
    zk_gauge_free,
)
from gaugefree.graph import (
    INF,
    DirectedMultigraph,
    Edge,
    GraphError,
    infinite_emitters,
    is_path,
    is_row_finite,
    receivers_at_least,
    sinks,
)

C = CommutativeCorrespondence
LOOP = C(["p"], [[1]])
EDGE = C(["u", "v"], [[0, 1], [0, 0]])
INF_LOOP = C(["p"], [[INF]])


def test_from_graph(loop, single_edge, inf_loop):
    assert from_graph(loop).dims == ((1,),)
    assert from_graph(single_edge).dims == ((0, 1), (0, 0))
    assert from_graph(inf_loop).dims == ((INF,),)
    g = DirectedMultigraph.build(["u", "v"], [("u", "v"), ("u", "v"), ("v", "u")])
    assert from_graph(g).dims == ((0, 2), (1, 0))


@pytest.mark.parametrize(
    "points,dims",
    [
        ([], []),
        (["a"], [[1, 0]]),
        (["a", "b"], [[1, 0]]),
        (["a"], [[-1]]),
        (["a"], [[1.5]]),
        (["a", "a"], [[0, 0], [0, 0]]),
    ],
)
def test_rejects_bad_matrices(points, dims):
    with pytest.raises(GraphError):
        C(points, dims)


def test_ideal_arithmetic():
    a, b = Ideal(frozenset("xy")), Ideal(frozenset("yz"))
    assert (a + b).support == set("xyz")
    assert (a * b).support == {"y"} == (a & b).support
    assert a.perp("xyz").support == {"z"}
    assert Ideal(frozenset("y")) <= a


def test_faithful_and_fg():
    assert is_faithful(LOOP) and not is_faithful(EDGE) and is_faithful(INF_LOOP)
    assert is_fg(LOOP) and not is_fg(INF_LOOP) and is_fg(EDGE)


def test_katsura_ideal():
    assert katsura_ideal(LOOP).support == {"p"}
    assert katsura_ideal(INF_LOOP).support == set()
    assert katsura_ideal(EDGE).support == {"u"}


def test_ideal_chain(path3):
    chain, art, m = ideal_chain(from_graph(path3))
    assert [i.support for i in chain] == [{"u0", "u1", "u2"}, {"u1", "u2"}, {"u2"}, set()]
    assert art and m == 3
    for c in (LOOP, INF_LOOP):
        chain, art, m = ideal_chain(c)
        assert [i.support for i in chain] == [{"p"}] and art and m == 0


def test_full_gauge_free():
    v = full_gauge_free(LOOP)
    assert v.free and v.witness["conditions"] == {"faithful": True, "fg": True, "artinian": True}
    v = full_gauge_free(EDGE)
    assert not v.free and v.witness == {"failed": "faithful", "points": ["v"]}
    v = full_gauge_free(INF_LOOP)
    assert not v.free and v.witness == {"failed": "fg", "entries": [["p", "p"]]}


def test_zk_gauge_free():
    v = zk_gauge_free(EDGE, 2)
    assert v.free and v.witness["paths"] == {"v": [["u", "v"]]}
    v = zk_gauge_free(EDGE, 3)
    assert not v.free and v.witness["point"] == "v"
    for k in (2, 3, 7):
        v = zk_gauge_free(INF_LOOP, k)
        assert v.free and v.witness["paths"]["p"] == [["p", "p"]] * (k - 1)


@pytest.mark.parametrize("k", [1, 0, -3, 2.0, True])
def test_zk_rejects_small_k(k):
    with pytest.raises(ValueError, match="k >= 2"):
        zk_gauge_free(LOOP, k)


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_dictionary_coherence(g):
    c = from_graph(g)
    chain, _, m = ideal_chain(c)
    for n in range(len(g.vertices) + 2):
        assert chain[min(n, m)].support == receivers_at_least(g, n)


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_graph_theorem_coherence(g):
    c = from_graph(g)
    assert full_gauge_free(c).free == (not sinks(g) and is_row_finite(g))
    for k in range(2, 7):
        expect = (sinks(g) | infinite_emitters(g)) <= receivers_at_least(g, k - 1)
        assert zk_gauge_free(c, k).free == expect


def _check_witness(g, c, v, k=None):
    if v.free:
        if k is not None:
            for p, hops in v.witness["paths"].items():
                assert len(hops) == k - 1 and hops[-1][1] == p
                assert is_path(g, [tuple(h) for h in hops])
            assert set(v.witness["paths"]) == sinks(g) | infinite_emitters(g)
        return
    w = v.witness
    if w["failed"] == "faithful":
        assert set(w["points"]) == sinks(g)
    elif w["failed"] == "fg":
        assert {u for u, _ in w["entries"]} == infinite_emitters(g)
    else:
        bad = w["point"]
        assert bad in sinks(g) | infinite_emitters(g)
        assert bad not in receivers_at_least(g, k - 1)


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_witnesses_validate(g):
    c = from_graph(g)
    _check_witness(g, c, full_gauge_free(c))
    for k in range(2, 6):
        _check_witness(g, c, zk_gauge_free(c, k), k)


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_multiplicity_robustness(g):
    c = from_graph(g)
    bumped = C(c.points, [[d if d in (0, INF) else d + 3 for d in row] for row in c.dims])
    assert full_gauge_free(bumped).free == full_gauge_free(c).free
    for k in range(2, 6):
        assert zk_gauge_free(bumped, k).free == zk_gauge_free(c, k).free


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_monotone_in_k(g):
    c = from_graph(g)
    chain, _, m = ideal_chain(c)
    for k in range(2, 7):
        if zk_gauge_free(c, k).free:
            continue
        for k2 in range(k + 1, 9):
            if chain[min(k2 - 1, m)].support <= chain[min(k - 1, m)].support:
                assert not zk_gauge_free(c, k2).free


def test_parallel_edges_do_not_matter():
    g = DirectedMultigraph(("u", "v"), (Edge("a", "u", "v"), Edge("b", "u", "v")))
    assert zk_gauge_free(from_graph(g), 2).free
    assert not full_gauge_free(from_graph(g)).free
