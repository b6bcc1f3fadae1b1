"""Finite directed multigraphs and the path combinatorics behind the verdicts.

Multiplicities live in the extended naturals: plain ``int`` for finite
counts and :data:`INF` (``math.inf``) for a countably infinite bundle of
parallel edges.  ``math.inf`` already orders above every int and absorbs
addition, which is all the arithmetic we need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

INF = math.inf

ExtendedNat = Union[int, float]


class GraphError(ValueError):
    """Raised when a graph or matrix fails validation."""


def is_infinite(n: ExtendedNat) -> bool:
    return n == INF


def ext_add(a: ExtendedNat, b: ExtendedNat) -> ExtendedNat:
    if is_infinite(a) or is_infinite(b):
        return INF
    return a + b


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class DirectedMultigraph:
    """A finite graph; ``infinite`` holds (src, dst) pairs carrying infinitely
    many parallel edges.

    Vertex order is declaration order and is what every report uses.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    infinite: tuple[tuple[str, str], ...] = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self, "edges", tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges)
        )
        bundles: list[tuple[str, str]] = []
        for pair in self.infinite:
            pair = (pair[0], pair[1])
            if pair not in bundles:
                bundles.append(pair)
        object.__setattr__(self, "infinite", tuple(bundles))

        if not self.vertices:
            raise GraphError("a graph needs at least one vertex")
        index = {}
        for i, v in enumerate(self.vertices):
            if not isinstance(v, str):
                raise GraphError(f"vertex identifiers must be strings, got {v!r}")
            if v in index:
                raise GraphError(f"duplicate vertex {v!r}")
            index[v] = i
        seen = set()
        for e in self.edges:
            if e.id in seen:
                raise GraphError(f"duplicate edge id {e.id!r}")
            seen.add(e.id)
            for end in (e.src, e.dst):
                if end not in index:
                    raise GraphError(f"edge {e.id!r} references undeclared vertex {end!r}")
        for src, dst in self.infinite:
            for end in (src, dst):
                if end not in index:
                    raise GraphError(f"infinite bundle ({src!r}, {dst!r}) references undeclared vertex {end!r}")
        object.__setattr__(self, "_index", index)

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable = (), infinite: Iterable = ()) -> "DirectedMultigraph":
        """Convenience constructor: edges may be ``(src, dst)`` pairs, which
        get ids ``e0, e1, ...``, or ``(id, src, dst)`` triples."""
        out = []
        for i, e in enumerate(edges):
            if isinstance(e, Edge):
                out.append(e)
            elif len(e) == 2:
                out.append(Edge(f"e{i}", e[0], e[1]))
            else:
                out.append(Edge(*e))
        return cls(tuple(vertices), tuple(out), tuple(infinite))

    def ordered(self, vs: Iterable[str]) -> list[str]:
        """Sort a vertex collection into declaration order."""
        return sorted(set(vs), key=self._index.__getitem__)

    def index(self, v: str) -> int:
        return self._index[v]

    def edge(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(edge_id)

    def out_edges(self, v: str) -> list[Edge]:
        return [e for e in self.edges if e.src == v]

    def in_edges(self, v: str) -> list[Edge]:
        return [e for e in self.edges if e.dst == v]

    def arrows(self) -> Iterator[tuple[str, str]]:
        """Every (src, dst) adjacency, finite edges and bundles alike."""
        for e in self.edges:
            yield e.src, e.dst
        yield from self.infinite

    def multiplicity(self, src: str, dst: str) -> ExtendedNat:
        if (src, dst) in self.infinite:
            return INF
        return sum(1 for e in self.edges if e.src == src and e.dst == dst)

    def in_neighbors(self, v: str) -> set[str]:
        return {s for s, d in self.arrows() if d == v}

    def with_edges_permuted(self, order: Iterable[int]) -> "DirectedMultigraph":
        """Same graph, edges re-declared in the given index order."""
        return DirectedMultigraph(self.vertices, tuple(self.edges[i] for i in order), self.infinite)


VertexSet = frozenset


def sinks(g: DirectedMultigraph) -> frozenset[str]:
    emitting = {s for s, _ in g.arrows()}
    return frozenset(v for v in g.vertices if v not in emitting)


def sources(g: DirectedMultigraph) -> frozenset[str]:
    receiving = {d for _, d in g.arrows()}
    return frozenset(v for v in g.vertices if v not in receiving)


def infinite_emitters(g: DirectedMultigraph) -> frozenset[str]:
    return frozenset(s for s, _ in g.infinite)


def regular_vertices(g: DirectedMultigraph) -> frozenset[str]:
    """Finite emitters that are not sinks; the vertices where CK2 holds."""
    return frozenset(g.vertices) - sinks(g) - infinite_emitters(g)


def is_row_finite(g: DirectedMultigraph) -> bool:
    # finite vertex set: a row is infinite exactly when it carries a bundle
    return not infinite_emitters(g)


def _step(g: DirectedMultigraph, layer: frozenset[str]) -> frozenset[str]:
    return frozenset(d for s, d in g.arrows() if s in layer)


def receivers_at_least(g: DirectedMultigraph, n: int) -> frozenset[str]:
    """Vertices at the end of some directed path of length >= n.

    Computed by backward layering from S_0 = all vertices; a path of length
    >= n ending at v has a terminal piece of length exactly n, so the two
    readings agree.
    """
    if n < 0:
        raise ValueError("path length must be non-negative")
    layer = frozenset(g.vertices)
    for _ in range(n):
        nxt = _step(g, layer)
        if nxt == layer:
            break
        layer = nxt
    return layer


def receiver_chain(g: DirectedMultigraph) -> tuple[list[frozenset[str]], int]:
    """S_0 ⊇ S_1 ⊇ ... through the first m with S_{m+1} = S_m; returns the
    list and m."""
    chain = [frozenset(g.vertices)]
    while True:
        nxt = _step(g, chain[-1])
        if nxt == chain[-1]:
            return chain, len(chain) - 1
        chain.append(nxt)


def path_ending_at(g: DirectedMultigraph, v: str, length: int) -> list[tuple[str, str]] | None:
    """Some path of exactly ``length`` arrows ending at ``v``, as (src, dst)
    hops in path order, or None."""
    layers = [frozenset(g.vertices)]
    for _ in range(length):
        layers.append(_step(g, layers[-1]))
    if v not in layers[-1]:
        return None
    hops = []
    cur = v
    for i in range(length, 0, -1):
        prev = next(s for s, d in g.arrows() if d == cur and s in layers[i - 1])
        hops.append((prev, cur))
        cur = prev
    hops.reverse()
    return hops


def is_path(g: DirectedMultigraph, hops: list[tuple[str, str]]) -> bool:
    """True when consecutive hops chain up and each is an actual arrow."""
    arrows = set(g.arrows())
    for i, hop in enumerate(hops):
        if tuple(hop) not in arrows:
            return False
        if i and hops[i - 1][1] != hop[0]:
            return False
    return True
