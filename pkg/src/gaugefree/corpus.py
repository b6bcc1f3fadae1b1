"""Exhaustive and random small graphs for property checks."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .graph import DirectedMultigraph, Edge


def _canonical(n: int, finite: tuple, bundles: tuple) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        key = (
            tuple(sorted((perm[u], perm[v]) for u, v in finite)),
            tuple(sorted((perm[u], perm[v]) for u, v in bundles)),
        )
        if best is None or key < best:
            best = key
    return best


def _build(n: int, finite, bundles) -> DirectedMultigraph:
    names = [f"v{i}" for i in range(n)]
    edges = tuple(Edge(f"e{i}", names[u], names[v]) for i, (u, v) in enumerate(finite))
    return DirectedMultigraph(tuple(names), edges, tuple((names[u], names[v]) for u, v in bundles))


def small_graphs(max_vertices: int = 3, max_edges: int = 3, bundle_variants: bool = True) -> Iterator[DirectedMultigraph]:
    """Simple-adjacency graphs up to relabelling, then the same graphs with
    one infinite bundle added at every position (overlaying a finite edge
    included)."""
    seen = set()
    for n in range(1, max_vertices + 1):
        cells = [(u, v) for u in range(n) for v in range(n)]
        bases = []
        for m in range(max_edges + 1):
            for finite in itertools.combinations(cells, m):
                key = _canonical(n, finite, ())
                if (n, key) not in seen:
                    seen.add((n, key))
                    bases.append(key[0])
                    yield _build(n, key[0], ())
        if not bundle_variants:
            continue
        for finite in bases:
            for cell in cells:
                key = _canonical(n, finite, (cell,))
                if (n, key) not in seen:
                    seen.add((n, key))
                    yield _build(n, key[0], key[1])


def random_graph(rng: random.Random, max_vertices: int = 8, max_edges: int = 16, bundle_prob: float = 0.0) -> DirectedMultigraph:
    n = rng.randint(1, max_vertices)
    names = [f"v{i}" for i in range(n)]
    m = rng.randint(0, max_edges)
    edges = tuple(Edge(f"e{i}", rng.choice(names), rng.choice(names)) for i in range(m))
    bundles = ()
    if rng.random() < bundle_prob:
        bundles = ((rng.choice(names), rng.choice(names)),)
    return DirectedMultigraph(tuple(names), edges, bundles)


def is_acyclic(g: DirectedMultigraph) -> bool:
    """Depth-first cycle detection, independent of the oracle's version."""
    state = {v: 0 for v in g.vertices}

    def visit(v):
        state[v] = 1
        for s, d in g.arrows():
            if s == v:
                if state[d] == 1 or (state[d] == 0 and not visit(d)):
                    return False
        state[v] = 2
        return True

    return all(state[v] == 2 or visit(v) for v in g.vertices)
