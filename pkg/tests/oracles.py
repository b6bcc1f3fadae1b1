"""Brute-force reference computations kept apart from the package code."""

from __future__ import annotations

from gaugefree.graph import DirectedMultigraph


def walks_into(g: DirectedMultigraph, v: str, length: int):
    """Yield every walk of exactly ``length`` arrows ending at ``v`` as a
    vertex sequence."""
    arrows = list(g.arrows())

    def back(cur, remaining, acc):
        if remaining == 0:
            yield list(reversed(acc))
            return
        for s, d in arrows:
            if d == cur:
                yield from back(s, remaining - 1, acc + [s])

    yield from back(v, length, [v])


def brute_receivers(g: DirectedMultigraph, n: int) -> set[str]:
    return {v for v in g.vertices if next(walks_into(g, v, n), None) is not None}


def brute_sinks(g: DirectedMultigraph) -> set[str]:
    return {v for v in g.vertices if all(s != v for s, _ in g.arrows())}


def brute_sources(g: DirectedMultigraph) -> set[str]:
    return {v for v in g.vertices if all(d != v for _, d in g.arrows())}


def paths_to_sinks(g: DirectedMultigraph, v: str) -> list[tuple[str, ...]]:
    """Edge-id paths from ``v`` to a sink (finite acyclic graphs only)."""
    out = [e for e in g.edges if e.src == v]
    if not out:
        return [()]
    return [(e.id,) + rest for e in out for rest in paths_to_sinks(g, e.dst)]


def matrix_image(g: DirectedMultigraph, mu, nu, base) -> dict:
    """Image of s_mu s_nu^* in the direct sum of matrix algebras indexed by
    paths into sinks; entries keyed by (row path, column path)."""
    def start(path):
        return g.edge(path[0]).src if path else base

    out = {}
    for gamma in paths_to_sinks(g, base):
        row = (start(mu),) + tuple(mu) + gamma
        col = (start(nu),) + tuple(nu) + gamma
        out[row, col] = out.get((row, col), 0) + 1
    return out


def matrix_of(g: DirectedMultigraph, element: dict) -> dict:
    out = {}
    for m, c in element.items():
        for key, val in matrix_image(g, m.mu, m.nu, m.base).items():
            out[key] = out.get(key, 0) + c * val
    return {k: v for k, v in out.items() if v}


def matmul(a: dict, b: dict) -> dict:
    out = {}
    for (i, j), x in a.items():
        for (j2, l), y in b.items():
            if j == j2:
                out[i, l] = out.get((i, l), 0) + x * y
    return {k: v for k, v in out.items() if v}
