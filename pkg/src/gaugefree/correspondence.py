"""Finite-dimensional correspondences over commutative unital algebras.

A correspondence over functions on a finite set X is determined up to
isomorphism by its dimension matrix: ``dims[u][v]`` is the dimension of the
fiber on which the point u acts on the left and v on the right.  Ideals of
the coefficient algebra are supports (subsets of X) and every ideal is
closed, so the freeness conditions reduce to set computations on rows and
columns of the matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

from .graph import INF, DirectedMultigraph, ExtendedNat, GraphError, is_infinite


@dataclass(frozen=True)
class CommutativeCorrespondence:
    points: tuple[str, ...]
    dims: tuple[tuple[ExtendedNat, ...], ...]

    def __post_init__(self):
        points = tuple(self.points)
        dims = tuple(tuple(row) for row in self.dims)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "dims", dims)
        if not points:
            raise GraphError("a correspondence needs at least one point")
        if len(set(points)) != len(points):
            raise GraphError("duplicate point identifier")
        if len(dims) != len(points):
            raise GraphError(f"dims has {len(dims)} rows, expected {len(points)}")
        for i, row in enumerate(dims):
            if len(row) != len(points):
                raise GraphError(f"dims row {i} has {len(row)} entries, expected {len(points)}")
            for j, d in enumerate(row):
                if not (is_infinite(d) or (isinstance(d, int) and not isinstance(d, bool))):
                    raise GraphError(f"dims[{i}][{j}] = {d!r} is not a natural number or inf")
                if d < 0:
                    raise GraphError(f"dims[{i}][{j}] = {d} is negative")

    def entry(self, u: str, v: str) -> ExtendedNat:
        return self.dims[self.points.index(u)][self.points.index(v)]

    def row(self, u: str) -> tuple[ExtendedNat, ...]:
        return self.dims[self.points.index(u)]

    def ordered(self, pts: Iterable[str]) -> list[str]:
        pts = set(pts)
        return [p for p in self.points if p in pts]

    def arrows(self) -> list[tuple[str, str]]:
        return [
            (u, v)
            for i, u in enumerate(self.points)
            for j, v in enumerate(self.points)
            if self.dims[i][j] > 0
        ]


@dataclass(frozen=True)
class Ideal:
    """Ideal of functions supported on ``support``."""

    support: frozenset

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.support | other.support)

    def __and__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.support & other.support)

    __mul__ = __and__

    def perp(self, points: Iterable[str]) -> "Ideal":
        return Ideal(frozenset(points) - self.support)

    def __le__(self, other: "Ideal") -> bool:
        return self.support <= other.support


@dataclass
class Verdict:
    free: bool
    witness: dict[str, Any] = field(default_factory=dict)


def from_graph(g: DirectedMultigraph) -> CommutativeCorrespondence:
    dims = tuple(tuple(g.multiplicity(u, v) for v in g.vertices) for u in g.vertices)
    return CommutativeCorrespondence(g.vertices, dims)


def zero_rows(c: CommutativeCorrespondence) -> list[str]:
    return [u for u, row in zip(c.points, c.dims) if not any(d > 0 for d in row)]


def infinite_entries(c: CommutativeCorrespondence) -> list[tuple[str, str]]:
    return [
        (u, v)
        for u, row in zip(c.points, c.dims)
        for v, d in zip(c.points, row)
        if is_infinite(d)
    ]


def is_faithful(c: CommutativeCorrespondence) -> bool:
    return not zero_rows(c)


def is_fg(c: CommutativeCorrespondence) -> bool:
    return not infinite_entries(c)


def compact_preimage(c: CommutativeCorrespondence) -> Ideal:
    """Points whose left action is compact: rows with finite sum."""
    return Ideal(frozenset(u for u, row in zip(c.points, c.dims) if INF not in row))


def kernel(c: CommutativeCorrespondence) -> Ideal:
    return Ideal(frozenset(zero_rows(c)))


def katsura_ideal(c: CommutativeCorrespondence) -> Ideal:
    return compact_preimage(c) & kernel(c).perp(c.points)


def _next_support(c: CommutativeCorrespondence, support: frozenset) -> frozenset:
    return frozenset(v for u, v in c.arrows() if u in support)


def ideal_chain(c: CommutativeCorrespondence) -> tuple[list[Ideal], bool, int]:
    """I_0 = A, supp I_{n+1} = points fed by supp I_n; stops at the first
    repeat.  Always artinian since the ideal lattice is finite."""
    chain = [Ideal(frozenset(c.points))]
    while True:
        nxt = Ideal(_next_support(c, chain[-1].support))
        if nxt == chain[-1]:
            return chain, True, len(chain) - 1
        chain.append(nxt)


def chain_ideal(c: CommutativeCorrespondence, n: int) -> Ideal:
    chain, _, m = ideal_chain(c)
    return chain[min(n, m)]


def _path_into(c: CommutativeCorrespondence, v: str, length: int) -> list[tuple[str, str]]:
    layers = [frozenset(c.points)]
    for _ in range(length):
        layers.append(_next_support(c, layers[-1]))
    hops = []
    cur = v
    for i in range(length, 0, -1):
        prev = next(u for u, w in c.arrows() if w == cur and u in layers[i - 1])
        hops.append((prev, cur))
        cur = prev
    hops.reverse()
    return hops


def full_gauge_free(c: CommutativeCorrespondence) -> Verdict:
    chain, artinian, m = ideal_chain(c)
    sinks = zero_rows(c)
    if sinks:
        return Verdict(False, {"failed": "faithful", "points": sinks})
    bad = infinite_entries(c)
    if bad:
        return Verdict(False, {"failed": "fg", "entries": [list(p) for p in bad]})
    if not artinian:  # pragma: no cover - finite ideal lattices always stabilize
        return Verdict(False, {"failed": "artinian"})
    return Verdict(
        True,
        {
            "conditions": {"faithful": True, "fg": True, "artinian": True},
            "chain": [c.ordered(i.support) for i in chain],
            "stabilization_index": m,
        },
    )


def zk_gauge_free(c: CommutativeCorrespondence, k: int) -> Verdict:
    if isinstance(k, bool) or not isinstance(k, int) or k < 2:
        raise ValueError(f"the Z/k gauge action needs an integer k >= 2, got {k!r}")
    covered = katsura_ideal(c) + chain_ideal(c, k - 1)
    outside = [p for p in c.points if p not in covered.support]
    if outside:
        return Verdict(
            False,
            {"failed": f"J_E + I_{k - 1} = A", "point": outside[0], "points": outside},
        )
    singular = [p for p in c.points if p not in katsura_ideal(c).support]
    return Verdict(
        True,
        {"paths": {p: [list(h) for h in _path_into(c, p, k - 1)] for p in singular}},
    )
