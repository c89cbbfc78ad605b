"""Directed hypergraph view of a sparsity pattern.

Vertices 1..n stand for state coordinates, n+1..n+m for inputs.  A hyperedge
carries a tail multiset (the monomial variables) and a head set (the
coordinates the monomial feeds).  Tensor entries sharing a tail multiset
collapse into one hyperedge; each control column becomes an edge from its
input vertex to the rows it touches.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial
from typing import Iterable

from .system import SparsityPattern
from .tensor import SparseTensor

__all__ = [
    "DirectedHypergraph",
    "Hyperedge",
    "StarGraph",
    "build_hypergraph",
    "star_expansion",
    "uniform_adjacency_tensor",
]


@dataclass(frozen=True)
class Hyperedge:
    """Tail multiset (kept as a sorted tuple) and head set."""

    tail: tuple[int, ...]
    head: frozenset[int]

    def __post_init__(self) -> None:
        tail = tuple(sorted(int(v) for v in self.tail))
        head = frozenset(int(v) for v in self.head)
        if not tail:
            raise ValueError("hyperedge tail must be non-empty")
        if not head:
            raise ValueError("hyperedge head must be non-empty")
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "head", head)

    @property
    def tail_support(self) -> frozenset[int]:
        return frozenset(self.tail)


@dataclass(frozen=True)
class DirectedHypergraph:
    """n state vertices, m input vertices, and a tuple of hyperedges.

    Tails are unique across edges; heads never contain input vertices
    (inputs have no dynamics of their own).  Edge order is preserved and is
    the tie-break order for everything downstream.
    """

    n: int
    m: int
    edges: tuple[Hyperedge, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least one state vertex, got n={self.n}")
        if self.m < 0:
            raise ValueError(f"input count must be >= 0, got m={self.m}")
        edges = tuple(self.edges)
        total = self.n + self.m
        seen_tails = set()
        for edge in edges:
            if any(not 1 <= v <= total for v in edge.tail):
                raise ValueError(f"tail {edge.tail} outside vertex range [1, {total}]")
            if any(not 1 <= v <= self.n for v in edge.head):
                raise ValueError(
                    f"head {sorted(edge.head)} contains a non-state vertex "
                    f"(state range is [1, {self.n}])"
                )
            if edge.tail in seen_tails:
                raise ValueError(f"duplicate tail {edge.tail}")
            seen_tails.add(edge.tail)
        object.__setattr__(self, "edges", edges)

    @property
    def state_vertices(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1))

    @property
    def input_vertices(self) -> frozenset[int]:
        return frozenset(range(self.n + 1, self.n + self.m + 1))


def build_hypergraph(pattern: SparsityPattern) -> DirectedHypergraph:
    """Group a pattern's support into hyperedges.

    Control edges come first (by column), then tensor edges sorted by tail
    multiset.  Tensor entries with the same tail multiset merge into a single
    edge whose head collects their head indices.
    """
    heads_by_tail: dict[tuple[int, ...], set[int]] = {}
    for idx in sorted(pattern.tensor_support):
        tail = tuple(sorted(idx[:-1]))
        heads_by_tail.setdefault(tail, set()).add(idx[-1])
    rows_by_column: dict[int, set[int]] = {}
    for i, j in sorted(pattern.control_support):
        rows_by_column.setdefault(j, set()).add(i)

    edges = [
        Hyperedge((pattern.dim + j,), frozenset(rows))
        for j, rows in sorted(rows_by_column.items())
    ]
    edges.extend(
        Hyperedge(tail, frozenset(heads))
        for tail, heads in sorted(heads_by_tail.items())
    )
    return DirectedHypergraph(pattern.dim, pattern.inputs, tuple(edges))


@dataclass(frozen=True)
class StarGraph:
    """Bipartite digraph with one left vertex per hyperedge.

    ``tail_arcs`` holds (vertex, edge index) pairs, one per distinct tail
    vertex; ``head_arcs`` holds (edge index, vertex) pairs.
    """

    edge_count: int
    vertex_count: int
    tail_arcs: tuple[tuple[int, int], ...]
    head_arcs: tuple[tuple[int, int], ...]

    @property
    def arc_count(self) -> int:
        return len(self.tail_arcs) + len(self.head_arcs)


def star_expansion(graph: DirectedHypergraph) -> StarGraph:
    """Standard star expansion; arcs run tail vertex -> edge -> head vertex."""
    tail_arcs = []
    head_arcs = []
    for e, edge in enumerate(graph.edges):
        tail_arcs.extend((v, e) for v in sorted(edge.tail_support))
        head_arcs.extend((e, v) for v in sorted(edge.head))
    return StarGraph(
        edge_count=len(graph.edges),
        vertex_count=graph.n + graph.m,
        tail_arcs=tuple(tail_arcs),
        head_arcs=tuple(head_arcs),
    )


def uniform_adjacency_tensor(
    edges: Iterable[Iterable[int]], dim: int, order: int
) -> SparseTensor:
    """Adjacency tensor of a k-uniform undirected hypergraph.

    Each edge must have exactly ``order`` distinct vertices; every
    permutation of the edge gets the entry 1/(k-1)!, which makes the result
    supersymmetric.
    """
    weight = 1.0 / factorial(order - 1)
    entries: dict[tuple[int, ...], float] = {}
    seen: set[frozenset[int]] = set()
    for edge in edges:
        vertices = tuple(int(v) for v in edge)
        if len(set(vertices)) != order or len(vertices) != order:
            raise ValueError(
                f"edge {vertices} does not have exactly {order} distinct vertices"
            )
        key = frozenset(vertices)
        if key in seen:
            raise ValueError(f"duplicate edge {sorted(key)}")
        seen.add(key)
        for perm in permutations(vertices):
            entries[perm] = weight
    return SparseTensor(order, dim, entries)
