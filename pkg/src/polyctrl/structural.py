"""Structural controllability tests on the hypergraph.

Two independent failure modes are checked: a hyperedge dilation (a state
vertex set fed by fewer hyperedges than it has members, found via maximum
matching between hyperedges and the state vertices in their heads) and
inaccessibility (state vertices no chain of hyperedge firings can reach from
the input vertices).  A pattern is structurally controllable exactly when
neither occurs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hypergraph import DirectedHypergraph, build_hypergraph
from .system import SparsityPattern

__all__ = [
    "DilationResult",
    "StructuralVerdict",
    "accessible_set",
    "analyze_hypergraph",
    "detect_dilation",
    "structural_verdict",
]


@dataclass(frozen=True)
class DilationResult:
    """Outcome of the matching-based dilation test.

    ``matching`` pairs (edge index, state vertex); ``witness`` is a state
    vertex set with fewer covering hyperedges than members, present exactly
    when ``dilated``.
    """

    dilated: bool
    witness: frozenset[int] | None
    matching: tuple[tuple[int, int], ...]


def _head_adjacency(graph: DirectedHypergraph) -> dict[int, list[int]]:
    edges_of_vertex: dict[int, list[int]] = {v: [] for v in range(1, graph.n + 1)}
    for e, edge in enumerate(graph.edges):
        for v in sorted(edge.head):
            edges_of_vertex[v].append(e)
    return edges_of_vertex


def detect_dilation(graph: DirectedHypergraph) -> DilationResult:
    """Match state vertices to hyperedges whose head contains them.

    A maximum matching smaller than n certifies a dilation; the witness is
    the set of state vertices alternating-reachable from the unmatched ones,
    which violates the covering inequality by construction.  Vertices and
    their candidate edges are tried in input order, so the matching is
    deterministic.
    """
    edges_of_vertex = _head_adjacency(graph)
    edge_to_vertex: dict[int, int] = {}
    vertex_to_edge: dict[int, int] = {}

    def try_augment(v: int, visited: set[int]) -> bool:
        for e in edges_of_vertex[v]:
            if e in visited:
                continue
            visited.add(e)
            owner = edge_to_vertex.get(e)
            if owner is None or try_augment(owner, visited):
                edge_to_vertex[e] = v
                vertex_to_edge[v] = e
                return True
        return False

    for v in range(1, graph.n + 1):
        try_augment(v, set())

    matching = tuple(sorted((e, v) for e, v in edge_to_vertex.items()))
    if len(matching) == graph.n:
        return DilationResult(False, None, matching)

    # Alternating reachability from every unmatched state vertex: each edge
    # seen is matched (else an augmenting path existed), and its partner
    # joins the set, so covering edges number |set| minus the unmatched.
    reach = {v for v in range(1, graph.n + 1) if v not in vertex_to_edge}
    stack = list(reach)
    while stack:
        v = stack.pop()
        for e in edges_of_vertex[v]:
            owner = edge_to_vertex.get(e)
            if owner is not None and owner not in reach:
                reach.add(owner)
                stack.append(owner)
    return DilationResult(True, frozenset(reach), matching)


def accessible_set(graph: DirectedHypergraph) -> frozenset[int]:
    """Least fixed point of hyperedge firing from the input vertices.

    An edge fires once every distinct tail vertex is accessible; its head
    then becomes accessible.  Each edge is consumed at most once.
    """
    accessible = set(graph.input_vertices)
    waiting: dict[int, list[int]] = {}
    remaining: list[int] = []
    ready: list[int] = []
    for e, edge in enumerate(graph.edges):
        missing = edge.tail_support - accessible
        remaining.append(len(missing))
        if missing:
            for v in missing:
                waiting.setdefault(v, []).append(e)
        else:
            ready.append(e)

    while ready:
        e = ready.pop()
        for v in sorted(graph.edges[e].head):
            if v in accessible:
                continue
            accessible.add(v)
            for e2 in waiting.get(v, ()):
                remaining[e2] -= 1
                if remaining[e2] == 0:
                    ready.append(e2)
    return frozenset(accessible)


@dataclass(frozen=True)
class StructuralVerdict:
    """Combined verdict; controllable iff no witness and nothing inaccessible."""

    controllable: bool
    dilation_witness: frozenset[int] | None
    inaccessible: frozenset[int]
    matching: tuple[tuple[int, int], ...]

    @property
    def dilated(self) -> bool:
        return self.dilation_witness is not None


def analyze_hypergraph(graph: DirectedHypergraph) -> StructuralVerdict:
    """Run both structural tests; a system can fail both at once."""
    dilation = detect_dilation(graph)
    inaccessible = graph.state_vertices - accessible_set(graph)
    return StructuralVerdict(
        controllable=not dilation.dilated and not inaccessible,
        dilation_witness=dilation.witness,
        inaccessible=inaccessible,
        matching=dilation.matching,
    )


def structural_verdict(pattern: SparsityPattern) -> StructuralVerdict:
    """Structural controllability of a sparsity pattern.

    Depends on the support only: every realization of the pattern maps to
    the same hypergraph and hence the same verdict.
    """
    return analyze_hypergraph(build_hypergraph(pattern))
