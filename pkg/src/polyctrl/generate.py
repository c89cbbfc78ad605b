"""Seeded random instances for the CLI generator and the validation suites.

Every generator takes an integer seed and draws through a single
``numpy.random.Generator`` in a fixed order, so instances are reproducible
bit for bit.
"""

from __future__ import annotations

import numpy as np

from .hypergraph import DirectedHypergraph, Hyperedge
from .system import SparsityPattern

__all__ = [
    "random_digraph_pattern",
    "random_hypergraph",
    "random_pattern",
    "random_system_pattern",
]


def _draw_tensor_support(rng, n, k, count):
    support: set[tuple[int, ...]] = set()
    while len(support) < count:
        support.add(tuple(int(v) for v in rng.integers(1, n + 1, size=k)))
    return frozenset(support)


def _draw_control_support(rng, n, m, count):
    support: set[tuple[int, int]] = set()
    while len(support) < count:
        support.add((int(rng.integers(1, n + 1)), int(rng.integers(1, m + 1))))
    return frozenset(support)


def pattern_with_rng(
    rng: np.random.Generator, n: int, k: int, m: int, tensor_nnz: int, control_nnz: int
) -> SparsityPattern:
    if tensor_nnz > n**k:
        raise ValueError(f"tensor support {tensor_nnz} exceeds index space {n ** k}")
    if control_nnz > n * m:
        raise ValueError(f"control support {control_nnz} exceeds index space {n * m}")
    return SparsityPattern(
        order=k,
        dim=n,
        inputs=m,
        tensor_support=_draw_tensor_support(rng, n, k, tensor_nnz),
        control_support=_draw_control_support(rng, n, m, control_nnz),
    )


def random_pattern(
    n: int, k: int, m: int, tensor_nnz: int, control_nnz: int, seed: int
) -> SparsityPattern:
    """Pattern with the given shape and support sizes, seed-deterministic."""
    return pattern_with_rng(np.random.default_rng(int(seed)), n, k, m, tensor_nnz, control_nnz)


def random_system_pattern(
    seed: int,
    n_low: int = 2,
    n_high: int = 4,
    k: int = 4,
    m_high: int = 2,
    max_tensor_nnz: int = 6,
) -> SparsityPattern:
    """Pattern with randomized shape, used by the cross-validation suites."""
    rng = np.random.default_rng(int(seed))
    n = int(rng.integers(n_low, n_high + 1))
    m = int(rng.integers(1, m_high + 1))
    tensor_nnz = min(int(rng.integers(1, max_tensor_nnz + 1)), n**k)
    control_nnz = int(rng.integers(1, n * m + 1))
    return pattern_with_rng(rng, n, k, m, tensor_nnz, control_nnz)


def random_digraph_pattern(seed: int, n_high: int = 6, m_high: int = 2) -> SparsityPattern:
    """k=2 pattern, the classical structured linear system."""
    rng = np.random.default_rng(int(seed))
    n = int(rng.integers(2, n_high + 1))
    m = int(rng.integers(1, m_high + 1))
    tensor_nnz = min(int(rng.integers(1, 2 * n + 1)), n * n)
    control_nnz = int(rng.integers(1, n * m + 1))
    return pattern_with_rng(rng, n, 2, m, tensor_nnz, control_nnz)


def random_hypergraph(seed: int, n_high: int = 8, m_high: int = 2) -> DirectedHypergraph:
    """Hypergraph with singleton or size-3 tails and random state heads."""
    rng = np.random.default_rng(int(seed))
    n = int(rng.integers(1, n_high + 1))
    m = int(rng.integers(1, m_high + 1))
    target = int(rng.integers(0, 2 * n + 1))
    tails: set[tuple[int, ...]] = set()
    edges: list[Hyperedge] = []
    for _ in range(target):
        tail = None
        for _ in range(20):
            if rng.random() < 0.3:
                candidate = (n + int(rng.integers(1, m + 1)),)
            elif rng.random() < 0.5:
                candidate = (int(rng.integers(1, n + 1)),)
            else:
                candidate = tuple(
                    sorted(int(v) for v in rng.integers(1, n + 1, size=3))
                )
            if candidate not in tails:
                tail = candidate
                break
        if tail is None:
            continue
        tails.add(tail)
        head = {v for v in range(1, n + 1) if rng.random() < 0.4}
        if not head:
            head = {int(rng.integers(1, n + 1))}
        edges.append(Hyperedge(tail, frozenset(head)))
    return DirectedHypergraph(n, m, tuple(edges))
