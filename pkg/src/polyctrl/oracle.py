"""Independent cross-checking oracles.

Everything here recomputes a verdict by a route the main modules do not
share: subset enumeration instead of matching, a set-algebra closure instead
of the flat firing fixed point, Lie brackets at the origin instead of the
iterated controllability matrix, and the classical Kalman test for the
linear case.  All of it is deliberately desk-scale and guarded.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping

import numpy as np

from .hypergraph import DirectedHypergraph
from .numeric import svd_rank
from .system import Polysystem, ensure_valid
from .tensor import CapacityError

__all__ = [
    "AccessClosure",
    "PolyVectorField",
    "brute_force_dilation",
    "evaluate_at_zero",
    "field_from_polysystem",
    "individual_accessibility_closure",
    "kalman_rank",
    "lie_algebra_rank_at_origin",
    "lie_bracket",
]


# A polynomial is a dict from a powers key to a coefficient; the key is a
# tuple of (variable, exponent) pairs sorted by variable, () for constants.
Powers = tuple[tuple[int, int], ...]
Polynomial = dict[Powers, float]


def _canonical(powers) -> Powers:
    merged: dict[int, int] = {}
    for var, exp in powers:
        merged[int(var)] = merged.get(int(var), 0) + int(exp)
    return tuple(sorted((v, e) for v, e in merged.items() if e != 0))


def _poly_add(target: Polynomial, key: Powers, coeff: float) -> None:
    value = target.get(key, 0.0) + coeff
    if value == 0.0:
        target.pop(key, None)
    else:
        target[key] = value


def _poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    out: Polynomial = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            _poly_add(out, _canonical(ka + kb), ca * cb)
    return out


def _poly_diff(poly: Polynomial, var: int) -> Polynomial:
    out: Polynomial = {}
    for key, coeff in poly.items():
        for v, e in key:
            if v == var:
                rest = tuple(p for p in key if p[0] != var)
                new_key = _canonical(rest + ((var, e - 1),)) if e > 1 else _canonical(rest)
                _poly_add(out, new_key, coeff * e)
                break
    return out


@dataclass(frozen=True)
class PolyVectorField:
    """Vector field with polynomial coordinates over variables 1..dim.

    Coordinates are monomial maps; duplicate exponent maps merge on
    construction and zero coefficients are dropped, so equal fields compare
    equal structurally.
    """

    dim: int
    coords: tuple[Mapping[Powers, float], ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"field dimension must be >= 1, got {self.dim}")
        if len(self.coords) != self.dim:
            raise ValueError(
                f"expected {self.dim} coordinates, got {len(self.coords)}"
            )
        cleaned = []
        for poly in self.coords:
            merged: Polynomial = {}
            for key, coeff in poly.items():
                norm = _canonical(key)
                if any(not 1 <= var <= self.dim for var, _ in norm):
                    raise ValueError(f"variable out of range in monomial {norm}")
                _poly_add(merged, norm, float(coeff))
            cleaned.append(merged)
        object.__setattr__(self, "coords", tuple(cleaned))

    def is_zero(self) -> bool:
        return all(not poly for poly in self.coords)


def field_from_polysystem(
    system: Polysystem,
) -> tuple[PolyVectorField, tuple[PolyVectorField, ...]]:
    """Drift field from the tensor plus one constant field per input column."""
    ensure_valid(system)
    n = system.dim
    coords: list[Polynomial] = [{} for _ in range(n)]
    for idx, coeff in system.tensor.entries.items():
        key = _canonical(Counter(idx[:-1]).items())
        _poly_add(coords[idx[-1] - 1], key, coeff)
    drift = PolyVectorField(n, tuple(coords))
    inputs = []
    for j in range(system.inputs):
        column: list[Polynomial] = [{} for _ in range(n)]
        for i in range(n):
            value = float(system.control[i, j])
            if value != 0.0:
                column[i][()] = value
        inputs.append(PolyVectorField(n, tuple(column)))
    return drift, tuple(inputs)


def lie_bracket(f: PolyVectorField, g: PolyVectorField) -> PolyVectorField:
    """[f, g] = (Jacobian of g) f - (Jacobian of f) g, exact on monomials."""
    if f.dim != g.dim:
        raise ValueError(f"field dimensions differ: {f.dim} vs {g.dim}")
    n = f.dim
    coords: list[Polynomial] = []
    for i in range(n):
        total: Polynomial = {}
        for j in range(1, n + 1):
            for key, coeff in _poly_mul(_poly_diff(dict(g.coords[i]), j), dict(f.coords[j - 1])).items():
                _poly_add(total, key, coeff)
            for key, coeff in _poly_mul(_poly_diff(dict(f.coords[i]), j), dict(g.coords[j - 1])).items():
                _poly_add(total, key, -coeff)
        coords.append(total)
    return PolyVectorField(n, tuple(coords))


def evaluate_at_zero(field: PolyVectorField) -> np.ndarray:
    """Constant part of each coordinate."""
    return np.array([poly.get((), 0.0) for poly in field.coords])


class _FieldSpan:
    """Span of fields over the monomial-coordinate basis.

    Integer coefficient systems get exact Fraction elimination; anything
    else falls back to orthogonal residuals with a relative tolerance.
    """

    def __init__(self, exact: bool, rtol: float = 1e-10) -> None:
        self.exact = exact
        self.rtol = rtol
        self.index: dict[tuple[int, Powers], int] = {}
        self.rows: list[np.ndarray] = []
        self.echelon: list[dict[tuple[int, Powers], Fraction]] = []

    def _as_items(self, field: PolyVectorField) -> list[tuple[tuple[int, Powers], float]]:
        items = []
        for i, poly in enumerate(field.coords):
            for key, coeff in poly.items():
                items.append(((i, key), coeff))
        return sorted(items)

    def _add_exact(self, items) -> bool:
        work = {key: Fraction(coeff) for key, coeff in items}
        for row in self.echelon:
            pivot = min(row)
            if pivot in work:
                factor = work[pivot] / row[pivot]
                for key, value in row.items():
                    updated = work.get(key, Fraction(0)) - factor * value
                    if updated == 0:
                        work.pop(key, None)
                    else:
                        work[key] = updated
        if not work:
            return False
        pivot = min(work)
        scale = work[pivot]
        self.echelon.append({key: value / scale for key, value in work.items()})
        self.echelon.sort(key=lambda row: min(row))
        return True

    def _add_float(self, items) -> bool:
        for key, _ in items:
            if key not in self.index:
                self.index[key] = len(self.index)
        width = len(self.index)
        vec = np.zeros(width)
        for key, coeff in items:
            vec[self.index[key]] = coeff
        norm = np.linalg.norm(vec)
        if norm == 0.0:
            return False
        grown = []
        for row in self.rows:
            if row.shape[0] < width:
                row = np.concatenate([row, np.zeros(width - row.shape[0])])
            grown.append(row)
        self.rows = grown
        residual = vec.copy()
        for _ in range(2):
            for row in self.rows:
                residual -= (row @ residual) * row
        res_norm = np.linalg.norm(residual)
        if res_norm <= self.rtol * norm:
            return False
        self.rows.append(residual / res_norm)
        return True

    def add(self, field: PolyVectorField) -> bool:
        """True when the field extends the span; it is then retained."""
        items = self._as_items(field)
        if not items:
            return False
        if self.exact:
            return self._add_exact(items)
        return self._add_float(items)


def _all_integral(system: Polysystem) -> bool:
    return all(c.is_integer() for c in system.tensor.entries.values()) and all(
        float(v).is_integer() for v in np.ravel(system.control)
    )


def lie_algebra_rank_at_origin(
    system: Polysystem, depth_cap: int | None = None
) -> tuple[int, bool]:
    """Rank at the origin of the algebra bracket-generated by drift and inputs.

    Breadth-first: every new independent field is bracketed with every
    generator, until no round adds a field (saturated) or ``depth_cap``
    rounds have run.  Desk-scale guards n <= 4 and k <= 4 keep the monomial
    bases tiny.
    """
    ensure_valid(system)
    n, k = system.dim, system.order
    if n > 4 or k > 4:
        raise CapacityError(
            f"Lie rank oracle is desk-scale only (n <= 4, k <= 4), got n={n}, k={k}"
        )
    if depth_cap is None:
        depth_cap = 2 * n
    if depth_cap < 1:
        raise ValueError(f"depth cap must be >= 1, got {depth_cap}")

    drift, inputs = field_from_polysystem(system)
    generators = [drift, *inputs]
    span = _FieldSpan(exact=_all_integral(system))
    basis: list[PolyVectorField] = []
    for g in generators:
        if span.add(g):
            basis.append(g)

    frontier = list(basis)
    saturated = not frontier
    for _ in range(depth_cap):
        fresh: list[PolyVectorField] = []
        for h in frontier:
            for g in generators:
                candidate = lie_bracket(g, h)
                if span.add(candidate):
                    fresh.append(candidate)
        basis.extend(fresh)
        if not fresh:
            saturated = True
            break
        frontier = fresh

    if not basis:
        return 0, saturated
    at_zero = np.column_stack([evaluate_at_zero(h) for h in basis])
    return svd_rank(at_zero, 1e-10), saturated


def brute_force_dilation(
    graph: DirectedHypergraph,
) -> tuple[bool, frozenset[int] | None]:
    """Check every state vertex subset against its covering hyperedge count.

    Returns the first witness in (size, lexicographic) order.  Exponential by
    design; guarded to n <= 12.
    """
    if graph.n > 12:
        raise CapacityError(f"subset enumeration is guarded to n <= 12, got {graph.n}")
    heads = [edge.head for edge in graph.edges]
    for size in range(1, graph.n + 1):
        for subset in combinations(range(1, graph.n + 1), size):
            chosen = frozenset(subset)
            covering = sum(1 for head in heads if head & chosen)
            if covering < size:
                return True, chosen
    return False, None


@dataclass(frozen=True)
class AccessClosure:
    """Family of vertex sets reachable by grouped firings.

    ``individually_accessible`` lists the state vertices isolated as
    singletons; ``truncated`` is set when the family hit the cap before
    reaching a fixed point, never silently.
    """

    sets: frozenset[frozenset[int]]
    individually_accessible: frozenset[int]
    truncated: bool


def _set_order(s: frozenset[int]) -> tuple[int, tuple[int, ...]]:
    return (len(s), tuple(sorted(s)))


def individual_accessibility_closure(
    graph: DirectedHypergraph, cap: int = 4096
) -> AccessClosure:
    """Close the family of visited vertex sets under union, difference, and
    grouped hyperedge firing.

    A hyperedge fires only when its tail support is a union of family
    members each wholly inside the tail; its head then joins the family as
    one set.  This is strictly stricter than the flat fixed point in
    ``structural.accessible_set``, which is the point of the cross-check.
    """
    if graph.n + graph.m > 16:
        raise CapacityError(
            f"closure oracle is guarded to n + m <= 16, got {graph.n + graph.m}"
        )
    family: set[frozenset[int]] = {frozenset({v}) for v in graph.input_vertices}
    truncated = False

    def close_algebra() -> bool:
        nonlocal truncated
        changed = False
        while True:
            members = sorted(family, key=_set_order)
            fresh: set[frozenset[int]] = set()
            for a in members:
                for b in members:
                    if a is b:
                        continue
                    union = a | b
                    if union not in family:
                        fresh.add(union)
                    difference = a - b
                    if difference and difference not in family:
                        fresh.add(difference)
            if not fresh:
                return changed
            for candidate in sorted(fresh, key=_set_order):
                if len(family) >= cap:
                    truncated = True
                    return changed
                family.add(candidate)
                changed = True

    def fire_edges() -> bool:
        nonlocal truncated
        changed = False
        for edge in graph.edges:
            tail = edge.tail_support
            covered: set[int] = set()
            for member in family:
                if member <= tail:
                    covered |= member
            if covered == set(tail) and edge.head not in family:
                if len(family) >= cap:
                    truncated = True
                    return changed
                family.add(edge.head)
                changed = True
        return changed

    while not truncated:
        changed = close_algebra()
        changed |= fire_edges()
        if not changed:
            break

    singles = frozenset(
        v for v in graph.state_vertices if frozenset({v}) in family
    )
    return AccessClosure(
        sets=frozenset(family),
        individually_accessible=singles,
        truncated=truncated,
    )


def kalman_rank(a: np.ndarray, b: np.ndarray, tol: float = 0.0) -> int:
    """Rank of [B, AB, ..., A^(n-1) B] for the linear case.

    A and B are each scaled to unit spectral norm up front (the span of the
    stacked blocks is unchanged), so the verdict cannot be distorted by
    powers of A dwarfing the early blocks.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if b.ndim == 1:
        b = b[:, None]
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if b.shape[0] != n:
        raise ValueError(f"control matrix rows {b.shape[0]} do not match n={n}")
    a_norm = np.linalg.norm(a, 2)
    if a_norm > 0.0:
        a = a / a_norm
    b_norm = np.linalg.norm(b, 2)
    if b_norm > 0.0:
        b = b / b_norm
    blocks = [b]
    current = b
    for _ in range(n - 1):
        current = a @ current
        blocks.append(current)
    return svd_rank(np.hstack(blocks), tol)
