"""Numeric strong-controllability tests.

The reduced controllability matrix is grown iteratively: apply the unfolded
tensor to the Kronecker power of the current basis, append, and compress
with a thin SVD so the column count never exceeds n.  The explicit
controllability matrix builds the raw nested blocks instead; its column
count explodes as m**((k-1)**i), which is why it only serves as a
desk-scale oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .system import Polysystem, ensure_valid
from .tensor import DEFAULT_CAP, CapacityError, kron_power, unfold

__all__ = [
    "RankReport",
    "explicit_controllability_matrix",
    "reduced_controllability_matrix",
    "strong_controllability",
    "svd_rank",
]

_EPS = float(np.finfo(np.float64).eps)


def _relative_tolerance(tol: float, shape: tuple[int, int]) -> float:
    # tol = 0 selects the usual automatic cutoff max(dims) * machine epsilon.
    if tol < 0:
        raise ValueError(f"tolerance must be >= 0, got {tol}")
    return tol if tol > 0 else max(shape) * _EPS


def svd_rank(mat: np.ndarray, tol: float = 0.0) -> int:
    """Numerical rank with a cutoff relative to the largest singular value."""
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    if mat.size == 0:
        return 0
    sigma = np.linalg.svd(mat, compute_uv=False)
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.count_nonzero(sigma > _relative_tolerance(tol, mat.shape) * sigma[0]))


def _generated_block(
    a_mat: np.ndarray, basis: np.ndarray, order: int, cap: int
) -> np.ndarray:
    """Apply the unfolded tensor to the Kronecker power of ``basis``.

    Columns are produced one at a time (tuple index in lexicographic order,
    first factor slowest) so only a single Kronecker column is ever alive.
    """
    n = a_mat.shape[0]
    s = basis.shape[1]
    width = s ** (order - 1)
    if n * width > cap:
        raise CapacityError(
            f"generated block needs {n * width} cells, cap is {cap}"
        )
    out = np.empty((n, width))
    for pos, combo in enumerate(product(range(s), repeat=order - 1)):
        col = basis[:, combo[0]]
        for j in combo[1:]:
            col = np.kron(col, basis[:, j])
        out[:, pos] = a_mat @ col
    return out


def _compress(mat: np.ndarray, tol: float) -> tuple[np.ndarray, int, float]:
    u, sigma, _ = np.linalg.svd(mat, full_matrices=False)
    used_tol = _relative_tolerance(tol, mat.shape)
    if sigma.size == 0 or sigma[0] == 0.0:
        return u[:, :0], 0, used_tol
    rank = int(np.count_nonzero(sigma > used_tol * sigma[0]))
    return u[:, :rank], rank, used_tol


def _reduce(
    system: Polysystem, tol: float, cap: int
) -> tuple[np.ndarray, int, float, list[int]]:
    ensure_valid(system)
    n, k = system.dim, system.order
    a_mat = unfold(system.tensor, cap=cap)
    # B is compressed to an orthonormal basis before the loop and the
    # unfolded tensor is scaled to unit spectral norm once.  Both steps
    # preserve the span chain, and they make the rank verdict independent
    # of the overall coefficient scale: raw stacking of B against
    # A(B kron ... kron B) would otherwise compare magnitudes that differ
    # by the scale to the power k-1.  Per-block rescaling is deliberately
    # avoided; it would amplify an all-noise block into a fake direction.
    a_norm = np.linalg.norm(a_mat, 2)
    if a_norm > 0.0:
        a_mat = a_mat / a_norm
    basis, previous_rank, used_tol = _compress(np.array(system.control), tol)
    iterations = 0
    history: list[int] = []
    for _ in range(n):
        if basis.shape[1] == 0 or previous_rank == n:
            break
        block = _generated_block(a_mat, basis, k, cap)
        iterations += 1
        basis, rank, used_tol = _compress(np.hstack([basis, block]), tol)
        history.append(rank)
        if rank == n or rank == previous_rank:
            break
        previous_rank = rank
    return basis, iterations, used_tol, history


def reduced_controllability_matrix(
    system: Polysystem, tol: float = 0.0, cap: int = DEFAULT_CAP
) -> np.ndarray:
    """Orthonormal basis of the reachable directions, at most n columns.

    ``tol`` is the relative singular-value cutoff; 0 selects the automatic
    max(dims) * machine-epsilon cutoff.  The loop runs at most n times and
    exits early once the rank reaches n or stops growing.  The unfolded
    tensor is scaled to unit spectral norm once up front, so the verdict
    does not depend on the overall scale of the coefficients.
    """
    basis, _, _, _ = _reduce(system, tol, cap)
    return basis


@dataclass(frozen=True)
class RankReport:
    rank: int
    n: int
    strongly_controllable: bool
    iterations: int
    tolerance: float


def strong_controllability(
    system: Polysystem, tol: float = 0.0, cap: int = DEFAULT_CAP
) -> RankReport:
    """Rank verdict from the reduced controllability matrix."""
    basis, iterations, used_tol, _ = _reduce(system, tol, cap)
    rank = basis.shape[1]
    return RankReport(
        rank=rank,
        n=system.dim,
        strongly_controllable=rank == system.dim,
        iterations=iterations,
        tolerance=used_tol,
    )


def explicit_controllability_matrix(
    system: Polysystem, terms: int, cap: int = DEFAULT_CAP
) -> np.ndarray:
    """Literal controllability blocks: B, then repeatedly A applied to the
    Kronecker power of the previous block.

    Intended as a small-scale rank oracle only; the capacity error on column
    blowup is the expected behaviour beyond desk sizes.
    """
    ensure_valid(system)
    if terms < 1:
        raise ValueError(f"need at least one term, got {terms}")
    a_mat = unfold(system.tensor, cap=cap)
    blocks = [np.array(system.control)]
    for _ in range(terms - 1):
        previous = blocks[-1]
        power = kron_power(previous, system.order - 1, cap=cap)
        if previous.shape[0] * power.shape[1] > cap:
            raise CapacityError(
                f"controllability block needs {previous.shape[0] * power.shape[1]} "
                f"cells, cap is {cap}"
            )
        blocks.append(a_mat @ power)
    return np.hstack(blocks)
