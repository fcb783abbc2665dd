"""Preconditioned conjugate gradients over the blocked SpMV simulator.

The recurrence follows the classical Jacobi-preconditioned formulation
with delta = r'M^{-1}r as the convergence measure (delta_limit = eps^2 *
delta_0) and a fresh residual r = b - Ax recomputed every 50th iteration
in place of the update r = r - alpha*q.  Result vector blocks stay on
their owner processes throughout; dot products cost one scalar reduction
each, which the message log counts but does not weigh.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blocking import BlockedMatrix, join_vector, split_vector, tile_matrix
from .distribution import DistributionMap
from .spmv import MessageLog, spmv


class PCGError(ValueError):
    pass


@dataclass
class PCGResult:
    x: np.ndarray
    iterations: int
    converged: bool
    residual_history: list[float]   # delta_new per iteration, delta_0 first
    relative_residual: float        # final ||b - Ax|| / ||b||
    log: MessageLog


def _block_dot(u: list[np.ndarray], v: list[np.ndarray], log: MessageLog) -> float:
    log.dot_reductions += 1
    return float(sum(np.dot(a, b) for a, b in zip(u, v)))


def pcg_solve(a, b: np.ndarray, x0: np.ndarray | None = None,
              i_max: int = 1000, eps: float = 1e-8,
              dist: DistributionMap | None = None,
              packed: bool = False) -> PCGResult:
    """Solve A x = b for SPD A, simulating the given block distribution.

    `a` may be a sparse matrix (tiled on the fly to dist.n blocks) or a
    prepared BlockedMatrix.  Raises PCGError on a zero diagonal entry or
    non-finite iterates.
    """
    if dist is None:
        raise PCGError("a distribution map is required")
    bm = a if isinstance(a, BlockedMatrix) else tile_matrix(a, dist.n)
    if dist.n != bm.n:
        raise PCGError("distribution and blocking disagree on process count")

    diag = np.zeros(bm.dim)
    for k in range(bm.n):
        tile = bm.tiles.get((k, k))
        if tile is not None:
            r0, _ = bm.block_range(k)
            diag[r0:r0 + tile.shape[0]] = tile.diagonal()
    if np.any(diag == 0.0):
        raise PCGError("Jacobi preconditioner undefined: zero diagonal entry")
    minv = split_vector(1.0 / diag, bm)

    bb = split_vector(np.asarray(b, dtype=np.float64), bm)
    x = split_vector(np.zeros(bm.dim) if x0 is None
                     else np.asarray(x0, dtype=np.float64), bm)
    log = MessageLog(bm.n)

    def matvec(v):
        y, l = spmv(dist, bm, v, packed=packed)
        log.merge(l)
        return y

    ax = matvec(x)
    r = [bb[k] - ax[k] for k in range(bm.n)]
    d = [minv[k] * r[k] for k in range(bm.n)]
    delta_new = _block_dot(r, d, log)
    delta_0 = delta_new
    delta_limit = eps * eps * delta_0
    history = [delta_new]

    i = 0
    while i < i_max and delta_new > delta_limit:
        q = matvec(d)
        alpha = delta_new / _block_dot(d, q, log)
        for k in range(bm.n):
            x[k] = x[k] + alpha * d[k]
        if i % 50 == 0:
            ax = matvec(x)
            r = [bb[k] - ax[k] for k in range(bm.n)]
        else:
            r = [r[k] - alpha * q[k] for k in range(bm.n)]
        s = [minv[k] * r[k] for k in range(bm.n)]
        delta_old = delta_new
        delta_new = _block_dot(r, s, log)
        if not np.isfinite(delta_new):
            raise PCGError(f"iterate diverged at iteration {i}")
        beta = delta_new / delta_old
        d = [s[k] + beta * d[k] for k in range(bm.n)]
        i += 1
        history.append(delta_new)

    xfull = join_vector(x)
    bfull = join_vector(bb)
    final = matvec(split_vector(xfull, bm))
    resid = float(np.linalg.norm(bfull - join_vector(final))
                  / np.linalg.norm(bfull))
    return PCGResult(xfull, i, delta_new <= delta_limit, history, resid, log)
