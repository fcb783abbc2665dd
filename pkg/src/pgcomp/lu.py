"""Sequential blocked LU/Cholesky factorization (pivot-free reference).

The blocked recurrence per iteration i: factor the diagonal block in place,
scale the i-th block column by U_ii^{-1} and the i-th block row by
L_ii^{-1}, then apply the rank-b trailing update A_jk -= L_ji U_ik.  Only
well-conditioned (e.g. diagonally dominant) matrices are supported; a
singular diagonal block aborts, since pivoting is out of scope.
"""

from __future__ import annotations

from collections import namedtuple

import numpy as np

Triplet = namedtuple("Triplet", "i j k")

_PIVOT_FLOOR = 1e-300


class SingularBlockError(ArithmeticError):
    """A diagonal block has a (numerically) zero pivot."""


def lu_inplace(m: np.ndarray) -> np.ndarray:
    """Unpivoted LU overlay of a square block: unit-L below, U on and above."""
    d = m.shape[0]
    for t in range(d):
        piv = m[t, t]
        if abs(piv) < _PIVOT_FLOOR:
            raise SingularBlockError(f"zero pivot at position {t}")
        m[t + 1:, t] /= piv
        if t + 1 < d:
            m[t + 1:, t + 1:] -= np.outer(m[t + 1:, t], m[t, t + 1:])
    return m


def split_overlay(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    l = np.tril(m, -1) + np.eye(m.shape[0])
    u = np.triu(m)
    return l, u


def block_lu_reference(a: np.ndarray, b: int,
                       mode: str = "lu") -> tuple[np.ndarray, np.ndarray]:
    """Factor A = L U (or A = L L^T with mode="cholesky") block by block.

    Returns (L, U) as full matrices; L has unit diagonal in LU mode.  The
    input is not modified.  N must be divisible by the block size b.
    """
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if n % b:
        raise ValueError(f"dimension {n} not divisible by block size {b}")
    nb = n // b
    if mode not in ("lu", "cholesky"):
        raise ValueError(f"unknown mode {mode!r}")

    def blk(i, j):
        return a[i * b:(i + 1) * b, j * b:(j + 1) * b]

    if mode == "cholesky":
        for i in range(nb):
            try:
                lii = np.linalg.cholesky(blk(i, i))
            except np.linalg.LinAlgError as exc:
                raise SingularBlockError(str(exc)) from exc
            blk(i, i)[:] = lii
            linv = np.linalg.inv(lii)
            for j in range(i + 1, nb):
                blk(j, i)[:] = blk(j, i) @ linv.T
            for j in range(i + 1, nb):
                for k in range(i + 1, nb):
                    blk(j, k)[:] -= blk(j, i) @ blk(k, i).T
        l = np.tril(a)
        for i in range(nb):
            for j in range(i + 1, nb):
                blk(i, j)[:] = 0.0
        return l, l.T

    for i in range(nb):
        lu_inplace(blk(i, i))
        lii, uii = split_overlay(blk(i, i))
        uinv = np.linalg.inv(uii)
        linv = np.linalg.inv(lii)
        for j in range(i + 1, nb):
            blk(j, i)[:] = blk(j, i) @ uinv
        for k in range(i + 1, nb):
            blk(i, k)[:] = linv @ blk(i, k)
        for j in range(i + 1, nb):
            for k in range(i + 1, nb):
                blk(j, k)[:] -= blk(j, i) @ blk(i, k)
    l = np.tril(a, -1) + np.eye(n)
    u = np.triu(a)
    return l, u


def diag_dominant_matrix(n: int, seed: int = 0) -> np.ndarray:
    """Dense random matrix made strongly diagonally dominant (pivot-free safe)."""
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    a += np.diag(np.abs(a).sum(axis=1) + 1.0)
    return a
