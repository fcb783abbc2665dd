"""Blocked sparse matrix-vector multiplication under a pluggable distribution.

The multiplication is executed by logical processes in two phases: an input
gather (each process receives the vector blocks for columns where it holds a
nonempty tile) and a partial-sum reduction (each non-local partial output is
sent to its owner and added there in ascending contributor order).  Message
counts and element volumes are recorded per process and are a pure function
of the block structure, so the log is identical across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .blocking import BlockedMatrix, PackedBlock, pack_block, packed_matvec
from .distribution import DistributionMap


@dataclass
class MessageLog:
    """Per-process message counts and element volumes for one multiplication."""

    n: int
    gather_sent: np.ndarray = field(default=None)
    gather_recv: np.ndarray = field(default=None)
    gather_sent_volume: np.ndarray = field(default=None)
    gather_recv_volume: np.ndarray = field(default=None)
    partial_sent: np.ndarray = field(default=None)
    partial_recv: np.ndarray = field(default=None)
    partial_sent_volume: np.ndarray = field(default=None)
    partial_recv_volume: np.ndarray = field(default=None)
    dot_reductions: int = 0
    spmv_calls: int = 0

    def __post_init__(self):
        for name in ("gather_sent", "gather_recv", "gather_sent_volume",
                     "gather_recv_volume", "partial_sent", "partial_recv",
                     "partial_sent_volume", "partial_recv_volume"):
            if getattr(self, name) is None:
                setattr(self, name, np.zeros(self.n, dtype=np.int64))

    def per_process_messages(self, k: int) -> int:
        """Blocks received plus partial sums sent: the communication load of k."""
        return int(self.gather_recv[k] + self.partial_sent[k])

    def conservation_ok(self) -> bool:
        return (self.gather_sent.sum() == self.gather_recv.sum()
                and self.partial_sent.sum() == self.partial_recv.sum()
                and self.gather_sent_volume.sum() == self.gather_recv_volume.sum()
                and self.partial_sent_volume.sum() == self.partial_recv_volume.sum())

    def merge(self, other: "MessageLog") -> None:
        for name in ("gather_sent", "gather_recv", "gather_sent_volume",
                     "gather_recv_volume", "partial_sent", "partial_recv",
                     "partial_sent_volume", "partial_recv_volume"):
            getattr(self, name).__iadd__(getattr(other, name))
        self.dot_reductions += other.dot_reductions
        self.spmv_calls += other.spmv_calls

    def summary(self) -> dict:
        return {
            "spmv_calls": self.spmv_calls,
            "dot_reductions": self.dot_reductions,
            "gather_messages": int(self.gather_sent.sum()),
            "gather_volume": int(self.gather_sent_volume.sum()),
            "partial_messages": int(self.partial_sent.sum()),
            "partial_volume": int(self.partial_sent_volume.sum()),
            "per_process_messages": [self.per_process_messages(k)
                                     for k in range(self.n)],
        }


def _owned_tiles(dist: DistributionMap,
                 bm: BlockedMatrix) -> dict[int, list[tuple[int, int]]]:
    owned: dict[int, list[tuple[int, int]]] = {k: [] for k in range(dist.n)}
    for (i, j) in sorted(bm.tiles):
        owned[int(dist.owner[i, j])].append((i, j))
    return owned


def spmv(dist: DistributionMap, bm: BlockedMatrix, x: list[np.ndarray],
         packed: bool = False,
         packed_tiles: dict[tuple[int, int], PackedBlock] | None = None,
         ) -> tuple[list[np.ndarray], MessageLog]:
    """y = A x with per-process message accounting.

    A vector block X_j travels to a process only if that process holds a
    nonempty tile in column j; absent tiles generate no traffic.  With
    packed=True the transfers carry only the rows/columns the receiver's
    tiles actually touch; the arithmetic is unchanged either way.
    """
    if dist.n != bm.n:
        raise ValueError(f"distribution has {dist.n} processes but matrix "
                         f"has {bm.n} block rows")
    for k in range(bm.n):
        if len(x[k]) != bm.block_size(k):
            raise ValueError(f"input block {k} has length {len(x[k])}, "
                             f"expected {bm.block_size(k)}")
    n = bm.n
    log = MessageLog(n)
    log.spmv_calls = 1
    owned = _owned_tiles(dist, bm)
    if packed and packed_tiles is None:
        packed_tiles = {key: pack_block(bm.tiles[key], key) for key in bm.tiles}

    # phase 1: input gather
    for k in range(n):
        cols: dict[int, list[tuple[int, int]]] = {}
        for (i, j) in owned[k]:
            cols.setdefault(j, []).append((i, j))
        for j, keys in cols.items():
            if j == k:
                continue
            if packed:
                used = np.unique(np.concatenate(
                    [packed_tiles[key].kept_cols for key in keys]))
                vol = len(used)
            else:
                vol = bm.block_size(j)
            log.gather_recv[k] += 1
            log.gather_sent[j] += 1
            log.gather_recv_volume[k] += vol
            log.gather_sent_volume[j] += vol

    # local tile products, accumulated per (producer, output row-block)
    partials: dict[int, dict[int, np.ndarray]] = {k: {} for k in range(n)}
    for k in range(n):
        for (i, j) in owned[k]:
            if packed:
                contrib = packed_matvec(packed_tiles[(i, j)], x[j])
            else:
                contrib = bm.tiles[(i, j)] @ x[j]
            acc = partials[k].get(i)
            partials[k][i] = contrib if acc is None else acc + contrib

    # phase 2: partial-sum reduction, ascending contributor id at each owner
    y = [np.zeros(bm.block_size(i)) for i in range(n)]
    contributors: dict[int, list[int]] = {i: [] for i in range(n)}
    for k in range(n):
        for i in partials[k]:
            contributors[i].append(k)
    for i in range(n):
        for k in sorted(contributors[i]):
            y[i] += partials[k][i]
            if k != i:
                if packed:
                    rows = np.unique(np.concatenate(
                        [packed_tiles[key].kept_rows
                         for key in owned[k] if key[0] == i]))
                    vol = len(rows)
                else:
                    vol = bm.block_size(i)
                log.partial_sent[k] += 1
                log.partial_recv[i] += 1
                log.partial_sent_volume[k] += vol
                log.partial_recv_volume[i] += vol
    return y, log
