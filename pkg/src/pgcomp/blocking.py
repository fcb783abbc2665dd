"""Tiling of sparse matrices into block grids, and zero-row/column packing.

Tiles are floor(r/n) square except the last block row and column, which
absorb the remainder.  Empty tiles are simply absent from the tile map.
Packing strips all-zero rows and columns from a tile while remembering the
original index labels, so a packed vector block can be multiplied against a
packed tile without any unpacking step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse


@dataclass
class BlockedMatrix:
    dim: int                # global dimension r
    n: int                  # blocks per side
    offsets: np.ndarray     # length n+1 boundary offsets
    tiles: dict[tuple[int, int], sparse.csr_matrix]

    def block_size(self, k: int) -> int:
        return int(self.offsets[k + 1] - self.offsets[k])

    def block_range(self, k: int) -> tuple[int, int]:
        return int(self.offsets[k]), int(self.offsets[k + 1])


def block_offsets(r: int, n: int) -> np.ndarray:
    """Boundaries of n blocks over r indices; the last block absorbs extras."""
    base = r // n
    sizes = [base] * (n - 1) + [r - base * (n - 1)]
    return np.concatenate([[0], np.cumsum(sizes)])


def tile_matrix(a, n: int) -> BlockedMatrix:
    """Cut a square sparse matrix into an n x n block grid, losslessly."""
    a = sparse.csr_matrix(a, dtype=np.float64)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    r = a.shape[0]
    if not 1 <= n <= r:
        raise ValueError(f"need 1 <= n <= {r} blocks per side, got {n}")
    offs = block_offsets(r, n)
    a.eliminate_zeros()
    tiles: dict[tuple[int, int], sparse.csr_matrix] = {}
    for i in range(n):
        r0, r1 = offs[i], offs[i + 1]
        strip = a[r0:r1, :].tocsc()
        for j in range(n):
            c0, c1 = offs[j], offs[j + 1]
            tile = strip[:, c0:c1].tocsr()
            if tile.nnz:
                tiles[(i, j)] = tile
    return BlockedMatrix(r, n, offs, tiles)


def assemble(bm: BlockedMatrix) -> sparse.csr_matrix:
    """Reconstruct the full matrix from its tiles (round-trip oracle)."""
    rows, cols, vals = [], [], []
    for (i, j), tile in bm.tiles.items():
        coo = tile.tocoo()
        r0, _ = bm.block_range(i)
        c0, _ = bm.block_range(j)
        rows.append(coo.row + r0)
        cols.append(coo.col + c0)
        vals.append(coo.data)
    if not rows:
        return sparse.csr_matrix((bm.dim, bm.dim))
    return sparse.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(bm.dim, bm.dim))


def split_vector(x: np.ndarray, bm: BlockedMatrix) -> list[np.ndarray]:
    if len(x) != bm.dim:
        raise ValueError(f"vector length {len(x)} != matrix dimension {bm.dim}")
    return [x[bm.offsets[k]:bm.offsets[k + 1]].copy() for k in range(bm.n)]


def join_vector(blocks: list[np.ndarray]) -> np.ndarray:
    return np.concatenate(blocks)


@dataclass
class PackedBlock:
    """A tile with its all-zero rows and columns deleted."""

    block: tuple[int, int]
    shape: tuple[int, int]        # original tile shape
    kept_rows: np.ndarray         # original indices of surviving rows
    kept_cols: np.ndarray
    data: sparse.csr_matrix       # len(kept_rows) x len(kept_cols)


def pack_block(tile: sparse.csr_matrix,
               block: tuple[int, int] = (0, 0)) -> PackedBlock:
    tile = tile.tocsr()
    tile.eliminate_zeros()
    coo = tile.tocoo()
    kept_rows = np.unique(coo.row)
    kept_cols = np.unique(coo.col)
    rmap = {int(r): i for i, r in enumerate(kept_rows)}
    cmap = {int(c): i for i, c in enumerate(kept_cols)}
    packed = sparse.csr_matrix(
        (coo.data,
         ([rmap[int(r)] for r in coo.row], [cmap[int(c)] for c in coo.col])),
        shape=(len(kept_rows), len(kept_cols)))
    return PackedBlock(block, tile.shape, kept_rows, kept_cols, packed)


def unpack_block(pb: PackedBlock) -> sparse.csr_matrix:
    coo = pb.data.tocoo()
    return sparse.csr_matrix(
        (coo.data, (pb.kept_rows[coo.row], pb.kept_cols[coo.col])),
        shape=pb.shape)


def pack_vector(x: np.ndarray, pb: PackedBlock) -> np.ndarray:
    """The entries of an input block that the packed tile actually reads."""
    return x[pb.kept_cols]


def packed_matvec(pb: PackedBlock, x: np.ndarray) -> np.ndarray:
    """Multiply a full-width input block against the packed tile.

    The packed product is scattered back to original row labels; by CSR
    evaluation order it is bit-identical to the unpacked tile product.
    """
    out = np.zeros(pb.shape[0])
    if pb.data.shape[0]:
        out[pb.kept_rows] = pb.data @ pack_vector(x, pb)
    return out
