"""Weak-Cartesian block distributions and their communication profiles.

A weak-Cartesian distribution deals an n x n grid of matrix blocks to n
processes: every diagonal block (i,i) sits on process i, every process owns
exactly n blocks, and ownership is unique.  The projective member of the
family places block (i,j) on the unique line through points i and j of
P(2, GF(p)), which is what makes its per-process communication O(sqrt(n))
instead of O(n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .projective import GeometryError, cyclic_line_labels, plane_for_order


@dataclass
class DistributionMap:
    """Ownership of an n x n block grid by n processes."""

    n: int
    kind: str
    owner: np.ndarray  # shape (n, n), owner[i, j] = process id

    def blocks_of(self, k: int) -> list[tuple[int, int]]:
        rows, cols = np.nonzero(self.owner == k)
        return list(zip(rows.tolist(), cols.tolist()))


@dataclass
class WeakCartesianReport:
    valid: bool
    violations: list[str]


@dataclass
class ProcessProfile:
    process: int
    r: int                       # distinct row indices among owned blocks
    c: int                       # distinct column indices
    input_blocks: tuple[int, ...]     # X_j to receive (own block excluded)
    partial_outputs: tuple[int, ...]  # Y_i to send (own block excluded)

    @property
    def communication(self) -> int:
        return len(self.input_blocks) + len(self.partial_outputs)


@dataclass
class CommProfile:
    n: int
    per_process: list[ProcessProfile]

    @property
    def max_communication(self) -> int:
        return max(p.communication for p in self.per_process)

    @property
    def total_communication(self) -> int:
        return sum(p.communication for p in self.per_process)


def rowwise_distribution(n: int) -> DistributionMap:
    """Process i owns all blocks of block-row i."""
    if n < 1:
        raise ValueError("need at least one process")
    owner = np.repeat(np.arange(n), n).reshape(n, n)
    return DistributionMap(n, "row-wise", owner)


def projective_distribution(p: int) -> DistributionMap:
    """Block (i,j) goes to the line through points i and j of P(2, GF(p)).

    p must be a prime power; the process count is n = p^2 + p + 1.
    Diagonal blocks go to their own process index, and the map is
    symmetric: owner(i,j) = owner(j,i).
    """
    plane = plane_for_order(p)  # raises GeometryError for non prime powers
    labels = cyclic_line_labels(plane)
    n = plane.n
    pair_to_line: dict[tuple[int, int], int] = {}
    for k, pts in enumerate(labels):
        for a in pts:
            for b in pts:
                if a != b:
                    pair_to_line[(a, b)] = k
    owner = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        owner[i, i] = i
        for j in range(n):
            if i != j:
                owner[i, j] = pair_to_line[(i, j)]
    return DistributionMap(n, "projective", owner)


def validate_weak_cartesian(dmap: DistributionMap) -> WeakCartesianReport:
    """Check the weak-Cartesian conditions, reporting every violation."""
    n = dmap.n
    violations: list[str] = []
    if dmap.owner.shape != (n, n):
        violations.append(f"owner table has shape {dmap.owner.shape}, "
                          f"expected ({n}, {n})")
        return WeakCartesianReport(False, violations)
    if dmap.owner.min() < 0 or dmap.owner.max() >= n:
        violations.append("owner ids outside [0, n)")
    for i in range(n):
        if dmap.owner[i, i] != i:
            violations.append(f"diagonal block ({i},{i}) owned by "
                              f"{dmap.owner[i, i]}, not {i}")
    counts = np.bincount(dmap.owner.ravel(), minlength=n)
    for k in range(n):
        if counts[k] != n:
            violations.append(f"process {k} owns {counts[k]} blocks, expected {n}")
    return WeakCartesianReport(not violations, violations)


def comm_profile(dmap: DistributionMap) -> CommProfile:
    """Per-process row/column sub-block counts and dense-case communication.

    A process must receive every input block X_j for a column j it touches
    except its own, and send every partial output Y_i for a row i it
    touches except its own.
    """
    report = validate_weak_cartesian(dmap)
    if not report.valid:
        raise ValueError("communication profile requires a weak-Cartesian map: "
                         + "; ".join(report.violations))
    n = dmap.n
    profiles = []
    for k in range(n):
        blocks = dmap.blocks_of(k)
        rows = {i for i, _ in blocks}
        cols = {j for _, j in blocks}
        profiles.append(ProcessProfile(
            process=k,
            r=len(rows),
            c=len(cols),
            input_blocks=tuple(sorted(cols - {k})),
            partial_outputs=tuple(sorted(rows - {k})),
        ))
    return CommProfile(n, profiles)


def minimal_submatrix(blocks: set[tuple[int, int]]) -> tuple[int, int]:
    """Dimensions (r, c) of the minimal rectangle covering the blocks.

    All-empty rows and columns are discarded, so r and c are just the
    numbers of distinct row and column indices present.
    """
    if not blocks:
        raise ValueError("minimal_submatrix of an empty block set")
    rows = {i for i, _ in blocks}
    cols = {j for _, j in blocks}
    return len(rows), len(cols)


def integer_comm_lower_bound(n: int) -> int:
    """min over r in [1, n] of r + ceil(n / r).

    Any process of an n-process weak-Cartesian map owns n blocks inside an
    r x c rectangle with r * c >= n, so r + c is at least this value.
    """
    return min(r + math.ceil(n / r) for r in range(1, n + 1))


def plane_order_for(n: int) -> int:
    """The p with n = p^2 + p + 1, if one exists."""
    p = int((math.isqrt(4 * n - 3) - 1) // 2)
    for cand in (p - 1, p, p + 1):
        if cand >= 1 and cand * cand + cand + 1 == n:
            return cand
    raise GeometryError(f"{n} is not of the form p^2 + p + 1")


def random_weak_cartesian(n: int, rng: np.random.Generator) -> DistributionMap:
    """A uniformly dealt valid weak-Cartesian map (diagonal fixed).

    The n(n-1) off-diagonal blocks are shuffled and dealt n-1 to each
    process; any such deal satisfies all the conditions.
    """
    owner = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        owner[i, i] = i
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    order = rng.permutation(len(off))
    for slot, idx in enumerate(order):
        i, j = off[idx]
        owner[i, j] = slot % n
    return DistributionMap(n, "custom", owner)


@dataclass
class LowerBoundReport:
    n: int
    bound: int                     # integer minimum of r + ceil(n/r)
    samples: int
    rc_violations: int             # processes with r * c < n
    sum_violations: int            # processes with r + c < bound
    projective_comm: int | None    # per-process dense communication
    projective_ok: bool

    @property
    def ok(self) -> bool:
        return (self.rc_violations == 0 and self.sum_violations == 0
                and self.projective_ok)


def lower_bound_check(n: int, samples: int, seed: int = 0) -> LowerBoundReport:
    """Probe the communication lower bound on random maps and the projective map.

    Asserts r*c >= n and r + c >= the integer bound for every process of
    every sampled map, and that the projective map's per-process dense
    communication sits within +2 of the bound.
    """
    bound = integer_comm_lower_bound(n)
    rng = np.random.default_rng(seed)
    rc_bad = sum_bad = 0
    for _ in range(samples):
        dmap = random_weak_cartesian(n, rng)
        for prof in comm_profile(dmap).per_process:
            if prof.r * prof.c < n:
                rc_bad += 1
            if prof.r + prof.c < bound:
                sum_bad += 1
    proj_comm = None
    proj_ok = True
    try:
        p = plane_order_for(n)
    except GeometryError:
        p = None
    if p is not None:
        prof = comm_profile(projective_distribution(p))
        proj_comm = prof.max_communication
        proj_ok = proj_comm <= bound + 2
    return LowerBoundReport(n, bound, samples, rc_bad, sum_bad,
                            proj_comm, proj_ok)
