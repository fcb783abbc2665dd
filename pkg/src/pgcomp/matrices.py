"""Matrix Market ingestion and deterministic test-matrix generators."""

from __future__ import annotations

import os

import numpy as np
from scipy import sparse


class MatrixMarketError(ValueError):
    """Malformed Matrix Market input, with the offending line number."""


def read_matrix_market(path) -> sparse.csr_matrix:
    """Parse a coordinate-format Matrix Market file.

    Accepts `matrix coordinate real general|symmetric`; symmetric files are
    expanded to full storage; duplicate entries are summed; indices are
    1-based in the file and 0-based in the result.
    """
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline()
        if not header.startswith("%%MatrixMarket"):
            raise MatrixMarketError("line 1: missing %%MatrixMarket banner")
        fields = header.strip().split()
        if len(fields) != 5:
            raise MatrixMarketError(f"line 1: malformed banner {header.strip()!r}")
        _, obj, fmt, valtype, symmetry = (f.lower() for f in fields)
        if obj != "matrix" or fmt != "coordinate":
            raise MatrixMarketError(f"line 1: unsupported kind {obj} {fmt}; "
                                    "only matrix coordinate is handled")
        if valtype != "real":
            raise MatrixMarketError(f"line 1: unsupported field type "
                                    f"{valtype!r}; only real is handled")
        if symmetry not in ("general", "symmetric"):
            raise MatrixMarketError(f"line 1: unsupported symmetry "
                                    f"{symmetry!r}")
        lineno = 1
        dims = None
        for line in fh:
            lineno += 1
            stripped = line.strip()
            if not stripped or stripped.startswith("%"):
                continue
            parts = stripped.split()
            if len(parts) != 3:
                raise MatrixMarketError(f"line {lineno}: expected "
                                        "'rows cols nnz'")
            try:
                dims = tuple(int(p) for p in parts)
            except ValueError:
                raise MatrixMarketError(f"line {lineno}: non-integer size "
                                        "entry") from None
            break
        if dims is None:
            raise MatrixMarketError("missing size line")
        nrows, ncols, _declared_nnz = dims  # duplicates may legally collapse
        rows, cols, vals = [], [], []
        for line in fh:
            lineno += 1
            stripped = line.strip()
            if not stripped or stripped.startswith("%"):
                continue
            parts = stripped.split()
            if len(parts) != 3:
                raise MatrixMarketError(f"line {lineno}: expected 'i j value'")
            try:
                i, j = int(parts[0]), int(parts[1])
                v = float(parts[2])
            except ValueError:
                raise MatrixMarketError(f"line {lineno}: malformed entry "
                                        f"{stripped!r}") from None
            if not (1 <= i <= nrows and 1 <= j <= ncols):
                raise MatrixMarketError(f"line {lineno}: index ({i},{j}) "
                                        f"outside {nrows}x{ncols}")
            rows.append(i - 1)
            cols.append(j - 1)
            vals.append(v)
            if symmetry == "symmetric" and i != j:
                rows.append(j - 1)
                cols.append(i - 1)
                vals.append(v)
    a = sparse.coo_matrix((vals, (rows, cols)), shape=(nrows, ncols))
    return a.tocsr()


def write_matrix_market(path, a, symmetric: bool = False) -> None:
    """Emit coordinate real format (lower triangle only when symmetric)."""
    coo = sparse.coo_matrix(a)
    with open(path, "w", encoding="ascii") as fh:
        sym = "symmetric" if symmetric else "general"
        fh.write(f"%%MatrixMarket matrix coordinate real {sym}\n")
        entries = [(r, c, v) for r, c, v in zip(coo.row, coo.col, coo.data)
                   if not symmetric or r >= c]
        fh.write(f"{coo.shape[0]} {coo.shape[1]} {len(entries)}\n")
        for r, c, v in entries:
            fh.write(f"{r + 1} {c + 1} {v!r}\n")


def poisson2d(side: int) -> sparse.csr_matrix:
    """5-point Laplacian on a side x side grid; SPD of order side^2."""
    if side < 1:
        raise ValueError("grid side must be >= 1")
    t = sparse.diags([-1.0, 2.0, -1.0], [-1, 0, 1], shape=(side, side))
    eye = sparse.identity(side)
    return (sparse.kron(eye, t) + sparse.kron(t, eye)).tocsr()


def diagdom(n: int, density: float = 0.05, seed: int = 0) -> sparse.csr_matrix:
    """Random symmetric diagonally dominant (hence SPD) matrix, seeded."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must be in [0, 1]")
    rng = np.random.default_rng(seed)
    nnz = max(n, int(density * n * n))
    rows = rng.integers(0, n, size=nnz)
    cols = rng.integers(0, n, size=nnz)
    vals = rng.standard_normal(nnz)
    a = sparse.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
    a = (a + a.T) * 0.5
    a.setdiag(0.0)
    a.eliminate_zeros()
    rowsum = np.abs(a).sum(axis=1).A1
    a = a + sparse.diags(rowsum + 1.0)
    return a.tocsr()


def generate_matrix(spec: str, seed_override: int | None = None) -> sparse.csr_matrix:
    """Build a matrix from a generator spec string.

    Recognized forms: "poisson2d:<side>" and "diagdom:<n>[:<density>[:<seed>]]".
    The PG_PARALLEL_SEED environment variable (or seed_override) replaces
    the seed of seeded generators.
    """
    parts = spec.split(":")
    kind = parts[0]
    env_seed = os.environ.get("PG_PARALLEL_SEED")
    if seed_override is None and env_seed is not None:
        seed_override = int(env_seed)
    try:
        if kind == "poisson2d" and len(parts) == 2:
            return poisson2d(int(parts[1]))
        if kind == "diagdom" and 2 <= len(parts) <= 4:
            n = int(parts[1])
            density = float(parts[2]) if len(parts) >= 3 else 0.05
            seed = int(parts[3]) if len(parts) >= 4 else 0
            if seed_override is not None:
                seed = seed_override
            return diagdom(n, density, seed)
    except ValueError as exc:
        raise ValueError(f"invalid generator spec {spec!r}: {exc}") from exc
    raise ValueError(f"unknown generator spec {spec!r}; expected "
                     "poisson2d:<side> or diagdom:<n>[:<density>[:<seed>]]")
