"""Dense linear algebra over a prime field GF(r), r < 256, on numpy arrays.

Matrices are 2-d integer arrays with entries in [0, r).  Products go through
float64 BLAS whenever every partial sum stays below 2**53, which keeps them
exact; otherwise they fall back to int64 chunks.
"""

from __future__ import annotations

import numpy as np

_EXACT = float(2**52)


def _inverses(r: int) -> np.ndarray:
    inv = np.zeros(r, dtype=np.int64)
    for a in range(1, r):
        inv[a] = pow(a, r - 2, r)
    return inv


def matmul(a: np.ndarray, b: np.ndarray, r: int) -> np.ndarray:
    """Exact (a @ b) mod r; leading batch dimensions of ``a`` are allowed."""
    inner = a.shape[-1]
    if inner == 0:
        return np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    if inner * (r - 1) ** 2 < _EXACT:
        out = np.matmul(a.astype(np.float64), b.astype(np.float64))
        return np.remainder(out, r).astype(np.int64)
    # split the inner dimension so each partial product stays exact
    step = max(1, int(_EXACT // ((r - 1) ** 2)))
    acc = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    for lo in range(0, inner, step):
        part = np.matmul(a[..., lo:lo + step].astype(np.float64), b[lo:lo + step].astype(np.float64))
        acc = (acc + np.remainder(part, r).astype(np.int64)) % r
    return acc


def rref(m: np.ndarray, r: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of m over GF(r); zero rows are dropped."""
    a = np.array(m, dtype=np.int64) % r
    if a.ndim != 2:
        raise ValueError("rref expects a matrix")
    rows, cols = a.shape
    inv = _inverses(r)
    pivots: list[int] = []
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(a[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        a[rank] = a[rank] * inv[a[rank, c]] % r
        others = np.flatnonzero(a[:, c])
        others = others[others != rank]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[rank])) % r
        pivots.append(c)
        rank += 1
    return a[:rank], pivots


def rank(m: np.ndarray, r: int) -> int:
    return len(rref(m, r)[1])


def nullspace(m: np.ndarray, r: int, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of {x : m @ x = 0}, in the canonical RREF-derived order."""
    m = np.asarray(m)
    if ncols is None:
        ncols = m.shape[1]
    if m.size == 0:
        return np.eye(ncols, dtype=np.int64)
    red, pivots = rref(m, r)
    return _nullspace_from_rref(red, pivots, ncols, r)


def _nullspace_from_rref(red, pivots, ncols, r):
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        if pivots:
            basis[i, pivots] = (-red[:, f]) % r
    return basis


def left_nullspace(m: np.ndarray, r: int) -> np.ndarray:
    """Basis (as rows) of {y : y @ m = 0}."""
    m = np.asarray(m)
    return nullspace(m.T, r, ncols=m.shape[0])


def inverse(m: np.ndarray, r: int) -> np.ndarray:
    n = m.shape[0]
    red, pivots = rref(np.hstack([np.asarray(m) % r, np.eye(n, dtype=np.int64)]), r)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return red[:n, n:]


def solve_rows(basis: np.ndarray, vecs: np.ndarray, r: int) -> np.ndarray:
    """Coordinates c with c @ basis = vecs, for basis of full row rank."""
    basis = np.asarray(basis) % r
    k = basis.shape[0]
    aug = np.hstack([basis.T, np.asarray(vecs).T % r])
    red, pivots = rref(aug, r)
    if any(p >= k for p in pivots):
        raise ValueError("vector not in the row space")
    return red[:k, k:].T % r


class Echelon:
    """Incrementally maintained RREF basis of a row space over GF(r).

    ``add`` reduces a whole batch against the current basis with one exact
    matrix product, then folds any surviving rows into the basis.
    """

    def __init__(self, ncols: int, r: int, chunk: int | None = None):
        self.ncols = ncols
        self.r = r
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []
        self.chunk = chunk or max(64, 2 * ncols)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, batch: np.ndarray) -> np.ndarray:
        batch = np.asarray(batch, dtype=np.int64) % self.r
        if not self.pivots:
            return batch
        return (batch - matmul(batch[:, self.pivots], self.rows, self.r)) % self.r

    def add(self, batch: np.ndarray) -> int:
        """Add rows; return how many new pivots appeared."""
        before = self.rank
        batch = np.asarray(batch, dtype=np.int64).reshape(-1, self.ncols)
        while batch.shape[0] and self.rank < self.ncols:
            res = self.reduce(batch)
            res = res[res.any(axis=1)]
            if res.shape[0] == 0:
                break
            head, batch = res[:self.chunk], res[self.chunk:]
            self.rows, self.pivots = rref(np.vstack([self.rows, head]), self.r)
        return self.rank - before

    def nullspace(self) -> np.ndarray:
        """Basis of the vectors annihilated by every row added so far."""
        return _nullspace_from_rref(self.rows, self.pivots, self.ncols, self.r)
