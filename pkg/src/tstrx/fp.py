"""Dense linear algebra over a prime field F_p.

Matrices are int64 numpy arrays with entries in ``[0, p)``.  Vectors and
subspace bases are stored as columns.
"""
from __future__ import annotations

import numpy as np

from tstrx.kernels import rref_mod_p


def as_fp(a, p: int) -> np.ndarray:
    return np.mod(np.asarray(a, dtype=np.int64), p)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # shapes with a zero dimension are legal and give zero matrices
    return np.mod(a @ b, p)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    a = np.asarray(a, dtype=np.int64)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return np.mod(a.copy(), p), ()
    return rref_mod_p(a, p)


def rank(a: np.ndarray, p: int) -> int:
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``{x : a x = 0}`` as the columns of the returned matrix."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    r, pivots = rref(a, p)
    free = [c for c in range(n) if c not in pivots]
    basis = zeros(n, len(free))
    for k, fc in enumerate(free):
        basis[fc, k] = 1
        for row, pc in enumerate(pivots):
            basis[pc, k] = (-r[row, fc]) % p
    return basis


def colspace(a: np.ndarray, p: int) -> np.ndarray:
    """A column basis of the span of the columns of ``a``."""
    a = np.asarray(a, dtype=np.int64)
    _, pivots = rref(a, p)
    return np.mod(a[:, list(pivots)], p)


def canonical_span(a: np.ndarray, p: int) -> tuple[tuple[int, ...], ...]:
    """Hashable normal form of the column span of ``a`` (rref of the transpose)."""
    a = np.asarray(a, dtype=np.int64)
    r, pivots = rref(a.T, p)
    return tuple(tuple(int(x) for x in r[i]) for i in range(len(pivots)))


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """One solution ``x`` of ``a x = b``; raises ``ValueError`` if none exists."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    m, n = a.shape
    k = b.shape[1]
    if n == 0:
        if np.any(np.mod(b, p)):
            raise ValueError("inconsistent linear system")
        return zeros(0, k)
    aug = np.concatenate([a, b], axis=1)
    r, pivots = rref(aug, p)
    if any(pc >= n for pc in pivots):
        raise ValueError("inconsistent linear system")
    x = zeros(n, k)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, n:]
    return x


def complete_basis(b: np.ndarray, dim: int, p: int) -> np.ndarray:
    """Columns ``c`` such that ``[b | c]`` is a basis of F_p^dim (``b`` independent)."""
    b = np.asarray(b, dtype=np.int64)
    if b.size == 0:
        b = zeros(dim, 0)
    if dim == 0:
        return zeros(0, 0)
    cols = [b]
    r = rank(b, p)
    extra = []
    for i in range(dim):
        e = zeros(dim, 1)
        e[i, 0] = 1
        trial = np.concatenate(cols + extra + [e], axis=1)
        if rank(trial, p) > r:
            extra.append(e)
            r += 1
        if r == dim:
            break
    if not extra:
        return zeros(dim, 0)
    return np.concatenate(extra, axis=1)


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    return solve(a, eye(n), p)
