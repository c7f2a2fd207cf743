"""Brute-force oracles that share no linear algebra with the package.

Everything here enumerates finite sets over F_p directly: candidate morphism
tuples, cochains and their coboundaries, representations with small spaces.
Only usable for tiny dimensions.
"""
from __future__ import annotations

import itertools
import math

import numpy as np


def _all_matrices(rows, cols, p):
    if rows == 0 or cols == 0:
        yield np.zeros((rows, cols), dtype=np.int64)
        return
    for entries in itertools.product(range(p), repeat=rows * cols):
        yield np.array(entries, dtype=np.int64).reshape(rows, cols)


def _tuples(dims_from, dims_to, p):
    spaces = [list(_all_matrices(dims_to[v], dims_from[v], p)) for v in range(len(dims_from))]
    return itertools.product(*spaces)


def _log(count, p):
    d = round(math.log(count, p))
    assert p ** d == count
    return d


def brute_hom_dim(M, N) -> int:
    """Count commuting tuples; the count is ``p ** dim Hom``."""
    q = M.quiver
    p = q.p
    count = 0
    for f in _tuples(M.dims, N.dims, p):
        if all(
            np.array_equal((f[t] @ M.maps[a]) % p, (N.maps[a] @ f[s]) % p)
            for a, (s, t) in enumerate(q.arrows)
        ):
            count += 1
    return _log(count, p)


def brute_ext_dim(M, N) -> int:
    """Cochains modulo the image of the coboundary, counted element by element."""
    q = M.quiver
    p = q.p
    cochain_size = sum(N.dims[t] * M.dims[s] for s, t in q.arrows)
    images = set()
    for f in _tuples(M.dims, N.dims, p):
        image = tuple(
            int(x)
            for a, (s, t) in enumerate(q.arrows)
            for x in ((f[t] @ M.maps[a] - N.maps[a] @ f[s]) % p).ravel()
        )
        images.add(image)
    return _log(p ** cochain_size // len(images), p)


def brute_is_indecomposable(M) -> bool:
    """No idempotent endomorphism other than 0 and 1."""
    q = M.quiver
    p = q.p
    if sum(M.dims) == 0:
        return False
    for f in _tuples(M.dims, M.dims, p):
        if not all(
            np.array_equal((f[t] @ M.maps[a]) % p, (M.maps[a] @ f[s]) % p)
            for a, (s, t) in enumerate(q.arrows)
        ):
            continue
        idem = all(np.array_equal((f[v] @ f[v]) % p, f[v]) for v in range(q.n))
        zero = all(not f[v].any() for v in range(q.n))
        one = all(np.array_equal(f[v], np.eye(M.dims[v], dtype=np.int64)) for v in range(q.n))
        if idem and not zero and not one:
            return False
    return True


def thin_indecomposable_dimvecs(q) -> set[tuple[int, ...]]:
    """Dimension vectors of indecomposables among all reps with spaces of dimension <= 1."""
    from tstrx.quiver_rep import Rep

    found = set()
    for dims in itertools.product((0, 1), repeat=q.n):
        shapes = [(dims[t], dims[s]) for s, t in q.arrows]
        choices = [list(_all_matrices(r, c, q.p)) for r, c in shapes]
        for maps in itertools.product(*choices):
            M = Rep(q, dims, list(maps))
            if brute_is_indecomposable(M):
                found.add(tuple(dims))
    return found


def multiplicities_by_brute_hom(M, inds) -> dict:
    """Solve ``dim Hom(M, I) = sum_J m_J dim Hom(J, I)`` with brute-force Hom counts."""
    H = np.array([[brute_hom_dim(J.rep, I.rep) for I in inds] for J in inds], dtype=float)
    rhs = np.array([brute_hom_dim(M, I.rep) for I in inds], dtype=float)
    m = np.linalg.solve(H.T, rhs)
    out = {}
    for J, x in zip(inds, m):
        k = int(round(x))
        assert abs(x - k) < 1e-9
        if k:
            out[J] = k
    return out


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)
