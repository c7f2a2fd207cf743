"""Numpy implementations of the hot kernels, used when the extension is absent."""
from __future__ import annotations

import numpy as np

_CHUNK = 1 << 16


def rref_mod_p(a, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form of ``a`` over F_p; see the compiled twin."""
    r = np.mod(np.array(a, dtype=np.int64), p)
    m, n = r.shape
    pivots = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = pow(int(r[row, col]), -1, p)
        r[row] = (r[row] * inv) % p
        factors = r[:, col].copy()
        factors[row] = 0
        r = (r - np.outer(factors, r[row])) % p
        pivots.append(col)
        row += 1
    return r, tuple(pivots)


def closed_subsets(n_items: int, quot_masks, ext_masks) -> np.ndarray:
    """All bitmasks closed under the quotient and extension tables."""
    if n_items > 30:
        raise ValueError("closed_subsets supports at most 30 items")
    quot = np.asarray(quot_masks, dtype=np.uint64)
    ext = np.asarray(ext_masks, dtype=np.uint64)
    total = 1 << n_items
    found = []
    one = np.uint64(1)
    for start in range(0, total, _CHUNK):
        s = np.arange(start, min(start + _CHUNK, total), dtype=np.uint64)
        ok = np.ones(s.shape, dtype=bool)
        has = [((s >> np.uint64(i)) & one).astype(bool) for i in range(n_items)]
        for i in range(n_items):
            ok &= ~has[i] | ((s & quot[i]) == quot[i])
            for j in range(n_items):
                need = ext[i, j]
                if need:
                    ok &= ~(has[i] & has[j]) | ((s & need) == need)
        found.append(s[ok])
    return np.concatenate(found) if found else np.zeros(0, dtype=np.uint64)
