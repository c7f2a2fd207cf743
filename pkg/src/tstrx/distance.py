"""Distance between the standard t-structure and a chain-presented one.

Two independent routes are provided.  ``distance_theorem`` reads ``a`` and
``b`` directly off the chain: ``a`` is the top of the run of full classes and
``b`` the bottom of the run of empty ones, giving ``d = b - 1 - a`` and
``m_d = a``.  ``distance_oracle`` ignores the chain data and scans the
containments ``D^{<=m} <= aisle <= D^{<=m+d}`` using Hom-orthogonality only.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from tstrx.derived_window import Stalk, stalk_hom_dim
from tstrx.errors import InternalInconsistency, NonTrivialRequired, PreconditionError
from tstrx.quiver_rep import Quiver, enumerate_indecomposables
from tstrx.torsion import TorsionPair
from tstrx.tstructure import (
    TorsionChain,
    TStructurePresentation,
    Window,
    coaisle_generators,
    present,
    stalk_label,
)

INFINITE = math.inf


@dataclass(frozen=True)
class DistanceResult:
    d: int | float
    m_d: int | None
    a: int
    b: int
    window: Window
    bounds: tuple[int, int]
    certificates: dict = field(default_factory=dict, compare=False)

    @property
    def finite(self) -> bool:
        return self.d != INFINITE

    def key(self) -> tuple:
        return (self.d, self.m_d, self.a, self.b)

    def to_dict(self) -> dict:
        return {
            "d": "inf" if not self.finite else self.d,
            "m_d": self.m_d,
            "a": self.a,
            "b": self.b,
            "window": [self.window.lo, self.window.hi],
            "bounds": list(self.bounds),
        }


@dataclass(frozen=True)
class Containment:
    holds: bool
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.holds


# ------------------------------------------------------------ orthogonality route


@functools.lru_cache(maxsize=None)
def _left_orthogonal(ts: TStructurePresentation, j: int, M) -> bool:
    q = ts.quiver
    for i in (j, j - 1):
        for N in coaisle_generators(ts, i):
            if stalk_hom_dim(q, (j, M), (i, N)):
                return False
    return True


def in_aisle_by_orthogonality(ts: TStructurePresentation, stalk: Stalk) -> bool:
    """Aisle membership as the left orthogonal of the co-aisle generators."""
    return _left_orthogonal(ts, stalk[0], stalk[1])


def in_coaisle(ts: TStructurePresentation, stalk: Stalk) -> bool:
    return stalk[1] in coaisle_generators(ts, stalk[0])


def aisle_containment(q: Quiver, m: int, ts: TStructurePresentation) -> Containment:
    """Whether ``D_std^{<=m}`` lies in the aisle, tested on stalk generators."""
    ts.require_accepted()
    for j in range(min(m, ts.window.lo - 1) - 1, m + 1):
        for M in enumerate_indecomposables(q):
            if not in_aisle_by_orthogonality(ts, (j, M)):
                return Containment(False, stalk_label((j, M)))
    return Containment(True)


def coaisle_containment(q: Quiver, k: int, ts: TStructurePresentation) -> Containment:
    """Whether ``D_std^{>=k}`` lies in the co-aisle, i.e. the aisle lies in ``D_std^{<=k-1}``."""
    ts.require_accepted()
    for j in range(k, max(k, ts.window.hi + 1) + 2):
        for N in enumerate_indecomposables(q):
            if not in_coaisle(ts, (j, N)):
                return Containment(False, stalk_label((j, N)))
    return Containment(True)


# --------------------------------------------------------------------- routes


def distance_theorem(ts: TStructurePresentation, normalize: bool = True) -> DistanceResult:
    ts.require_accepted()
    chain = ts.chain
    everything = chain.everything
    lo, hi = chain.window.lo, chain.window.hi
    n1, n2 = chain.tight_bounds() if normalize else (lo - 1, hi)
    a = n1
    while a + 1 <= n2 and chain.at(a + 1) == everything:
        a += 1
    b = n2 + 1
    while b - 1 > a and not chain.at(b - 1):
        b -= 1
    d = b - 1 - a
    return DistanceResult(d, a, a, b, chain.window, (n1, n2), {"route": "theorem"})


def distance_oracle(ts: TStructurePresentation) -> DistanceResult:
    ts.require_accepted()
    q = ts.quiver
    lo, hi = ts.window.lo, ts.window.hi
    ms = range(lo - 1, hi + 2)
    lower = {m: aisle_containment(q, m, ts) for m in ms}
    upper = {k: coaisle_containment(q, k, ts) for k in range(lo - 1, hi + 3)}
    best = None
    minimizers = []
    for m in ms:
        if not lower[m]:
            continue
        for dd in range(0, hi + 2 - m + 1):
            if upper.get(m + dd + 1):
                if best is None or dd < best:
                    best, minimizers = dd, [m]
                elif dd == best:
                    minimizers.append(m)
                break
    certs = {
        "route": "oracle",
        "minimizers": minimizers,
        "lower": {str(m): lower[m].witness for m in ms},
        "upper": {str(k): upper[k].witness for k in upper},
    }
    if best is None:
        return DistanceResult(INFINITE, None, lo - 1, hi + 1, ts.window, (lo - 1, hi), certs)
    m = minimizers[0]
    return DistanceResult(best, m, m, m + best + 1, ts.window, ts.chain.tight_bounds(), certs)


def compute_distance(ts: TStructurePresentation) -> DistanceResult:
    """Run both routes and insist that they agree."""
    thm = distance_theorem(ts)
    orc = distance_oracle(ts)
    if thm.key() != orc.key():
        raise InternalInconsistency(
            f"distance routes disagree on {ts.chain.render()}: theorem {thm.key()}, oracle {orc.key()}"
        )
    return DistanceResult(thm.d, thm.m_d, thm.a, thm.b, thm.window, thm.bounds,
                          {**orc.certificates, "route": "both"})


# --------------------------------------------------------------------- audits


class _Membership:
    """Shifted standard and presented aisles and co-aisles as boolean tables.

    Rows are degrees ``lo - pad .. hi + pad``, columns indecomposables.  The
    presented tables come from the orthogonality route; outside
    ``[lo - 2, hi + 2]`` every row repeats the nearest computed one, since the
    generators there no longer change.
    """

    def __init__(self, ts: TStructurePresentation, pad: int):
        self.ts, self.pad = ts, pad
        inds = enumerate_indecomposables(ts.quiver)
        lo, hi = ts.window.lo, ts.window.hi
        self.base = lo - pad
        self.degrees = np.arange(lo - pad, hi + pad + 1)
        self.width = len(inds)
        self._first = lo - 2
        span = range(lo - 2, hi + 3)
        self._aisle = np.array([[in_aisle_by_orthogonality(ts, (j, M)) for M in inds] for j in span])
        self._coaisle = np.array([[in_coaisle(ts, (j, M)) for M in inds] for j in span])

    def _rows(self, table, shift):
        idx = np.clip(self.degrees - shift - self._first, 0, len(table) - 1)
        return table[idx]

    def std_le(self, k):
        return np.repeat((self.degrees <= k)[:, None], self.width, axis=1)

    def std_ge(self, k):
        return np.repeat((self.degrees >= k)[:, None], self.width, axis=1)

    def ts_le(self, k):
        return self._rows(self._aisle, k)

    def ts_ge(self, k):
        return self._rows(self._coaisle, k - 1)

    @staticmethod
    def within(small, big) -> bool:
        return not bool(np.any(small & ~big))


def lemma_sy_audit(ts: TStructurePresentation, m: int, n: int, tables: _Membership | None = None) -> dict:
    """Evaluate the six equivalent containment statements for ``(m, n)``."""
    ts.require_accepted()
    if m > n:
        raise PreconditionError("need m <= n")
    pad = abs(m) + abs(n) + 4
    u = tables if tables is not None and tables.pad >= pad else _Membership(ts, pad)
    s1_le, s1_ge = u.std_le, u.std_ge
    s2_le, s2_ge = u.ts_le, u.ts_ge
    w = u.within
    statements = {
        "1": w(s1_le(m), s2_le(0)) and w(s2_le(0), s1_le(n)),
        "2": w(s2_le(-n), s1_le(0)) and w(s1_le(0), s2_le(-m)),
        "3": w(s1_ge(n), s2_ge(0)) and w(s2_ge(0), s1_ge(m)),
        "4": w(s2_ge(-m), s1_ge(0)) and w(s1_ge(0), s2_ge(-n)),
        "5": w(s1_le(m), s2_le(0)) and w(s1_ge(n), s2_ge(0)),
        "6": w(s2_le(-n), s1_le(0)) and w(s2_ge(-m), s1_ge(0)),
    }
    return {"m": m, "n": n, "statements": statements, "agree": len(set(statements.values())) == 1}


def lemma_sy_grid(ts: TStructurePresentation, width: int = 6) -> list[dict]:
    start = distance_theorem(ts).a - 2
    grid = range(start, start + width)
    tables = _Membership(ts, 2 * max(abs(start), abs(start + width)) + 4)
    return [lemma_sy_audit(ts, m, n, tables) for m in grid for n in grid if m <= n]


def swapped_distance(ts: TStructurePresentation) -> tuple[int, int] | None:
    """Distance with the roles exchanged: least ``d`` with ``D_2^{<=m} <= D_1^{<=0} <= D_2^{<=m+d}``."""
    lo, hi = ts.window.lo, ts.window.hi
    u = _Membership(ts, hi - lo + 6)
    zero = u.std_le(0)
    ms = range(-hi - 2, -lo + 3)
    lower = {m: u.within(u.ts_le(m), zero) for m in ms}
    upper = {k: u.within(zero, u.ts_le(k)) for k in range(-hi - 2, -lo + 3 + hi - lo + 4)}
    best = None
    for m in ms:
        if not lower[m]:
            continue
        for dd in range(0, hi - lo + 4):
            if upper.get(m + dd):
                if best is None or dd < best[0]:
                    best = (dd, m)
                break
    return best


def symmetry_and_uniqueness_audit(ts: TStructurePresentation) -> dict:
    res = compute_distance(ts)
    if not res.finite:
        raise PreconditionError("audit needs a finite distance")
    swapped = swapped_distance(ts)
    n1, n2 = res.bounds
    minimizers = res.certificates["minimizers"]
    return {
        "d": res.d,
        "m_d": res.m_d,
        "swapped": None if swapped is None else {"d": swapped[0], "m": swapped[1]},
        "symmetric": swapped is not None and swapped[0] == res.d,
        "minimizers": list(minimizers),
        "unique": len(minimizers) == 1,
        "bounds": [n1, n2],
        "bounds_hold": n1 <= res.m_d <= res.m_d + res.d <= n2,
    }


def construct_distance_n(tp: TorsionPair, n: int) -> TStructurePresentation:
    """Constant chain ``T_1 = ... = T_n = tp.tset`` on ``[1, n]``, validated.

    The presentation is returned whatever the verdict so that a rejection
    report stays attached to the object that produced it.
    """
    if not tp.nontrivial:
        raise NonTrivialRequired("the construction needs a non-trivial torsion pair")
    if n < 1:
        raise PreconditionError(f"n must be at least 1, got {n}")
    return present(TorsionChain.constant(tp.quiver, Window(1, n), tp.tset))
