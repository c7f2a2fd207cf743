"""Type-A quivers, their representations over F_p, and homological linear algebra.

A quiver ``A<n>`` has vertices ``1..n`` (stored 0-based internally) and one
arrow between each pair of neighbours.  Orientation flag ``R`` at position
``i`` means the arrow points ``i -> i+1``; ``L`` means ``i <- i+1``.

Representations are covariant: the matrix at an arrow ``a: i -> j`` has shape
``dim_j x dim_i``.  With this convention the projective ``P(v)`` is supported
on the vertices reachable from ``v``; on ``A2:R`` the interval ``[1, 2]`` is
``P(1)`` and the simple at vertex 2 is projective.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from tstrx import fp
from tstrx.errors import InternalInconsistency, QuiverMismatch, QuiverParseError

DimVector = tuple[int, ...]
Morphism = tuple[np.ndarray, ...]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % k for k in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class Quiver:
    """An orientation of the Dynkin diagram A_n over the prime field F_p."""

    n: int
    orientation: tuple[bool, ...] = ()
    p: int = 2

    def __post_init__(self):
        object.__setattr__(self, "orientation", tuple(bool(f) for f in self.orientation))
        if self.n < 1:
            raise ValueError("quiver needs at least one vertex")
        if len(self.orientation) != self.n - 1:
            raise ValueError(f"A{self.n} needs {self.n - 1} orientation flags")
        if not _is_prime(self.p):
            raise ValueError(f"field characteristic {self.p} is not prime")

    @property
    def arrows(self) -> tuple[tuple[int, int], ...]:
        """``(source, target)`` pairs, 0-based, arrow ``k`` joining ``k`` and ``k+1``."""
        return tuple((k, k + 1) if r else (k + 1, k) for k, r in enumerate(self.orientation))

    @property
    def flags(self) -> str:
        return "".join("R" if r else "L" for r in self.orientation)

    @property
    def spec(self) -> str:
        if not self.flags:
            return f"A{self.n}@{self.p}"
        return f"A{self.n}:{self.flags}@{self.p}"

    def with_field(self, p: int) -> "Quiver":
        return Quiver(self.n, self.orientation, p)

    def __str__(self) -> str:
        return self.spec


_QUIVER_RE = re.compile(r"^A(?P<n>[^:@]*)(?::(?P<flags>[^@]*))?(?:@(?P<p>.*))?$")


def parse_quiver(spec: str) -> Quiver:
    """Parse ``A<n>:<flags>[@p]``, e.g. ``"A3:RR@3"``; ``p`` defaults to 2."""
    text = spec.strip()
    m = _QUIVER_RE.match(text)
    if not m:
        raise QuiverParseError(f"quiver spec must look like A<n>:<flags>[@p], got {spec!r}", spec)
    n_tok, flags, p_tok = m.group("n"), m.group("flags") or "", m.group("p")
    if not n_tok.isdigit():
        raise QuiverParseError(f"invalid vertex count {n_tok!r}", n_tok)
    n = int(n_tok)
    if n == 0:
        raise QuiverParseError("vertex count must be at least 1, got '0'", n_tok)
    for ch in flags:
        if ch not in "LR":
            raise QuiverParseError(f"invalid flag {ch!r}", ch)
    if len(flags) != n - 1:
        raise QuiverParseError(f"A{n} needs {n - 1} flags, got {flags!r}", flags)
    p = 2
    if p_tok is not None:
        if not p_tok.isdigit() or not _is_prime(int(p_tok)):
            raise QuiverParseError(f"field characteristic {p_tok!r} is not a prime", p_tok)
        p = int(p_tok)
    return Quiver(n, tuple(ch == "R" for ch in flags), p)


class Rep:
    """A representation: one F_p vector space per vertex, one matrix per arrow."""

    __slots__ = ("quiver", "dims", "maps")

    def __init__(self, quiver: Quiver, dims: Sequence[int], maps: Sequence | None = None):
        dims = tuple(int(d) for d in dims)
        if len(dims) != quiver.n:
            raise ValueError(f"dimension vector {dims} has wrong length for {quiver.spec}")
        if any(d < 0 for d in dims):
            raise ValueError(f"negative dimension in {dims}")
        if maps is None:
            maps = [None] * len(quiver.arrows)
        if len(maps) != len(quiver.arrows):
            raise ValueError("one matrix per arrow is required")
        stored = []
        for (s, t), mat in zip(quiver.arrows, maps):
            if mat is None:
                mat = fp.zeros(dims[t], dims[s])
            mat = fp.as_fp(mat, quiver.p)
            if mat.size == 0:
                mat = fp.zeros(dims[t], dims[s])
            if mat.shape != (dims[t], dims[s]):
                raise ValueError(f"arrow {s + 1}->{t + 1} needs a {dims[t]}x{dims[s]} matrix, got {mat.shape}")
            mat.setflags(write=False)
            stored.append(mat)
        self.quiver = quiver
        self.dims = dims
        self.maps = tuple(stored)

    @property
    def is_zero(self) -> bool:
        return not any(self.dims)

    def __repr__(self) -> str:
        return f"Rep({self.quiver.spec}, dims={self.dims})"


def zero_rep(q: Quiver) -> Rep:
    return Rep(q, (0,) * q.n)


def direct_sum(*reps: Rep) -> Rep:
    q = reps[0].quiver
    for r in reps:
        _check_same(q, r.quiver)
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(q.n))
    maps = []
    for k, (s, t) in enumerate(q.arrows):
        block = fp.zeros(dims[t], dims[s])
        ro = co = 0
        for r in reps:
            block[ro:ro + r.dims[t], co:co + r.dims[s]] = r.maps[k]
            ro += r.dims[t]
            co += r.dims[s]
        maps.append(block)
    return Rep(q, dims, maps)


def _check_same(q1: Quiver, q2: Quiver) -> None:
    if q1 != q2:
        raise QuiverMismatch(f"representations live on different quivers: {q1.spec} vs {q2.spec}")


@dataclass(frozen=True)
class Ind:
    """The interval indecomposable supported on vertices ``lo..hi`` (1-based)."""

    quiver: Quiver
    lo: int
    hi: int

    def __post_init__(self):
        if not 1 <= self.lo <= self.hi <= self.quiver.n:
            raise ValueError(f"[{self.lo},{self.hi}] is not an interval of A{self.quiver.n}")

    @property
    def key(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    @property
    def dimvec(self) -> DimVector:
        return tuple(1 if self.lo <= v <= self.hi else 0 for v in range(1, self.quiver.n + 1))

    @property
    def label(self) -> str:
        return ",".join(map(str, self.dimvec))

    @functools.cached_property
    def rep(self) -> Rep:
        q = self.quiver
        dims = self.dimvec
        maps = [np.ones((1, 1), dtype=np.int64) if dims[s] and dims[t] else None for s, t in q.arrows]
        return Rep(q, dims, maps)

    @property
    def is_simple(self) -> bool:
        return self.lo == self.hi

    @property
    def is_projective(self) -> bool:
        return any(self.key == _reach(self.quiver, v, forward=True) for v in range(self.quiver.n))

    @property
    def is_injective(self) -> bool:
        return any(self.key == _reach(self.quiver, v, forward=False) for v in range(self.quiver.n))

    def __repr__(self) -> str:
        return f"Ind({self.label})"


def _reach(q: Quiver, v: int, forward: bool) -> tuple[int, int]:
    """1-based interval of vertices reachable from ``v`` (or reaching ``v``)."""
    lo = hi = v
    # arrow k joins k and k+1; orientation[k] True means k -> k+1
    while hi < q.n - 1 and q.orientation[hi] == forward:
        hi += 1
    while lo > 0 and q.orientation[lo - 1] != forward:
        lo -= 1
    return (lo + 1, hi + 1)


def sort_inds(inds: Iterable[Ind]) -> list[Ind]:
    return sorted(inds, key=lambda i: i.key)


@functools.lru_cache(maxsize=None)
def enumerate_indecomposables(q: Quiver) -> tuple[Ind, ...]:
    """All interval modules in lexicographic order of ``(lo, hi)``."""
    return tuple(Ind(q, lo, hi) for lo in range(1, q.n + 1) for hi in range(lo, q.n + 1))


def ind_from_dimvec(q: Quiver, dv: Sequence[int]) -> Ind:
    dv = tuple(dv)
    for ind in enumerate_indecomposables(q):
        if ind.dimvec == dv:
            return ind
    raise ValueError(f"{','.join(map(str, dv))} is not the dimension vector of an indecomposable of {q.spec}")


def _as_rep(x) -> Rep:
    return x.rep if isinstance(x, Ind) else x


# ---------------------------------------------------------------- Hom and Ext


def _hom_system(M: Rep, N: Rep) -> tuple[np.ndarray, list[int]]:
    """Matrix of ``(f_v) -> (f_j M_a - N_a f_i)_a`` on column-major ``vec(f_v)``."""
    q = M.quiver
    offsets = [0]
    for v in range(q.n):
        offsets.append(offsets[-1] + N.dims[v] * M.dims[v])
    rows = []
    for k, (i, j) in enumerate(q.arrows):
        block = fp.zeros(N.dims[j] * M.dims[i], offsets[-1])
        if block.shape[0]:
            block[:, offsets[j]:offsets[j + 1]] += np.kron(M.maps[k].T, fp.eye(N.dims[j]))
            block[:, offsets[i]:offsets[i + 1]] -= np.kron(fp.eye(M.dims[i]), N.maps[k])
        rows.append(block)
    mat = np.concatenate(rows, axis=0) if rows else fp.zeros(0, offsets[-1])
    return np.mod(mat, q.p), offsets


def hom_space(M, N) -> list[Morphism]:
    """A basis of Hom(M, N); each morphism is a tuple of per-vertex matrices."""
    M, N = _as_rep(M), _as_rep(N)
    _check_same(M.quiver, N.quiver)
    mat, offsets = _hom_system(M, N)
    basis = fp.nullspace(mat, M.quiver.p)
    out = []
    for c in range(basis.shape[1]):
        col = basis[:, c]
        out.append(tuple(
            col[offsets[v]:offsets[v + 1]].reshape((N.dims[v], M.dims[v]), order="F")
            for v in range(M.quiver.n)
        ))
    return out


@functools.lru_cache(maxsize=None)
def _ind_hom_dim(M: Ind, N: Ind) -> int:
    return _rep_hom_dim(M.rep, N.rep)


def _rep_hom_dim(M: Rep, N: Rep) -> int:
    mat, offsets = _hom_system(M, N)
    return offsets[-1] - fp.rank(mat, M.quiver.p)


def hom_dim(M, N) -> int:
    """dim_F Hom(M, N), by exact kernel dimension of the commuting-square system."""
    if isinstance(M, Ind) and isinstance(N, Ind):
        _check_same(M.quiver, N.quiver)
        return _ind_hom_dim(M, N)
    M, N = _as_rep(M), _as_rep(N)
    _check_same(M.quiver, N.quiver)
    return _rep_hom_dim(M, N)


def euler_form(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """``<d, e> = sum_v d_v e_v - sum_{a: i->j} d_i e_j``."""
    if len(d) != q.n or len(e) != q.n:
        raise ValueError(f"dimension vectors must have length {q.n}")
    return sum(x * y for x, y in zip(d, e)) - sum(d[i] * e[j] for i, j in q.arrows)


def ext1_dim(M, N) -> int:
    """dim Ext^1(M, N) = dim Hom(M, N) - <dim M, dim N> (the algebra is hereditary)."""
    q = _as_rep(M).quiver
    value = hom_dim(M, N) - euler_form(q, _dims(M), _dims(N))
    if value < 0:
        raise InternalInconsistency(f"negative Ext^1 dimension {value} for {M!r}, {N!r}")
    return value


def _dims(x) -> DimVector:
    return x.dimvec if isinstance(x, Ind) else x.dims


def ext_class_basis(M, N) -> list[tuple[np.ndarray, ...]]:
    """Cocycles ``(c_a)_a`` whose classes form a basis of Ext^1(M, N).

    The extension of ``M`` by ``N`` with cocycle ``c`` has arrow matrices
    ``[[N_a, c_a], [0, M_a]]``; cocycles differing by ``N_a h_i - h_j M_a``
    give equivalent extensions.
    """
    M, N = _as_rep(M), _as_rep(N)
    _check_same(M.quiver, N.quiver)
    q = M.quiver
    mat, _ = _hom_system(M, N)
    sizes = [N.dims[j] * M.dims[i] for i, j in q.arrows]
    total = sum(sizes)
    boundaries = fp.colspace(mat, q.p) if mat.shape[1] else fp.zeros(total, 0)
    reps = fp.complete_basis(boundaries, total, q.p)
    out = []
    for c in range(reps.shape[1]):
        col = reps[:, c]
        pieces, o = [], 0
        for (i, j), size in zip(q.arrows, sizes):
            pieces.append(col[o:o + size].reshape((N.dims[j], M.dims[i]), order="F"))
            o += size
        out.append(tuple(pieces))
    return out


def extension_middle(M, N, cocycle: Sequence[np.ndarray]) -> Rep:
    """Middle term ``E`` of the extension ``0 -> N -> E -> M -> 0`` given by ``cocycle``."""
    M, N = _as_rep(M), _as_rep(N)
    q = M.quiver
    dims = tuple(N.dims[v] + M.dims[v] for v in range(q.n))
    maps = []
    for k, (i, j) in enumerate(q.arrows):
        block = fp.zeros(dims[j], dims[i])
        block[:N.dims[j], :N.dims[i]] = N.maps[k]
        block[:N.dims[j], N.dims[i]:] = cocycle[k]
        block[N.dims[j]:, N.dims[i]:] = M.maps[k]
        maps.append(block)
    return Rep(q, dims, maps)


# ------------------------------------------------------- subobjects, quotients


def subrep(M: Rep, bases: Sequence[np.ndarray]) -> Rep:
    """The subrepresentation spanned by per-vertex column bases (must be stable)."""
    q = M.quiver
    maps = []
    for k, (i, j) in enumerate(q.arrows):
        image = fp.matmul(M.maps[k], bases[i], q.p)
        try:
            maps.append(fp.solve(bases[j], image, q.p))
        except ValueError:
            raise InternalInconsistency("subspace family is not closed under the arrow maps") from None
    return Rep(q, [b.shape[1] for b in bases], maps)


def quotient_rep(M: Rep, bases: Sequence[np.ndarray]) -> tuple[Rep, tuple[np.ndarray, ...]]:
    """``M`` modulo a stable subspace family, with the per-vertex projection matrices."""
    q = M.quiver
    comps, projs = [], []
    for v in range(q.n):
        b = bases[v] if bases[v].size else fp.zeros(M.dims[v], 0)
        c = fp.complete_basis(b, M.dims[v], q.p)
        full = np.concatenate([b, c], axis=1)
        inv = fp.inverse(full, q.p) if M.dims[v] else fp.zeros(0, 0)
        comps.append(c)
        projs.append(inv[b.shape[1]:, :])
    maps = [
        fp.matmul(projs[j], fp.matmul(M.maps[k], comps[i], q.p), q.p)
        for k, (i, j) in enumerate(q.arrows)
    ]
    return Rep(q, [c.shape[1] for c in comps], maps), tuple(projs)


def kernel_rep(M, f: Morphism) -> Rep:
    M = _as_rep(M)
    return subrep(M, [fp.nullspace(f[v], M.quiver.p) for v in range(M.quiver.n)])


def cokernel_rep(N, f: Morphism) -> Rep:
    N = _as_rep(N)
    bases = [fp.colspace(f[v], N.quiver.p) if f[v].shape[1] else fp.zeros(N.dims[v], 0)
             for v in range(N.quiver.n)]
    return quotient_rep(N, bases)[0]


def is_surjective(N, f: Morphism) -> bool:
    N = _as_rep(N)
    return all(fp.rank(f[v], N.quiver.p) == N.dims[v] for v in range(N.quiver.n))


@dataclass(frozen=True)
class TorsionSequence:
    """``0 -> sub -> M -> quotient -> 0`` with ``sub`` the trace of a module set."""

    sub: Rep
    quotient: Rep
    embedding: tuple[np.ndarray, ...]


def trace_bases(tset: Iterable, M) -> list[np.ndarray]:
    """Per-vertex bases of the sum of images of all maps from members of ``tset``."""
    M = _as_rep(M)
    q = M.quiver
    cols = [[fp.zeros(M.dims[v], 0)] for v in range(q.n)]
    for T in tset:
        for f in hom_space(T, M):
            for v in range(q.n):
                cols[v].append(f[v])
    return [fp.colspace(np.concatenate(c, axis=1), q.p) for c in cols]


def torsion_sequence(tset: Iterable, M) -> TorsionSequence:
    M = _as_rep(M)
    bases = trace_bases(tset, M)
    sub = subrep(M, bases)
    quot, _ = quotient_rep(M, bases)
    return TorsionSequence(sub, quot, tuple(bases))


# ---------------------------------------------------------------- decompose


def _rank_invariant(M: Rep, lo: int, hi: int) -> int:
    """Rank of lim -> colim of ``M`` restricted to vertices ``lo..hi`` (0-based)."""
    q = M.quiver
    verts = list(range(lo, hi + 1))
    offs = {}
    total = 0
    for v in verts:
        offs[v] = total
        total += M.dims[v]
    if total == 0:
        return 0
    inner = [(k, i, j) for k, (i, j) in enumerate(q.arrows) if lo <= min(i, j) and max(i, j) <= hi]
    eq_rows, rel_cols = [], []
    for k, i, j in inner:
        rows = fp.zeros(M.dims[j], total)
        rows[:, offs[i]:offs[i] + M.dims[i]] = M.maps[k]
        rows[:, offs[j]:offs[j] + M.dims[j]] -= fp.eye(M.dims[j])
        eq_rows.append(rows)
        cols = fp.zeros(total, M.dims[i])
        cols[offs[j]:offs[j] + M.dims[j], :] = M.maps[k]
        cols[offs[i]:offs[i] + M.dims[i], :] -= fp.eye(M.dims[i])
        rel_cols.append(cols)
    eqs = np.concatenate(eq_rows, axis=0) if eq_rows else fp.zeros(0, total)
    lim = fp.nullspace(np.mod(eqs, q.p), q.p)
    rel = np.mod(np.concatenate(rel_cols, axis=1), q.p) if rel_cols else fp.zeros(total, 0)
    image = fp.zeros(total, lim.shape[1])
    image[offs[lo]:offs[lo] + M.dims[lo], :] = lim[offs[lo]:offs[lo] + M.dims[lo], :]
    return fp.rank(np.concatenate([rel, image], axis=1), q.p) - fp.rank(rel, q.p)


def multiplicities_by_rank_invariant(M) -> dict[Ind, int]:
    """Interval multiplicities from the lim-to-colim ranks by inclusion-exclusion.

    ``r(l, h)`` counts summands whose interval contains ``[l, h]``, so the
    multiplicity of ``[l, h]`` is ``r(l,h) - r(l-1,h) - r(l,h+1) + r(l-1,h+1)``.
    """
    M = _as_rep(M)
    q = M.quiver
    n = q.n
    r = {}
    for lo in range(n):
        for hi in range(lo, n):
            r[lo, hi] = _rank_invariant(M, lo, hi)

    def rk(lo, hi):
        return r.get((lo, hi), 0) if 0 <= lo and hi < n else 0

    out = {}
    for ind in enumerate_indecomposables(q):
        lo, hi = ind.lo - 1, ind.hi - 1
        m = rk(lo, hi) - rk(lo - 1, hi) - rk(lo, hi + 1) + rk(lo - 1, hi + 1)
        if m:
            out[ind] = m
    return out


@functools.lru_cache(maxsize=None)
def _hom_matrix_inverse(q: Quiver) -> tuple[tuple[Fraction, ...], ...]:
    import sympy

    inds = enumerate_indecomposables(q)
    H = sympy.Matrix([[hom_dim(J, I) for J in inds] for I in inds])
    inv = H.inv()
    return tuple(tuple(Fraction(int(x.p), int(x.q)) for x in inv.row(i)) for i in range(len(inds)))


def multiplicities_by_hom_system(M) -> dict[Ind, int]:
    """Solve ``dim Hom(M, I) = sum_J m_J dim Hom(J, I)`` over all indecomposables ``I``."""
    M = _as_rep(M)
    q = M.quiver
    inds = enumerate_indecomposables(q)
    h = [hom_dim(M, I) for I in inds]
    inv = _hom_matrix_inverse(q)
    out = {}
    for J, row in zip(inds, inv):
        m = sum(c * x for c, x in zip(row, h))
        if m.denominator != 1 or m < 0:
            raise InternalInconsistency(f"Hom system gives multiplicity {m} for {J!r}")
        if m:
            out[J] = int(m)
    return out


def decompose(M) -> dict[Ind, int]:
    """Krull-Schmidt multiplicities of ``M``, cross-checked by two algorithms."""
    if isinstance(M, Ind):
        return {M: 1}
    a = multiplicities_by_rank_invariant(M)
    b = multiplicities_by_hom_system(M)
    if a != b:
        raise InternalInconsistency(f"decomposition routes disagree for {M!r}: {a} vs {b}")
    total = [0] * M.quiver.n
    for ind, m in a.items():
        for v, d in enumerate(ind.dimvec):
            total[v] += m * d
    if tuple(total) != M.dims:
        raise InternalInconsistency(f"decomposition of {M!r} does not add up to its dimension vector")
    return {ind: a[ind] for ind in sort_inds(a)}


def support(decomp: dict[Ind, int]) -> frozenset[Ind]:
    return frozenset(ind for ind, m in decomp.items() if m)
