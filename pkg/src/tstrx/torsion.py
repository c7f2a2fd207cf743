"""Torsion pairs in the module category of a type-A quiver.

A torsion pair is stored by its indecomposable support.  Because the trace of
a module set commutes with direct sums, checking the torsion axiom on every
indecomposable module is the same as checking it on every module.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from tstrx import fp, kernels
from tstrx.errors import SizeGuardExceeded
from tstrx.quiver_rep import (
    Ind,
    Quiver,
    decompose,
    enumerate_indecomposables,
    ext1_dim,
    ext_class_basis,
    extension_middle,
    hom_dim,
    hom_space,
    is_surjective,
    quotient_rep,
    sort_inds,
    subrep,
    support,
)

MAX_ENUMERATION_VERTICES = 6
MAX_AXIOM_SCAN_INDS = 15


def labels(inds: Iterable[Ind]) -> list[str]:
    return [i.label for i in sort_inds(inds)]


@dataclass(frozen=True)
class TorsionPair:
    quiver: Quiver
    tset: frozenset
    fset: frozenset

    def __post_init__(self):
        if self.tset & self.fset:
            raise ValueError("torsion and torsion-free classes must be disjoint")

    @property
    def nontrivial(self) -> bool:
        everything = frozenset(enumerate_indecomposables(self.quiver))
        return self.tset != everything and self.fset != everything

    def __repr__(self) -> str:
        return f"TorsionPair(T={labels(self.tset)}, F={labels(self.fset)})"


@dataclass(frozen=True)
class RejectionReport:
    """Why a candidate T-set is not the torsion class of a torsion pair."""

    tset: frozenset
    module: Ind | None
    closure: str
    detail: str
    trace: tuple[str, ...] = ()
    quotient: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class ExtSplit:
    split: bool
    witness: tuple[Ind, Ind] | None = None
    dim: int = 0

    def __bool__(self) -> bool:
        return self.split


def perp(q: Quiver, tset: Iterable[Ind]) -> frozenset:
    """Indecomposables ``N`` with ``Hom(T, N) = 0`` for every ``T`` in ``tset``."""
    tset = list(tset)
    return frozenset(N for N in enumerate_indecomposables(q) if all(hom_dim(T, N) == 0 for T in tset))


@functools.lru_cache(maxsize=None)
def _image_columns(T: Ind, M: Ind) -> tuple[np.ndarray, ...]:
    q = M.quiver
    cols = [[fp.zeros(M.dimvec[v], 0)] for v in range(q.n)]
    for f in hom_space(T, M):
        for v in range(q.n):
            cols[v].append(f[v])
    return tuple(np.concatenate(c, axis=1) for c in cols)


@functools.lru_cache(maxsize=None)
def _split_for_span(M: Ind, key: tuple) -> tuple[dict, dict]:
    q = M.quiver
    bases = []
    for v, rows in enumerate(key):
        if rows:
            bases.append(np.array(rows, dtype=np.int64).T)
        else:
            bases.append(fp.zeros(M.dimvec[v], 0))
    sub = subrep(M.rep, bases)
    quot, _ = quotient_rep(M.rep, bases)
    return decompose(sub), decompose(quot)


@functools.lru_cache(maxsize=None)
def torsion_split(tset: frozenset, M: Ind) -> tuple[dict, dict]:
    """Decompositions of the trace of ``tset`` in ``M`` and of the quotient."""
    q = M.quiver
    key = []
    for v in range(q.n):
        cols = [fp.zeros(M.dimvec[v], 0)] + [_image_columns(T, M)[v] for T in sort_inds(tset)]
        key.append(fp.canonical_span(np.concatenate(cols, axis=1), q.p))
    return _split_for_span(M, tuple(key))


def check_torsion_pair(q: Quiver, tset: Iterable[Ind], fset: Iterable[Ind] | None = None):
    """Return the ``TorsionPair`` with torsion class ``add(tset)``, or a ``RejectionReport``.

    When ``fset`` is omitted it is taken to be ``perp(tset)``.  When given, it
    is checked as stated.
    """
    tset = frozenset(tset)
    inds = enumerate_indecomposables(q)
    if fset is None:
        fset = perp(q, tset)
    else:
        fset = frozenset(fset)
        both = tset & fset
        if both:
            M = sort_inds(both)[0]
            return RejectionReport(tset, M, "disjointness", f"{M.label} lies in both T and F")
        for T in sort_inds(tset):
            for F in sort_inds(fset):
                if hom_dim(T, F):
                    return RejectionReport(
                        tset, F, "orthogonality",
                        f"Hom({T.label}, {F.label}) = {hom_dim(T, F)} is nonzero",
                    )
    for M in inds:
        sub, quot = torsion_split(tset, M)
        if not support(sub) <= tset:
            return RejectionReport(
                tset, M, "quotient",
                f"trace of T in {M.label} is not in add T",
                tuple(labels(sub)), tuple(labels(quot)),
            )
        if not support(quot) <= fset:
            return RejectionReport(
                tset, M, "extension",
                f"{M.label} modulo its trace is not in add F",
                tuple(labels(sub)), tuple(labels(quot)),
            )
    return TorsionPair(q, tset, fset)


def is_ext_split(tp: TorsionPair) -> ExtSplit:
    """Whether ``Ext^1(T, F) = 0`` for all ``T`` in the torsion class and ``F`` in the free class."""
    for T in sort_inds(tp.tset):
        for F in sort_inds(tp.fset):
            e = ext1_dim(T, F)
            if e:
                return ExtSplit(False, (T, F), e)
    return ExtSplit(True)


# ----------------------------------------------------------------- enumeration


def _morphism_combinations(basis, p: int, limit: int = 64):
    """Every nonzero F_p-combination of ``basis``, or just the basis if that is too many."""
    if not basis:
        return
    if p ** len(basis) > limit:
        yield from basis
        return
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        if any(coeffs):
            yield tuple(
                np.mod(sum(c * f[v] for c, f in zip(coeffs, basis)), p) for v in range(len(basis[0]))
            )


@functools.lru_cache(maxsize=None)
def closure_tables(q: Quiver) -> tuple[np.ndarray, np.ndarray]:
    """Bitmask tables: indecomposable quotients and extension middle-term summands."""
    inds = enumerate_indecomposables(q)
    index = {ind: k for k, ind in enumerate(inds)}
    n = len(inds)
    quot = np.zeros(n, dtype=np.uint64)
    ext = np.zeros((n, n), dtype=np.uint64)
    for i, X in enumerate(inds):
        bits = 1 << i
        for j, Y in enumerate(inds):
            if any(is_surjective(Y, f) for f in _morphism_combinations(hom_space(X, Y), q.p)):
                bits |= 1 << j
        quot[i] = bits
    for i, X in enumerate(inds):
        for j, Y in enumerate(inds):
            bits = 0
            for c in _morphism_combinations(ext_class_basis(X, Y), q.p):
                for Z in decompose(extension_middle(X, Y, c)):
                    bits |= 1 << index[Z]
            ext[i, j] = bits
    return quot, ext


def _mask_to_set(inds, mask: int) -> frozenset:
    return frozenset(ind for k, ind in enumerate(inds) if (mask >> k) & 1)


def torsion_classes_by_closure(q: Quiver) -> list[frozenset]:
    """Subsets closed under indecomposable quotients and extension summands."""
    _guard(q)
    inds = enumerate_indecomposables(q)
    quot, ext = closure_tables(q)
    return [_mask_to_set(inds, int(m)) for m in kernels.closed_subsets(len(inds), quot, ext)]


def torsion_classes_by_axioms(q: Quiver) -> list[frozenset]:
    """Every subset whose torsion sequences split correctly, by a full power-set walk."""
    inds = enumerate_indecomposables(q)
    if len(inds) > MAX_AXIOM_SCAN_INDS:
        raise SizeGuardExceeded(f"unfiltered axiom walk is limited to {MAX_AXIOM_SCAN_INDS} indecomposables")
    out = []
    for mask in range(1 << len(inds)):
        tset = _mask_to_set(inds, mask)
        if check_torsion_pair(q, tset):
            out.append(tset)
    return out


def _guard(q: Quiver) -> None:
    if q.n > MAX_ENUMERATION_VERTICES:
        raise SizeGuardExceeded(
            f"torsion-pair enumeration is limited to n <= {MAX_ENUMERATION_VERTICES}, got n = {q.n}"
        )


def _pair_order(tp: TorsionPair):
    return (len(tp.tset), [i.key for i in sort_inds(tp.tset)])


@functools.lru_cache(maxsize=None)
def _enumerate(q: Quiver) -> tuple[TorsionPair, ...]:
    pairs = {}
    for tset in torsion_classes_by_closure(q):
        tp = check_torsion_pair(q, tset)
        if tp:
            pairs[tp.tset] = tp
    return tuple(sorted(pairs.values(), key=_pair_order))


def enumerate_torsion_pairs(q: Quiver) -> list[TorsionPair]:
    """All torsion pairs: closure pre-filter, then the axiom walk on the survivors."""
    _guard(q)
    return list(_enumerate(q))
