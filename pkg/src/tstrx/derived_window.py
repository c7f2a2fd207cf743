"""Stalk-sum model of the bounded derived category of a hereditary path algebra.

Over a hereditary algebra every complex is quasi-isomorphic to the direct sum
of its shifted cohomology modules, so an object is a finite multiset of
``(degree, indecomposable)`` terms.  Degree convention: the stalk
``Sigma^{-j} M`` sits in cohomological degree ``j``, and the standard aisle
``D^{<=n}`` holds the objects with all degrees ``<= n``.

    Hom(Sigma^{-i} M, Sigma^{-j} N) = Ext^{i-j}(M, N)

which is ``Hom(M, N)`` for ``i == j``, ``Ext^1(M, N)`` for ``i == j + 1`` and
zero otherwise.  Morphism data between objects is not represented.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from tstrx.quiver_rep import Ind, Rep, decompose, ext1_dim, hom_dim

Stalk = tuple[int, Ind]


def _term_key(term: Stalk):
    return (term[0], term[1].key)


@dataclass(frozen=True)
class StalkSum:
    """A direct sum of shifted indecomposables; equality is multiset equality."""

    terms: tuple[Stalk, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(sorted(self.terms, key=_term_key)))

    @classmethod
    def of(cls, *terms: Stalk) -> "StalkSum":
        return cls(tuple(terms))

    @classmethod
    def from_rep(cls, degree: int, M: Rep) -> "StalkSum":
        return cls(tuple((degree, ind) for ind, m in decompose(M).items() for _ in range(m)))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def quiver(self):
        return self.terms[0][1].quiver if self.terms else None

    def degrees(self) -> list[int]:
        return sorted({d for d, _ in self.terms})

    def __add__(self, other: "StalkSum") -> "StalkSum":
        return StalkSum(self.terms + other.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def shift(self, s: int) -> "StalkSum":
        """Move every term ``s`` degrees up, i.e. apply ``Sigma^{-s}``."""
        return StalkSum(tuple((d + s, M) for d, M in self.terms))

    def counter(self) -> Counter:
        return Counter(self.terms)

    def render(self) -> str:
        if not self.terms:
            return "0"
        return "+".join(f"{d}:{M.label}" for d, M in self.terms)

    def __repr__(self) -> str:
        return f"StalkSum({self.render()})"


def stalk_hom_dim(q, x: Stalk, y: Stalk) -> int:
    (i, M), (j, N) = x, y
    if i == j:
        return hom_dim(M, N)
    if i == j + 1:
        return ext1_dim(M, N)
    return 0


def object_hom_dim(X: StalkSum, Y: StalkSum) -> int:
    return sum(stalk_hom_dim(None, x, y) for x in X for y in Y)


def cohomology(X: StalkSum, i: int) -> list[Ind]:
    return [M for d, M in X if d == i]


def standard_truncate(X: StalkSum, m: int) -> tuple[StalkSum, StalkSum]:
    """Split ``X`` into its degree ``<= m`` and degree ``>= m + 1`` parts."""
    low = tuple(t for t in X if t[0] <= m)
    high = tuple(t for t in X if t[0] > m)
    return StalkSum(low), StalkSum(high)


def degree_slices(X: StalkSum, lo: int, hi: int) -> list[StalkSum]:
    """Factor ``X`` supported in ``[lo, hi]`` by repeated standard truncation.

    Peels off the top degree at ``hi - 1``, then ``hi - 2`` and so on; the
    returned slices are in increasing degree order.
    """
    if any(not lo <= d <= hi for d in X.degrees()):
        raise ValueError(f"object {X.render()} is not supported in [{lo}, {hi}]")
    slices = []
    rest = X
    for m in range(hi - 1, lo - 1, -1):
        rest, top = standard_truncate(rest, m)
        slices.append(top)
    slices.append(rest)
    return slices[::-1]


def union(objects: Iterable[StalkSum]) -> StalkSum:
    terms: tuple = ()
    for X in objects:
        terms += X.terms
    return StalkSum(terms)
