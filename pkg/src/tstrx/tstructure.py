"""T-structures presented by a decreasing chain of torsion classes.

A chain on the window ``[lo, hi]`` assigns a torsion class ``T_j`` to every
degree ``j`` in the window; below the window ``T_j`` is everything and above
it ``T_j`` is empty.  The aisle is the additive closure of the stalks
``(j, M)`` with ``M`` in ``T_j``.  It always sits between the standard aisles
``D^{<=lo-1}`` and ``D^{<=hi}``.

The validator uses a sufficient criterion.  If every ``T_j`` is a torsion
class, the chain decreases and ``Ext^1(T_{j+1}, F_j) = 0`` where
``F_j = T_j^perp``, then truncation is done termwise by torsion sequences and
the co-aisle is the additive closure of the stalks ``(j, N)``, ``N`` in ``F_j``.
A chain is rejected only with a certificate: a non-torsion class, a failure of
monotonicity, or an explicit triangle whose outer terms lie in the aisle and
whose middle term does not.  Anything else that fails the criterion is
reported as not verified.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from tstrx.derived_window import Stalk, StalkSum, stalk_hom_dim
from tstrx.errors import (
    ContainmentError,
    PreconditionError,
    SizeGuardExceeded,
    UnvalidatedPresentation,
)
from tstrx.quiver_rep import (
    Ind,
    Quiver,
    cokernel_rep,
    decompose,
    enumerate_indecomposables,
    ext1_dim,
    hom_dim,
    hom_space,
    kernel_rep,
    sort_inds,
    support,
)
from tstrx.torsion import (
    TorsionPair,
    _morphism_combinations,
    check_torsion_pair,
    enumerate_torsion_pairs,
    labels,
    perp,
    torsion_split,
)

MAX_CHAIN_WIDTH = 4
MAX_CHAIN_VERTICES = 4


class Verdict(str, enum.Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    NOT_VERIFIED = "not-verified"


@dataclass(frozen=True)
class Window:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"window [{self.lo}, {self.hi}] is empty")

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def shifted(self, s: int) -> "Window":
        return Window(self.lo + s, self.hi + s)


def stalk_label(stalk: Stalk) -> str:
    return f"{stalk[0]}:{stalk[1].label}"


@dataclass(frozen=True)
class TorsionChain:
    quiver: Quiver
    window: Window
    classes: tuple = ()

    def __post_init__(self):
        classes = tuple(frozenset(c) for c in self.classes)
        if len(classes) != self.window.width:
            raise ValueError(f"need one class per degree of [{self.window.lo}, {self.window.hi}]")
        for c in classes:
            for M in c:
                if M.quiver != self.quiver:
                    raise ValueError(f"{M!r} does not belong to {self.quiver.spec}")
        object.__setattr__(self, "classes", classes)

    @classmethod
    def constant(cls, q: Quiver, window: Window, tset: Iterable[Ind]) -> "TorsionChain":
        tset = frozenset(tset)
        return cls(q, window, (tset,) * window.width)

    @property
    def everything(self) -> frozenset:
        return frozenset(enumerate_indecomposables(self.quiver))

    def at(self, j: int) -> frozenset:
        if j < self.window.lo:
            return self.everything
        if j > self.window.hi:
            return frozenset()
        return self.classes[j - self.window.lo]

    def shifted(self, s: int) -> "TorsionChain":
        return TorsionChain(self.quiver, self.window.shifted(s), self.classes)

    def tight_bounds(self) -> tuple[int, int]:
        """Largest ``n1`` and smallest ``n2`` with ``D^{<=n1} <= aisle <= D^{<=n2}``."""
        everything = self.everything
        n1 = self.window.lo - 1
        while n1 + 1 <= self.window.hi and self.at(n1 + 1) == everything:
            n1 += 1
        n2 = self.window.hi
        while n2 >= self.window.lo and not self.at(n2):
            n2 -= 1
        return n1, max(n1, n2)

    def render(self) -> str:
        everything = self.everything
        parts = []
        for j in self.window.degrees():
            c = self.at(j)
            body = "full" if c == everything else ("empty" if not c else ";".join(labels(c)))
            parts.append(f"T{j}={body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"TorsionChain({self.quiver.spec}, {self.render()})"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass(frozen=True)
class ValidationReport:
    verdict: Verdict
    checks: tuple[CheckResult, ...]
    witnesses: tuple[dict, ...] = ()

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in self.checks],
            "witnesses": [dict(w) for w in self.witnesses],
        }


@dataclass(frozen=True)
class TStructurePresentation:
    chain: TorsionChain
    validated: ValidationReport = field(compare=False)

    @property
    def quiver(self) -> Quiver:
        return self.chain.quiver

    @property
    def window(self) -> Window:
        return self.chain.window

    @property
    def accepted(self) -> bool:
        return self.validated.verdict is Verdict.ACCEPTED

    def require_accepted(self) -> None:
        if not self.accepted:
            raise UnvalidatedPresentation(
                f"presentation {self.chain.render()} is {self.validated.verdict.value}, not accepted"
            )

    def aisle_member(self, X: StalkSum) -> bool:
        return aisle_member(self, X)

    def coaisle_member(self, X: StalkSum) -> bool:
        return coaisle_member(self, X)

    def truncate(self, X: StalkSum) -> tuple[StalkSum, StalkSum]:
        return truncate(self, X)


# ------------------------------------------------------------------ validation


@functools.lru_cache(maxsize=None)
def _torsion_check(q: Quiver, tset: frozenset):
    return check_torsion_pair(q, tset)


@functools.lru_cache(maxsize=None)
def _perp(q: Quiver, tset: frozenset) -> frozenset:
    return perp(q, tset)


def _first_hit(q: Quiver, Tj: frozenset, Tk: frozenset, N: Ind):
    """First generator among ``(0, Tj)`` and ``(1, Tk)`` with a nonzero map to ``(0, N)``."""
    for T in sort_inds(Tj):
        if hom_dim(T, N):
            return (0, T)
    for T in sort_inds(Tk):
        if ext1_dim(T, N):
            return (1, T)
    return None


def _stalk_orthogonal(chain: TorsionChain, j: int, N: Ind) -> Stalk | None:
    """The first aisle generator with a nonzero map to ``(j, N)``, if any."""
    hit = _first_hit(chain.quiver, chain.at(j), chain.at(j + 1), N)
    return None if hit is None else (j + hit[0], hit[1])


def _shift_label(rel: tuple, j: int) -> str:
    return stalk_label((j + rel[0], rel[1]))


@functools.lru_cache(maxsize=None)
def _adjacent_checks(q: Quiver, Tj: frozenset, Tk: frozenset):
    """Checks (c), (d) and (e) for one degree, with degrees relative to it.

    Every check of a chain only ever looks at two neighbouring classes, so
    the results are shared between all chains containing the same step.
    """
    Fj = _perp(q, Tj)
    ext_violations = tuple(
        ((1, A), (0, B), ext1_dim(A, B))
        for A in sort_inds(Tk) for B in sort_inds(Fj) if ext1_dim(A, B)
    )
    truncation = None
    for M in enumerate_indecomposables(q):
        _, quot = torsion_split(Tj, M)
        for N in sort_inds(support(quot)):
            hit = _first_hit(q, Tj, Tk, N)
            if hit:
                truncation = ((0, M), (0, N), hit)
                break
        if truncation:
            break
    certificate = None
    for A in sort_inds(Tj):
        for B in sort_inds(Tk):
            for f in _morphism_combinations(hom_space(A, B), q.p):
                ker = support(decompose(kernel_rep(A, f)))
                cok = support(decompose(cokernel_rep(B, f)))
                bad = [(0, K) for K in sort_inds(ker - Tj)] + [(1, C) for C in sort_inds(cok - Tk)]
                if bad:
                    middle = [(0, K) for K in sort_inds(ker)] + [(1, C) for C in sort_inds(cok)]
                    certificate = (A, B, tuple(middle), tuple(bad))
                    break
            if certificate:
                break
        if certificate:
            break
    return ext_violations, truncation, certificate


def validate_chain(chain: TorsionChain) -> ValidationReport:
    q = chain.quiver
    lo, hi = chain.window.lo, chain.window.hi
    checks: list[CheckResult] = []
    witnesses: list[dict] = []

    bad_class = None
    for j in chain.window.degrees():
        r = _torsion_check(q, chain.at(j))
        if not r:
            bad_class = (j, r)
            break
    if bad_class:
        j, r = bad_class
        checks.append(CheckResult("torsion_classes", "fail", f"T{j} is not a torsion class ({r.closure})"))
        witnesses.append({"kind": "not_torsion_class", "degree": j, "module": r.module.label, "closure": r.closure})
    else:
        checks.append(CheckResult("torsion_classes", "pass"))

    bad_step = None
    for j in range(lo - 1, hi + 1):
        missing = chain.at(j + 1) - chain.at(j)
        if missing:
            bad_step = (j, sort_inds(missing)[0])
            break
    if bad_step:
        j, M = bad_step
        checks.append(CheckResult("decreasing", "fail", f"{M.label} is in T{j + 1} but not in T{j}"))
        witnesses.append({"kind": "not_decreasing", "degree": j, "module": M.label})
    else:
        checks.append(CheckResult("decreasing", "pass"))

    if bad_class or bad_step:
        for name in ("cross_degree_ext", "constructive_truncation", "extension_closure"):
            checks.append(CheckResult(name, "skipped"))
        return ValidationReport(Verdict.REJECTED, tuple(checks), tuple(witnesses))

    ext_violations = []
    truncation_failure = None
    certificate = None
    for j in chain.window.degrees():
        ext_rel, trunc_rel, cert_rel = _adjacent_checks(q, chain.at(j), chain.at(j + 1))
        ext_violations += [(_shift_label(a, j), _shift_label(b, j), e) for a, b, e in ext_rel]
        if trunc_rel and truncation_failure is None:
            stalk, part, hit = trunc_rel
            truncation_failure = {
                "kind": "truncation",
                "stalk": _shift_label(stalk, j),
                "part": _shift_label(part, j),
                "hit_by": _shift_label(hit, j),
            }
        if cert_rel and certificate is None:
            A, B, middle, bad = cert_rel
            certificate = {
                "kind": "extension_closure",
                "map": f"{A.label}->{B.label}",
                "triangle": [
                    stalk_label((j + 1, B)),
                    StalkSum(tuple((j + d, M) for d, M in middle)).render(),
                    stalk_label((j, A)),
                ],
                "outside": [_shift_label(b, j) for b in bad],
            }

    checks.append(CheckResult(
        "cross_degree_ext",
        "fail" if ext_violations else "pass",
        f"{len(ext_violations)} nonzero Ext^1(T_(j+1), F_j) pairs" if ext_violations else "",
    ))
    checks.append(CheckResult(
        "constructive_truncation",
        "fail" if truncation_failure else "pass",
        f"right part of {truncation_failure['stalk']} is not co-aisle orthogonal" if truncation_failure else "",
    ))
    checks.append(CheckResult(
        "extension_closure",
        "fail" if certificate else "pass",
        "aisle is not closed under extensions" if certificate else "",
    ))

    def hom_witness(prefer) -> dict:
        pool = [v for v in ext_violations if v[1] in prefer] or ext_violations
        src, tgt, e = pool[0]
        return {"kind": "hom_nonvanishing", "source": src, "target": tgt, "dim": e}

    if certificate:
        if ext_violations:
            witnesses.append(hom_witness(set(certificate["outside"])))
        witnesses.append(certificate)
        verdict = Verdict.REJECTED
    elif ext_violations or truncation_failure:
        if ext_violations:
            witnesses.append(hom_witness(set()))
        if truncation_failure:
            witnesses.append(truncation_failure)
        verdict = Verdict.NOT_VERIFIED
    else:
        verdict = Verdict.ACCEPTED
    return ValidationReport(verdict, tuple(checks), tuple(witnesses))


def present(chain: TorsionChain) -> TStructurePresentation:
    return TStructurePresentation(chain, validate_chain(chain))


# ----------------------------------------------------------------- membership


def aisle_member(ts: TStructurePresentation, X: StalkSum) -> bool:
    ts.require_accepted()
    return all(M in ts.chain.at(j) for j, M in X)


@functools.lru_cache(maxsize=None)
def _coaisle_generators(chain: TorsionChain, j: int) -> frozenset:
    return frozenset(N for N in enumerate_indecomposables(chain.quiver) if _stalk_orthogonal(chain, j, N) is None)


def coaisle_generators(ts: TStructurePresentation, j: int) -> frozenset:
    """Indecomposables ``N`` with ``(j, N)`` right-orthogonal to every aisle generator."""
    return _coaisle_generators(ts.chain, j)


def coaisle_member(ts: TStructurePresentation, X: StalkSum) -> bool:
    """Co-aisle membership by Hom-orthogonality against the aisle generators."""
    ts.require_accepted()
    return all(N in _coaisle_generators(ts.chain, j) for j, N in X)


def truncate(ts: TStructurePresentation, X: StalkSum) -> tuple[StalkSum, StalkSum]:
    """The truncation triangle ``A -> X -> B``, computed term by term."""
    ts.require_accepted()
    low, high = [], []
    for j, M in X:
        sub, quot = torsion_split(ts.chain.at(j), M)
        low += [(j, I) for I, m in sub.items() for _ in range(m)]
        high += [(j, I) for I, m in quot.items() for _ in range(m)]
    return StalkSum(tuple(low)), StalkSum(tuple(high))


def canonical_coaisle_audit(ts: TStructurePresentation) -> list[tuple[str, str]]:
    """Nonzero Homs from aisle generators to the termwise co-aisle ``(j, T_j^perp)``.

    Empty for every accepted chain; this re-derives Hom-vanishing between the
    two halves of the presentation without using the orthogonality route.
    """
    chain = ts.chain
    q = chain.quiver
    bad = []
    lo, hi = chain.window.lo, chain.window.hi
    for j in range(lo - 1, hi + 2):
        Fj = _perp(q, chain.at(j))
        for i in (j, j + 1):
            for A in sort_inds(chain.at(i)):
                for B in sort_inds(Fj):
                    if stalk_hom_dim(q, (i, A), (j, B)):
                        bad.append((stalk_label((i, A)), stalk_label((j, B))))
    return bad


# -------------------------------------------------------------- correspondence


@dataclass(frozen=True)
class WindowData:
    """Generators of a t-structure on the window category, one set per degree."""

    quiver: Quiver
    window: Window
    aisle: tuple
    coaisle: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "aisle", tuple(frozenset(a) for a in self.aisle))
        if self.coaisle is not None:
            object.__setattr__(self, "coaisle", tuple(frozenset(c) for c in self.coaisle))

    def render(self) -> dict:
        out = {"window": [self.window.lo, self.window.hi]}
        out["aisle"] = {str(j): labels(a) for j, a in zip(self.window.degrees(), self.aisle)}
        if self.coaisle is not None:
            out["coaisle"] = {str(j): labels(c) for j, c in zip(self.window.degrees(), self.coaisle)}
        return out


def restrict_correspondence(ts: TStructurePresentation, outer_lo_shift: int, outer_hi_shift: int) -> WindowData:
    """Intersect the aisle and co-aisle with ``H = D^{>=lo_shift+1} & D^{<=hi_shift}``.

    Requires ``D^{<=lo_shift} <= aisle <= D^{<=hi_shift}``.
    """
    ts.require_accepted()
    if outer_lo_shift >= outer_hi_shift:
        raise PreconditionError("the outer shifts must satisfy lo_shift < hi_shift")
    chain = ts.chain
    everything = chain.everything
    for j in range(chain.window.lo, outer_lo_shift + 1):
        missing = everything - chain.at(j)
        if missing:
            w = stalk_label((j, sort_inds(missing)[0]))
            raise ContainmentError(f"D^<={outer_lo_shift} is not inside the aisle: {w} is missing", w)
    for j in range(outer_hi_shift + 1, chain.window.hi + 1):
        if chain.at(j):
            w = stalk_label((j, sort_inds(chain.at(j))[0]))
            raise ContainmentError(f"the aisle is not inside D^<={outer_hi_shift}: it contains {w}", w)
    window = Window(outer_lo_shift + 1, outer_hi_shift)
    return WindowData(
        chain.quiver,
        window,
        tuple(chain.at(j) for j in window.degrees()),
        tuple(coaisle_generators(ts, j) for j in window.degrees()),
    )


def extend_correspondence(data: WindowData) -> TStructurePresentation:
    """Glue window data to ``D^{<=lo-1}`` and ``D^{>=hi+1}`` and validate."""
    chain = TorsionChain(data.quiver, data.window, data.aisle)
    report = validate_chain(chain)
    if data.coaisle is not None and report.verdict is not Verdict.REJECTED:
        for j, given in zip(data.window.degrees(), data.coaisle):
            expected = _coaisle_generators(chain, j)
            if given != expected:
                diff = sort_inds(given ^ expected)[0]
                check = CheckResult("coaisle_matches", "fail", f"co-aisle data differs at degree {j}")
                witness = {"kind": "coaisle_mismatch", "stalk": stalk_label((j, diff)),
                           "given": diff in given}
                report = ValidationReport(Verdict.REJECTED, report.checks + (check,), report.witnesses + (witness,))
                break
        else:
            report = ValidationReport(report.verdict, report.checks + (CheckResult("coaisle_matches", "pass"),),
                                      report.witnesses)
    return TStructurePresentation(chain, report)


def hrs_tilt(tp: TorsionPair, at_degree: int) -> TStructurePresentation:
    """The width-one chain ``T_{at_degree} = tp.tset``."""
    return present(TorsionChain(tp.quiver, Window(at_degree, at_degree), (tp.tset,)))


def decreasing_chains(q: Quiver, window: Window) -> Iterator[TorsionChain]:
    classes = [tp.tset for tp in enumerate_torsion_pairs(q)]

    def grow(prefix):
        if len(prefix) == window.width:
            yield TorsionChain(q, window, tuple(prefix))
            return
        for c in classes:
            if not prefix or c <= prefix[-1]:
                yield from grow(prefix + [c])

    yield from grow([])


def enumerate_chain_tstructures(q: Quiver, window: Window) -> list[TStructurePresentation]:
    """All accepted decreasing chains of torsion classes on ``window``."""
    if window.width > MAX_CHAIN_WIDTH or q.n > MAX_CHAIN_VERTICES:
        raise SizeGuardExceeded(
            f"chain enumeration is limited to width <= {MAX_CHAIN_WIDTH} and n <= {MAX_CHAIN_VERTICES}"
        )
    out = []
    for chain in decreasing_chains(q, window):
        ts = present(chain)
        if ts.accepted:
            out.append(ts)
    return out


# ----------------------------------------------------------- nested truncations


class _Truncation:
    """Truncation functor pair of a standard shift or an accepted presentation."""

    def __init__(self, t):
        if isinstance(t, TStructurePresentation):
            t.require_accepted()
            self.ts, self.shift = t, None
        else:
            self.ts, self.shift = None, int(t)

    def split(self, X: StalkSum) -> tuple[StalkSum, StalkSum]:
        if self.ts is None:
            from tstrx.derived_window import standard_truncate

            return standard_truncate(X, self.shift)
        return truncate(self.ts, X)

    def low(self, X):
        return self.split(X)[0]

    def high(self, X):
        return self.split(X)[1]

    def in_aisle(self, stalk: Stalk) -> bool:
        if self.ts is None:
            return stalk[0] <= self.shift
        return stalk[1] in self.ts.chain.at(stalk[0])

    def degree_span(self) -> tuple[int, int]:
        if self.ts is None:
            return self.shift, self.shift
        return self.ts.window.lo - 1, self.ts.window.hi


def lemma33_audit(first, second, X: StalkSum) -> dict:
    """Compare both sides of the four nested-truncation identities on ``X``.

    ``first`` and ``second`` are standard shifts (ints, meaning
    ``D^{<=0} = D_std^{<=s}``) or accepted presentations, with the first aisle
    inside the second.
    """
    t1, t2 = _Truncation(first), _Truncation(second)
    q = X.quiver
    if q is not None:
        spans = t1.degree_span() + t2.degree_span() + tuple(X.degrees())
        for j in range(min(spans) - 1, max(spans) + 2):
            for M in enumerate_indecomposables(q):
                if t1.in_aisle((j, M)) and not t2.in_aisle((j, M)):
                    raise PreconditionError(
                        f"first aisle is not inside the second: {stalk_label((j, M))}"
                    )
    zero = StalkSum()
    X1l, X1h = t1.split(X)
    X2l, X2h = t2.split(X)
    sides = {
        "1": [t1.high(X2l), t2.low(X1h)],
        "2": [t2.high(X1l), t1.low(X2h), zero],
        "3": [t2.low(X1l), X1l, t1.low(X2l)],
        "4": [t2.high(X1h), X2h, t1.high(X2h)],
    }
    holds = {k: all(s == v[0] for s in v) for k, v in sides.items()}
    return {
        "object": X.render(),
        "holds": holds,
        "sides": {k: [s.render() for s in v] for k, v in sides.items()},
        "counterexample": not all(holds.values()),
    }


def chain_from_sets(q: Quiver, lo: int, sets: Sequence[Iterable[Ind]]) -> TorsionChain:
    return TorsionChain(q, Window(lo, lo + len(sets) - 1), tuple(frozenset(s) for s in sets))
