from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_ext_dim
from strategies import stalk_sums
from tstrx.derived_window import (
    StalkSum,
    cohomology,
    degree_slices,
    object_hom_dim,
    stalk_hom_dim,
    standard_truncate,
    union,
)
from tstrx.quiver_rep import enumerate_indecomposables, hom_dim, parse_quiver

A2 = parse_quiver("A2:R")
A3 = parse_quiver("A3:RL")


def test_stalk_hom(a2):
    q, S1, P1, S2 = a2
    assert stalk_hom_dim(q, (2, S1), (1, S2)) == brute_ext_dim(S1.rep, S2.rep) == 1
    assert stalk_hom_dim(q, (0, P1), (2, P1)) == 0
    assert stalk_hom_dim(q, (1, S1), (2, S1)) == 0
    for M in enumerate_indecomposables(q):
        for N in enumerate_indecomposables(q):
            assert stalk_hom_dim(q, (1, M), (1, N)) == hom_dim(M, N)


def test_object_hom(a2):
    q, S1, P1, S2 = a2
    X = StalkSum.of((2, S1))
    Y = StalkSum.of((1, S2), (1, S1))
    assert object_hom_dim(X, Y) == 1
    assert object_hom_dim(StalkSum(), Y) == 0


def test_cohomology(a2):
    q, S1, P1, S2 = a2
    X = StalkSum.of((1, P1))
    assert cohomology(X, 1) == [P1] and cohomology(X, 0) == []
    assert cohomology(StalkSum(), 3) == []


def test_standard_truncate(a2):
    q, S1, P1, S2 = a2
    X = StalkSum.of((0, S1), (2, S2))
    assert standard_truncate(X, 1) == (StalkSum.of((0, S1)), StalkSum.of((2, S2)))
    assert standard_truncate(X, 5) == (X, StalkSum())


def test_render_and_equality(a2):
    q, S1, P1, S2 = a2
    X = StalkSum.of((2, S2), (1, P1))
    assert X == StalkSum.of((1, P1), (2, S2))
    assert X.render() == "1:1,1+2:0,1"
    assert StalkSum().render() == "0"
    assert X.shift(3).degrees() == [4, 5]


@settings(max_examples=60, deadline=None)
@given(stalk_sums(A3), stalk_sums(A3), st.integers(-3, 3))
def test_hom_shift_invariant_and_biadditive(X, Y, s):
    assert object_hom_dim(X.shift(s), Y.shift(s)) == object_hom_dim(X, Y)
    Z = X + Y
    assert object_hom_dim(Z, X) == object_hom_dim(X, X) + object_hom_dim(Y, X)
    assert object_hom_dim(X, X) >= len(X)


@settings(max_examples=60, deadline=None)
@given(stalk_sums(A2), st.integers(-3, 5))
def test_truncate_partition_idempotent(X, m):
    low, high = standard_truncate(X, m)
    assert low + high == X
    assert standard_truncate(low, m) == (low, StalkSum())
    assert standard_truncate(high, m) == (StalkSum(), high)


@settings(max_examples=60, deadline=None)
@given(stalk_sums(A3, lo=0, hi=3))
def test_degree_slices_reassemble(X):
    slices = degree_slices(X, 0, 3)
    assert union(slices) == X
    for j, piece in zip(range(0, 4), slices):
        assert all(d == j for d, _ in piece)
