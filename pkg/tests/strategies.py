"""Hypothesis strategies for quivers, representations and stalk sums."""
import numpy as np
from hypothesis import strategies as st

from tstrx.derived_window import StalkSum
from tstrx.quiver_rep import Quiver, Rep, enumerate_indecomposables


@st.composite
def quivers(draw, max_n=3, primes=(2, 3)):
    n = draw(st.integers(1, max_n))
    orientation = tuple(draw(st.lists(st.booleans(), min_size=n - 1, max_size=n - 1)))
    return Quiver(n, orientation, draw(st.sampled_from(primes)))


@st.composite
def reps(draw, q=None, max_dim=2):
    if q is None:
        q = draw(quivers())
    dims = draw(st.lists(st.integers(0, max_dim), min_size=q.n, max_size=q.n))
    maps = []
    for s, t in q.arrows:
        entries = draw(st.lists(st.integers(0, q.p - 1), min_size=dims[s] * dims[t], max_size=dims[s] * dims[t]))
        maps.append(np.array(entries, dtype=np.int64).reshape(dims[t], dims[s]))
    return Rep(q, dims, maps)


@st.composite
def stalk_sums(draw, q, lo=-2, hi=4, max_terms=5):
    inds = enumerate_indecomposables(q)
    terms = draw(st.lists(st.tuples(st.integers(lo, hi), st.sampled_from(inds)), max_size=max_terms))
    return StalkSum(tuple(terms))
