import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from greedylab.spaces import (DifferenceL1, Lp, MixNorm, SchreierMod, SignedSet, SparseVector,
                              SummingC0, indicator, make_space, partial_sum, project)

vectors = st.dictionaries(st.integers(1, 12), st.floats(-5, 5, allow_nan=False), max_size=6)


def test_sparse_vector_drops_zeros_and_is_one_based():
    x = SparseVector([(1, 2.0), (3, 0.0), (4, -1.0)])
    assert x.support == (1, 4)
    assert x[3] == 0.0 and x.max_index() == 4
    with pytest.raises(ValueError):
        SparseVector([(0, 1.0)])


def test_summing_norm_is_max_partial_sum():
    assert SummingC0().norm(SparseVector.from_dense([1, -1, 1])) == 1.0
    assert SummingC0().norm(SparseVector.from_dense([1, 1, -3])) == 2.0


def test_difference_norm_values():
    sp = DifferenceL1()
    assert sp.norm(SparseVector.basis(5)) == 2.0
    # a flat block only pays for its right end
    assert sp.norm(SparseVector.from_dense([1, 1, 1])) == 1.0
    assert sp.norm(SparseVector.from_dense([1, 0, 1])) == 3.0


def test_schreier_norm_on_blocks():
    sp = SchreierMod()
    # a block starting at s can hold floor(sqrt(s)) indices
    assert sp.norm(indicator(SignedSet(range(16, 20)))) == 4.0
    assert sp.norm(indicator(SignedSet(range(1, 5)))) == 1.0
    assert sp.norm(indicator(SignedSet(range(3, 13)))) == 3.0


def test_lp_and_mixnorm_basics():
    assert Lp(2).norm(SparseVector.from_dense([3, 4])) == pytest.approx(5.0)
    assert Lp(1).norm(SparseVector.from_dense([3, -4])) == pytest.approx(7.0)
    assert MixNorm().norm(SparseVector.basis(7)) == pytest.approx(1.0)


def test_make_space_names():
    assert isinstance(make_space("summing"), SummingC0)
    assert isinstance(make_space("schreier"), SchreierMod)
    assert make_space("lp:1").p == 1.0
    with pytest.raises(ValueError):
        make_space("nope")


def test_projection_and_partial_sum():
    x = SparseVector.from_dense([1, 2, 3, 4])
    assert project(x, [2, 4]).support == (2, 4)
    assert partial_sum(x, 2).support == (1, 2)


@settings(max_examples=60, deadline=None)
@given(vectors, vectors)
def test_triangle_and_homogeneity(a, b):
    x, y = SparseVector(a.items()), SparseVector(b.items())
    for sp in (SummingC0(), DifferenceL1(), SchreierMod(), MixNorm(), Lp(2)):
        assert sp.norm(x + y) <= sp.norm(x) + sp.norm(y) + 1e-9
        assert sp.norm(-2.5 * x) == pytest.approx(2.5 * sp.norm(x), abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(vectors)
def test_batch_matches_single(a):
    x = SparseVector(a.items())
    if not len(x):
        return
    idx, vals = x.arrays()
    for sp in (SummingC0(), DifferenceL1(), SchreierMod(), MixNorm(), Lp(1.5)):
        batch = sp.norm_batch(idx, np.vstack([vals, 2 * vals]))
        assert batch[0] == pytest.approx(sp.norm(x))
        assert batch[1] == pytest.approx(2 * sp.norm(x))
        dense = np.array([x[n] for n in range(1, x.max_index() + 1)])
        assert sp.norm_dense(dense) == pytest.approx(sp.norm(x))


def test_unit_vectors_are_normalized(space):
    for n in range(1, 30):
        v = space.norm(SparseVector.basis(n))
        assert 0.5 <= v <= 2.0
        assert math.isfinite(v)
