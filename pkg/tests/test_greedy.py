import math
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from greedylab.greedy import (TruncationWarning, a_p, beta, eta_p, gamma, greedy_sets,
                              greedy_split, quasi_greedy_estimate, truncate)
from greedylab.harness import random_sample
from greedylab.spaces import DifferenceL1, Lp, SparseVector, SummingC0, project


def test_greedy_sets_enumerate_ties():
    fam = greedy_sets(SparseVector.from_dense([1, 1, 1]), 2)
    assert sorted(fam.sets) == [(1, 2), (1, 3), (2, 3)]
    assert not fam.truncated


def test_greedy_split_forced_and_tied():
    sp = greedy_split(SparseVector.from_dense([3, 1, 1, 2]), 3)
    assert set(sp.forced) == {1, 4}
    assert set(sp.tied) == {2, 3} and sp.r == 1


def test_tie_cap_warns_and_flags():
    x = SparseVector.from_dense([1.0] * 16)
    fam = greedy_sets(x, 8, cap=100)
    assert fam.truncated and len(fam.sets) == 100
    with pytest.warns(TruncationWarning):
        gamma(SummingC0(), x, 8, cap=100)


def test_gamma_values():
    assert gamma(SummingC0(), SparseVector.from_dense([1, 1]), 1) == pytest.approx(1.0)
    assert gamma(Lp(2), SparseVector.from_dense([3, 2, 1]), 1) == pytest.approx(math.sqrt(5))


def test_gamma_brute_force_oracle(space):
    # gamma_m = sup over greedy sets of ||x - P_A x||, enumerated directly
    for x in random_sample(3, 30, 6, 10):
        for m in range(len(x) + 1):
            best = max(space.norm(x - project(x, A)) for A in greedy_sets(x, m).sets)
            assert gamma(space, x, m) == pytest.approx(best, abs=1e-12)


def test_beta_is_tail_norm():
    x = SparseVector.from_dense([1, 1, 1])
    # the tail starting at index 2 also pays its left edge
    assert beta(DifferenceL1(), x, 1) == pytest.approx(2.0)
    assert beta(DifferenceL1(), SparseVector.from_dense([1, 2, 1]), 1) == pytest.approx(4.0)
    assert beta(SummingC0(), x, 3) == 0.0


def test_truncation_operators():
    x = SparseVector.from_dense([-2, 3, 1])
    U = truncate(x, [1, 2], "U").vector
    T = truncate(x, [1, 2], "T").vector
    assert dict(U.items()) == {1: -2.0, 2: 2.0}
    assert dict(T.items()) == {1: -2.0, 2: 2.0, 3: 1.0}
    assert truncate(x, [], "U").vector.support == ()
    assert truncate(x, [5], "U").flagged


def test_a_p_and_eta():
    assert a_p(1.0) == pytest.approx(1.0)
    assert a_p(0.5) == pytest.approx(1 / (math.sqrt(2) - 1) ** 2)
    v, t = eta_p(1.0, 1.0, return_argmin=True)
    assert v == pytest.approx(3 + 2 * math.sqrt(2), abs=1e-9)
    assert t == pytest.approx(math.sqrt(2) - 1, abs=1e-6)
    with pytest.raises(ValueError):
        eta_p(1.0, 1.5)


def test_eta_increases_in_u():
    vals = [eta_p(u, 0.7) for u in (0.5, 1, 2, 4)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_quasi_greedy_estimate_alternating():
    x = SparseVector.from_dense([(-1) ** n for n in range(8)])
    assert quasi_greedy_estimate(SummingC0(), [x]) == pytest.approx(4.0)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-4, 4, allow_nan=False).filter(lambda v: v != 0), min_size=1, max_size=7))
def test_greedy_sets_are_greedy(vals):
    x = SparseVector.from_dense(vals)
    for m in range(len(x) + 1):
        for A in greedy_sets(x, m).sets:
            assert len(A) == m
            rest = set(x.support) - set(A)
            if A and rest:
                assert min(abs(x[n]) for n in A) >= max(abs(x[n]) for n in rest)
