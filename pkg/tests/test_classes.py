import math

import pytest

from greedylab.classes import (ClassNormParams, casec_construction, chain_check, class_norm,
                               error_profile, imp1_experiment, kppg_experiment, precursor_ratio,
                               remark_ratio)
from greedylab.harness import random_sample
from greedylab.spaces import Lp, MixNorm, SignedSet, SparseVector, SummingC0
from greedylab.weights import make_weight

SQRT = make_weight("sqrt")


@pytest.mark.parametrize("kind", ["A", "G", "CG", "PG"])
def test_basis_vector_class_norms(space, kind):
    x = SparseVector.basis(1)
    # every error of e_1 vanishes from n = 1 on
    assert class_norm(space, x, ClassNormParams(SQRT, 2.0, kind)) == pytest.approx(space.norm(x))


def test_chain_on_samples(space):
    assert chain_check(space, random_sample(9, 40, 6, 12), SQRT, 2.0, window=4)


def test_hilbert_G_equals_CG():
    for x in random_sample(4, 30, 6, 12):
        p = error_profile(Lp(2), x)
        assert p.gamma == pytest.approx(p.theta, abs=1e-9)


def test_error_profile_shapes():
    x = SparseVector([(2, 1.0), (5, -1.0)])
    p = error_profile(SummingC0(), x)
    assert p.sigma.size == 3 and p.beta.size == 6 and p.beta[5] == 0.0


def test_remark_rows_obey_bound():
    rows = remark_ratio(SummingC0(), SQRT, 2.0, range(1, 51))
    assert all(r.ratio <= r.bound + 1e-12 for r in rows)
    assert rows[30].bound == pytest.approx(1 / math.sqrt(sum(1 / n for n in range(1, 32))))


def test_imp1_first_rows():
    rows = imp1_experiment(SummingC0(), SQRT, math.inf, j_max=3)
    assert [r.ratio for r in rows] == sorted(r.ratio for r in rows)
    assert not any(r.flags for r in rows)


def test_kppg_rows_have_no_tail():
    rows = kppg_experiment(MixNorm(), SQRT, math.inf, j_max=2)
    assert all("tail_nonzero" not in r.flags for r in rows)


def test_precursor_increases():
    r = [precursor_ratio(MixNorm(), N) for N in (4, 8, 16, 32, 64)]
    assert all(b > a for a, b in zip(r, r[1:]))


def test_casec_on_hilbert_space():
    rep = casec_construction(Lp(2), SignedSet(range(1, 5)), range(5, 9), 2)
    assert rep["partition_sizes"] == [2, 2]
    assert rep["norm_x"] == pytest.approx(math.sqrt(18))
    assert not rep["premise"] and rep["chain_holds"]


def test_casec_premise_satisfied_chain():
    # M_s small in norm, D a long block: the premise holds and the chain must too
    sp = SummingC0()
    rep = casec_construction(sp, SignedSet([1, 2], [1, -1]), [3, 4], 1)
    assert rep["premise"] and rep["chain_holds"]


def test_casec_errors():
    with pytest.raises(ValueError):
        casec_construction(Lp(2), SignedSet([1, 2]), [3], 1)
    with pytest.raises(ValueError):
        casec_construction(Lp(2), SignedSet([5, 6]), [1, 2], 1)


def test_invalid_params():
    with pytest.raises(ValueError):
        ClassNormParams(SQRT, 2.0, "B")
    with pytest.raises(ValueError):
        ClassNormParams(SQRT, 0.0, "A")
