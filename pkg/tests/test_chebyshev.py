import math
from itertools import combinations

import numpy as np
import pytest

from greedylab.chebyshev import (BudgetError, chebyshev_grid, chebyshev_project, constant_budget,
                                 sigma, sigma_profile, theta, theta_profile)
from greedylab.greedy import gamma, greedy_sets
from greedylab.harness import random_sample
from greedylab.spaces import (DifferenceL1, Lp, MixNorm, SchreierMod, SparseVector, SummingC0,
                              project)


def test_summing_chebyshev_spot_value():
    sol = chebyshev_project(SummingC0(), SparseVector.from_dense([1, 1]), [1])
    assert sol.residual == pytest.approx(0.5, abs=1e-9)
    assert sol.coefficients[1] == pytest.approx(1.5, abs=1e-7)


def test_hilbert_space_projection_is_optimal():
    sol = chebyshev_project(Lp(2), SparseVector.from_dense([3, 2, 1]), [2])
    assert sol.residual == pytest.approx(math.sqrt(10), abs=1e-7)


@pytest.mark.parametrize("space", [SummingC0(), DifferenceL1()])
def test_closed_form_matches_lp(space):
    rng = np.random.default_rng(5)
    for x in random_sample(11, 60, 6, 10):
        A = sorted(rng.choice(np.arange(1, 12), size=int(rng.integers(1, 4)), replace=False).tolist())
        lp = chebyshev_project(space, x, A, method="lp").residual
        ex = chebyshev_project(space, x, A, method="exact").residual
        assert ex == pytest.approx(lp, abs=1e-7)


def test_methods_agree_on_small_instances(space):
    x = SparseVector([(1, 1.0), (2, -0.5), (4, 2.0)])
    ref = chebyshev_grid(space, x, [2, 4]).residual
    for method in ("lp", "descent") if isinstance(space, (SummingC0, DifferenceL1, SchreierMod)) \
            else ("descent",):
        assert chebyshev_project(space, x, [2, 4], method=method).residual == \
            pytest.approx(ref, abs=2e-3)


def test_never_worse_than_projection(space):
    for x in random_sample(2, 30, 5, 8):
        A = x.support[:2]
        sol = chebyshev_project(space, x, A)
        assert sol.residual <= space.norm(x - project(x, A)) + 1e-12


def test_sigma_theta_spot_values():
    # theta takes the worst greedy set; A = {2} leaves residual 1
    assert theta(SummingC0(), SparseVector.from_dense([1, 1]), 1) == pytest.approx(1.0)
    assert theta(Lp(2), SparseVector.from_dense([3, 2, 1]), 1) == pytest.approx(math.sqrt(5))
    assert sigma(SummingC0(), SparseVector.from_dense([1, 1]), 1) == pytest.approx(0.5)
    assert sigma(Lp(2), SparseVector.from_dense([3, 2, 1]), 2) == pytest.approx(1.0)


def test_sigma_vanishes_from_support_size(space):
    x = SparseVector.from_dense([1, -2, 0, 3])
    assert sigma(space, x, 3) == 0.0
    assert sigma(space, x, 0) == pytest.approx(space.norm(x))


@pytest.mark.parametrize("space", [SummingC0(), DifferenceL1()])
def test_structured_profiles_match_enumeration(space):
    # sigma: all m-subsets of supp plus a window; theta: all greedy sets
    for x in random_sample(17, 40, 6, 10):
        s = len(x)
        sg = sigma_profile(space, x, s, window=4)
        th, _ = theta_profile(space, x, s)
        cand = list(x.support) + list(range(x.max_index() + 1, x.max_index() + 5))
        for m in range(1, s):
            best = min(chebyshev_project(space, x, A, method="lp").residual
                       for A in combinations(cand, m))
            assert sg[m] == pytest.approx(best, abs=1e-7)
            worst = max(chebyshev_project(space, x, A, method="lp").residual
                        for A in greedy_sets(x, m).sets)
            assert th[m] == pytest.approx(worst, abs=1e-7)


def test_chain_termwise(space):
    for x in random_sample(23, 25, 6, 12):
        for m in range(len(x) + 1):
            s, t, g = sigma(space, x, m, window=4), theta(space, x, m), gamma(space, x, m)
            assert s <= t + 1e-9 and t <= g + 1e-9


def test_sigma_budget_error():
    x = SparseVector.from_dense(np.arange(1, 41, dtype=float))
    with pytest.raises(BudgetError):
        sigma(MixNorm(), x, 20, window=4)


def test_constant_budget_values():
    b = constant_budget(C_q=1.0, C_sd=1.0, K_b=1.0)
    assert b.C_sg_bound == pytest.approx(4 * (3 + 2 * math.sqrt(2)), abs=1e-6)
    b = constant_budget(C_q=1.0, C_sd=1.0, K_b=1.0, C_sg=1.0)
    assert (b.C_sd_bound, b.C_q_bound) == pytest.approx((2.0, 3.0))
    with pytest.raises(ValueError):
        constant_budget(C_q=0.5, C_sd=1.0, K_b=1.0)
