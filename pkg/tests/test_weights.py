import math

import numpy as np
import pytest

from greedylab.weights import (auxi_constant, check_doubling, dilation_bounds, dilation_indices,
                               equiv_ratio, make_weight, regularity_check, summing_weight,
                               validate_weight)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0])
def test_power_weight_indices(alpha):
    rep = dilation_indices(make_weight(f"power:{alpha}"), 2**8, 2**10)
    assert rep.i_hat == pytest.approx(alpha) and rep.I_hat == pytest.approx(alpha)


def test_sqrt_log_indices():
    rep = dilation_indices(make_weight("sqrt*log"), 2**10, 2**12)
    assert 0.4 <= rep.i_hat <= 0.6
    # the upper estimate decreases towards 1/2 only at a logarithmic rate
    upper = [hi for _, _, hi in rep.profile]
    assert all(b <= a + 1e-12 for a, b in zip(upper, upper[1:]))
    assert rep.I_hat > 0.5 and rep.I_inf == pytest.approx(rep.I_hat)


def test_dilation_bounds_of_sqrt():
    d = dilation_bounds(make_weight("sqrt"), 4, 100)
    assert d.phi_hat == pytest.approx(2.0) and d.Phi_hat == pytest.approx(2.0)


def test_summing_weight_harmonic():
    assert summing_weight(make_weight("power:0"), 31) == pytest.approx(
        sum(1 / n for n in range(1, 32)))
    assert summing_weight(make_weight("power:1"), 10) == pytest.approx(10.0)


def test_doubling_and_validation():
    assert check_doubling(make_weight("sqrt"), 100) == pytest.approx(math.sqrt(2))
    assert check_doubling(make_weight("geometric:2"), 10) > 1e3
    assert validate_weight(make_weight("log"), 100)
    assert not validate_weight(make_weight("table:1,3,2"), 3)


def test_table_weight_domain():
    w = make_weight("table:1,2,4")
    assert w(np.array([1, 3])).tolist() == [1.0, 4.0]
    with pytest.raises(ValueError):
        w(np.array([4]))


def test_regularity():
    assert regularity_check(make_weight("power:1"), 1.0, "LRP").holds
    assert regularity_check(make_weight("power:0.3"), 0.5, "URP").holds
    rep = regularity_check(make_weight("sqrtlog:-1"), 0.5, "LRP")
    assert not rep.holds
    with pytest.raises(ValueError):
        regularity_check(make_weight("sqrt"), 1.0, "URP")


def test_auxi_and_equivalence():
    assert auxi_constant(make_weight("sqrt"), 0.5, 16, 16) == pytest.approx(1.0)
    assert equiv_ratio(make_weight("sqrt"), 2000) < 2.0
    assert equiv_ratio(make_weight("log"), 4000) > equiv_ratio(make_weight("log"), 100)


def test_unknown_preset():
    with pytest.raises(ValueError):
        make_weight("cubic")
