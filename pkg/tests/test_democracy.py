import pytest

from greedylab.democracy import (characteristic_psi, check_property_W, extremal_indicator, h_l,
                                 h_r, h_restricted, superconservative_ratio,
                                 superdemocracy_ratio)
from greedylab.spaces import DifferenceL1, Lp, MixNorm, SchreierMod, SummingC0, indicator


@pytest.mark.parametrize("mode", ["max", "min"])
@pytest.mark.parametrize("signs", ["all", "plus"])
def test_structured_matches_brute_force(space, mode, signs):
    for size in range(1, 5):
        for lo, hi in [(1, 9), (3, 10), (5, 12)]:
            fast, wit = extremal_indicator(space, size, lo, hi, mode, signs=signs)
            slow, _ = extremal_indicator(space, size, lo, hi, mode, method="brute", signs=signs)
            assert fast == pytest.approx(slow, abs=1e-12)
            assert space.norm(indicator(wit)) == pytest.approx(fast, abs=1e-12)
            assert len(wit) == size and lo <= min(wit.indices) and max(wit.indices) <= hi


def test_summing_basis_values():
    assert h_r(SummingC0(), 3, 12).value == 3.0
    rep = h_l(SummingC0(), 3, 12)
    assert rep.value == 1.0
    assert set(rep.witness.signs) == {1, -1}


def test_difference_and_schreier_values():
    assert h_r(DifferenceL1(), 2, 10).value == 4.0
    rep = h_r(SchreierMod(), 4, 19)
    assert rep.value == 4.0 and rep.witness.indices == (16, 17, 18, 19)


def test_difference_restricted_left_depends_on_signs():
    sp = DifferenceL1()
    assert h_restricted(sp, 3, 4, "left", signs="plus").value == 3.0
    assert h_restricted(sp, 3, 4, "left").value == 6.0
    assert h_restricted(sp, 3, 4, "right").value == 2.0


def test_characteristic_psi():
    assert characteristic_psi(SummingC0(), 3, 20) == 3
    assert characteristic_psi(Lp(2), 5, 20) == 5
    assert characteristic_psi(DifferenceL1(), 3, 20, signs="plus") == 4
    assert characteristic_psi(DifferenceL1(), 3, 20) == 3


def test_ratios():
    assert superconservative_ratio(SummingC0(), 5, 20) == pytest.approx(5.0)
    assert superdemocracy_ratio(Lp(2), 5, 12) == pytest.approx(1.0)


def test_property_W_holds_everywhere():
    for sp in (SummingC0(), DifferenceL1(), SchreierMod(), MixNorm()):
        rep = check_property_W(sp, 3, 6, 24)
        assert rep.holds and rep.constant == pytest.approx(1.0)


def test_bad_arguments():
    with pytest.raises(ValueError):
        h_restricted(SummingC0(), 5, 3, "left")
    with pytest.raises(ValueError):
        h_restricted(SummingC0(), 2, 3, "middle")
