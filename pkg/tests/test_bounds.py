import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from leakyamd import bounds
from leakyamd.amd import AmdParams


def test_amd_weak_bound_examples():
    assert bounds.amd_weak_bound(1, 5) == 0
    assert bounds.amd_weak_bound(7, 13) == Fraction(1, 2)
    with pytest.raises(ValueError):
        bounds.amd_weak_bound(3, 1)


def test_amd_strong_bound_examples():
    assert bounds.amd_strong_bound(1, 5) == 0
    dmin = bounds.amd_strong_bound(7, 7 ** 3)
    assert dmin == pytest.approx(math.sqrt(6 / 342))
    assert dmin == pytest.approx(0.1325, abs=1e-4)
    assert Fraction(2, 7) >= dmin
    with pytest.raises(ValueError):
        bounds.amd_strong_bound(3, 1)


def test_strong_rho_examples():
    rep = bounds.strong_rho_bound_check(4, 1, Fraction(1, 4), Fraction(2, 5), 5)
    assert rep.satisfied
    assert rep.rhs == pytest.approx(1.4307, abs=1e-4)
    rep1 = bounds.strong_rho_bound_check(4, 1, Fraction(1, 4), 1, 5)
    assert rep1.rhs == pytest.approx(3 - 1 / math.log2(5))
    with pytest.raises(ValueError):
        bounds.strong_rho_bound_check(4, 1, 0, 0, 5)


@given(st.sampled_from([5, 7, 11, 13]), st.integers(1, 3), st.integers(1, 5))
def test_zero_leakage_table_form_is_strong_amd_row(q, k, extra):
    n = k + extra
    delta = Fraction(k + 1, q)
    table = bounds.strong_rho_bound_check(n, k, 0, delta, q).details["table_form"]
    plain = bounds.strong_amd_row(q ** k, q ** n, delta)
    assert (table.lhs, table.rhs, table.satisfied) == (plain.lhs, plain.rhs, plain.satisfied)


def test_weak_rho_examples():
    rep = bounds.weak_rho_bound_check(3, 2, Fraction(1, 3), Fraction(3, 10), 11)
    assert rep.satisfied
    assert rep.details["leakage"].satisfied and rep.details["random_offset"].satisfied
    no_redundancy = bounds.weak_rho_bound_check(3, 3, 0, Fraction(99, 100), 11)
    assert not no_redundancy.details["random_offset"].satisfied
    assert bounds.weak_rho_bound_check(3, 3, 0, 1, 11).details["random_offset"].satisfied
    full = bounds.weak_rho_bound_check(3, 3, 1, Fraction(1, 2), 11)
    assert not full.details["leakage"].satisfied


def test_strong_conversion_examples():
    assert bounds.llr_strong_convert(0, 10, 3, 7) == 0
    rho = bounds.corollary_strong_rho(3, 7, Fraction(2, 7))
    assert rho < Fraction(1, 3)
    alpha, r_min = bounds.rho_strong_convert(0, 3, 7, Fraction(2, 7))
    assert alpha == 0 and r_min == pytest.approx(math.log2(7 / 2))


@given(st.floats(0, 0.99), st.integers(1, 5), st.sampled_from([5, 7, 11]),
       st.fractions(Fraction(1, 100), 1))
def test_strong_conversion_roundtrip_is_contractive(alpha, n, q, delta):
    # rho from an alpha-LLR code of randomness r_min, then back: alpha never grows
    _, r_min = bounds.rho_strong_convert(0, n, q, delta)
    r_bits = r_min + n * math.log2(q)
    rho = bounds.llr_strong_convert(alpha, r_bits, n, q)
    alpha_back, _ = bounds.rho_strong_convert(rho, n, q, delta, r_bits)
    assert alpha_back <= alpha + 1e-9


def test_weak_conversion_examples():
    assert bounds.llr_weak_convert(0, 2, 3) == 0
    assert bounds.llr_weak_convert(Fraction(3, 10), 2, 3) == Fraction(1, 5)
    assert bounds.llr_weak_convert(1, 4, 4) == 1
    assert bounds.rho_weak_convert(Fraction(1, 5), 2, 3) == Fraction(3, 10)
    assert bounds.corollary_weak_rho(3, 11, Fraction(3, 10)) < Fraction(1, 3)


def test_amd_as_llr_delta():
    assert bounds.amd_as_llr_delta(1, 7, 0) == pytest.approx(2 / 7)
    assert bounds.amd_as_llr_delta(1, 7, 0.5) == pytest.approx(2 / math.sqrt(7))


def test_llr_table_examples():
    assert bounds.llr_table_bounds(1, 0.3, 0.2) == (1, 1)
    strong, weak = bounds.llr_table_bounds(49, 0.25, 0.5)
    assert strong == pytest.approx(48 * (1 - math.exp(-1)) / 0.25 ** 4 + 1)
    assert weak >= 48 * (1 - math.exp(-1)) / 0.25 ** 2 + 1
    with pytest.raises(ValueError):
        bounds.llr_table_bounds(49, 0.25, 1)


def test_rate_and_overhead():
    assert bounds.wt2_rate_bound(0) == 1
    assert bounds.wt2_rate_bound(Fraction(1, 4)) == Fraction(3, 4)
    assert bounds.rate_check(1, 4, Fraction(1, 4)).satisfied
    assert bounds.tag_overhead(AmdParams(7, 1)) == pytest.approx(2 * math.log2(7))


def test_report_serialises_exactly():
    d = bounds.weak_amd_row(7, 13, Fraction(1, 2)).to_dict()
    assert d["lhs"] == "13/1" and d["rhs"] == 13 and d["satisfied"]
