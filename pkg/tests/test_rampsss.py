import itertools
from fractions import Fraction
from math import log2

import numpy as np
import pytest
from hypothesis import given, strategies as st

from leakyamd.adversary import ramp_leakage, ramp_privacy_check
from leakyamd.amd import REJECT
from leakyamd.lvamd import lv_strong_encode
from leakyamd.rampsss import (RampScheme, RobustRampScheme, ShareVector, ramp_recover, ramp_share,
                              rr_recover, rr_share)


def interpolate_at(points, x, q):
    """Value at ``x`` of the polynomial through ``points`` (plain Lagrange)."""
    total = 0
    for a, (xa, ya) in enumerate(points):
        num = den = 1
        for b, (xb, _) in enumerate(points):
            if a != b:
                num = num * (x - xb) % q
                den = den * (xa - xb) % q
        total += ya * num * pow(den, -1, q)
    return total % q


@pytest.fixture(scope="module")
def small():
    return RampScheme(11, 1, 3, 4)


def test_share_examples(small):
    assert ramp_share([0, 0], [0], small).values == (0, 0, 0, 0)
    want = [interpolate_at([(5, 1), (6, 2), (1, 5)], x, 11) for x in range(1, 5)]
    assert list(ramp_share([1, 2], [5], small).values) == want
    assert want[0] == 5
    with pytest.raises(ValueError):
        ramp_share([1, 2], [5, 5], small)


def test_recover_every_subset(small):
    for s in itertools.product(range(11), repeat=2):
        shares = ramp_share(s, [7], small)
        for sub in itertools.combinations(range(1, 5), 3):
            assert tuple(ramp_recover(shares, sub, small)) == s
    assert ramp_recover(ramp_share([1, 2], [3], small).with_absent(2), [1, 2, 3], small) is REJECT
    assert ramp_recover(ShareVector([0] * 4, 11), [1, 2, 4], small).tolist() == [0, 0]
    with pytest.raises(ValueError):
        ramp_recover(ShareVector([0] * 4, 11), [1, 2], small)


def _shares(draw_vals):
    return ShareVector(draw_vals, 11)


@given(st.lists(st.integers(0, 10), min_size=4, max_size=4),
       st.lists(st.integers(0, 10), min_size=4, max_size=4),
       st.sampled_from(list(itertools.combinations(range(1, 5), 3))))
def test_recover_is_linear(a, b, sub):
    scheme = RampScheme(11, 1, 3, 4)
    lhs = ramp_recover(_shares(a) + _shares(b), sub, scheme)
    rhs = (ramp_recover(_shares(a), sub, scheme) + ramp_recover(_shares(b), sub, scheme)) % 11
    assert (lhs == rhs).all()


@given(st.lists(st.integers(0, 10), min_size=4, max_size=4), st.integers(1, 4))
def test_absent_absorbs(a, slot):
    scheme = RampScheme(11, 1, 3, 4)
    bad = _shares(a) + ShareVector([0] * 4, 11).with_absent(slot)
    assert bad[slot] is None
    sub = sorted({slot, *[i for i in range(1, 5) if i != slot][:2]})
    assert ramp_recover(bad, sub, scheme) is REJECT


def test_perfect_t_privacy(small):
    assert ramp_privacy_check(small, 1) == 0
    assert ramp_privacy_check(small, 2) > 0


def test_ramp_leakage_meets_bound(small):
    secret_bits = 2 * log2(11)
    for a in range(small.t, small.r + 1):
        alpha = Fraction(a - small.t, small.r - small.t)
        for sub in itertools.combinations(range(1, 5), a):
            h_cond, h = ramp_leakage(small, sub)
            assert h == pytest.approx(secret_bits)
            assert h_cond >= h - float(alpha) * secret_bits - 1e-9


def test_share_file_roundtrip(small):
    shares = ramp_share([1, 2], [5], small).with_absent(3)
    text = shares.to_lines()
    assert "3:ABSENT" in text
    assert ShareVector.from_lines(text, 11, 4) == shares
    for bad in ["1:2\n1:3\n", "x:1\n", "1-2\n", "9:1\n"]:
        with pytest.raises(ValueError):
            ShareVector.from_lines(bad, 11, 4)


@pytest.fixture(scope="module")
def robust():
    return RobustRampScheme.build(11, 1, 5, 6, 1)


def test_robust_examples(robust):
    assert robust.corruption_budget == 2
    assert rr_share([0], 0, [0], [0], robust).values == (0,) * 6
    shares = rr_share([4], 2, [7], [3], robust)
    cw = lv_strong_encode([4], 2, [7], robust.code)
    assert list(ramp_recover(shares, range(1, 6), robust.ramp)) == cw.tolist()
    with pytest.raises(ValueError):
        RobustRampScheme.build(11, 1, 5, 6, 2)


def test_custom_points(small):
    alt = RampScheme(11, 1, 3, 4, (5, 6), (0,))
    shares = ramp_share([1, 2], [9], alt)
    assert shares[1] == interpolate_at([(5, 1), (6, 2), (0, 9)], 1, 11)
    assert tuple(ramp_recover(shares, [2, 3, 4], alt)) == (1, 2)
    with pytest.raises(ValueError):
        RampScheme(11, 1, 3, 4, (4, 6), (0,))
    with pytest.raises(ValueError):
        RampScheme(11, 1, 3, 4, (5, 6), (5,))


def test_leaked_functionals_describe_the_view(small):
    # the view of shares 1, 2 is uniform on a coset; two secrets give the same
    # coset exactly when the leaked functional agrees on them
    a = small.leaked_functionals([1, 2])
    assert a.shape == (1, 2)
    rands = np.arange(11)[:, None]
    view = lambda s: {tuple(v) for v in small.share_many(np.array(s)[None, :], rands)[:, :2]}
    for s1, s2 in [((1, 2), (3, 4)), ((0, 0), (5, 7))]:
        same = (a @ np.subtract(s1, s2)) % 11 == 0
        assert same.all() == (view(s1) == view(s2))


def test_robust_placements(robust):
    assert robust.views_masked
    assert (robust.ramp.secret_points, robust.ramp.random_points) == ((7, 9, 10, 0), (8,))
    plain = RobustRampScheme.build(11, 1, 5, 6, 1, placement="default")
    assert not plain.views_masked
    assert plain.ramp.random_points == (1,)


def test_robust_honest_roundtrip_sampled(robust):
    rng = np.random.default_rng(5)
    for _ in range(40):
        s, i, j, rand = rng.integers(11), rng.integers(11), rng.integers(11), rng.integers(11)
        shares = rr_share([s], i, [j], [rand], robust)
        for sub in itertools.combinations(range(1, 7), 5):
            assert rr_recover(shares, sub, robust).tolist() == [s]
        assert rr_recover(shares.with_absent(2), [1, 2, 3, 4, 5], robust) is REJECT
