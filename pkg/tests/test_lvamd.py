import itertools
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from leakyamd.amd import REJECT, amd_encode
from leakyamd.bounds import strong_rho_bound_check
from leakyamd.lvamd import (LvStrongInstance, LvWeakInstance, lv_strong_decode, lv_strong_encode,
                            lv_weak_decode, lv_weak_encode, lv_weak_matrix)
from leakyamd.wiretap2 import wt2_encode


@pytest.fixture(scope="module")
def strong():
    return LvStrongInstance.build(5, 1, 4)


@pytest.fixture(scope="module")
def weak():
    return LvWeakInstance.build(11, 2)


def test_strong_parameters(strong):
    assert (strong.n_inner, strong.rho, strong.read_budget, strong.delta) == (3, Fraction(1, 4), 1,
                                                                              Fraction(2, 5))


def test_strong_encode_examples(strong):
    assert not lv_strong_encode([0], 0, [0], strong).any()
    inner = amd_encode([2], 1, strong.amd)
    assert inner.tolist() == [2, 1, 3]
    assert lv_strong_encode([2], 1, [1], strong).tolist() == wt2_encode(inner, [1], strong.wt2).tolist()
    with pytest.raises(ValueError):
        lv_strong_encode([2], 1, [1, 1], strong)


def test_strong_roundtrip_exhaustive(strong):
    for m, i, j in itertools.product(range(5), range(5), range(5)):
        assert lv_strong_decode(lv_strong_encode([m], i, [j], strong), strong).tolist() == [m]


def test_strong_offsets(strong):
    x = lv_strong_encode([2], 1, [1], strong)
    breaks_tag = wt2_encode([0, 0, 1], [0], strong.wt2)
    assert lv_strong_decode(x + breaks_tag, strong) is REJECT
    invisible = wt2_encode([0, 0, 0], [3], strong.wt2)
    assert lv_strong_decode(x + invisible, strong).tolist() == [2]


def test_codeword_array_matches_scalar_encoder(strong):
    words = strong.codeword_array([3])
    scalar = [lv_strong_encode([3], i, list(j), strong) for i, j in strong.randomness()]
    assert words.tolist() == [w.tolist() for w in scalar]


def test_amd_randomness_independent_of_small_views(strong):
    n_free = strong.n - strong.n_inner
    for m in range(5):
        for size in range(n_free + 1):
            for s in itertools.combinations(range(strong.n), size):
                joint = Counter()
                for i, j in strong.randomness():
                    x = lv_strong_encode([m], i, list(j), strong)
                    joint[(i, tuple(int(x[p]) for p in s))] += 1
                # product of uniform marginals: every (i, view) pair equally likely
                assert len(joint) == 5 * 5 ** size
                assert len(set(joint.values())) == 1


def test_rate_bound_holds_for_strong_family():
    for q, k, n in [(5, 1, 4), (7, 1, 4), (7, 2, 6), (11, 1, 5)]:
        inst = LvStrongInstance.build(q, k, n)
        assert strong_rho_bound_check(n, k, inst.rho, inst.delta, q).satisfied


def test_weak_matrix_examples():
    assert lv_weak_matrix(1, 7, Fraction(3, 2)).tolist() == [[1]]
    assert lv_weak_matrix(1, 101, 1).tolist() == [[1]]
    assert lv_weak_matrix(2, 11, Fraction(3, 2)).tolist() == [[1, 2], [2, 3]]
    with pytest.raises(ValueError):
        lv_weak_matrix(2, 7, 0.5)


@pytest.mark.parametrize("k,q", [(2, 13), (3, 13), (3, 17), (4, 23)])
def test_weak_matrix_conditions(k, q):
    from math import gcd

    g = lv_weak_matrix(k, q, Fraction(3, 2))
    det = round(np.linalg.det(g.astype(float)))
    assert gcd(det % (q - 1), q - 1) == 1
    assert all(len(set(col)) == k for col in g.T.tolist())
    assert g.max() <= 1.5 * k


def test_weak_encode_examples(weak):
    assert weak.G.tolist() == [[1, 2], [2, 3]]
    assert lv_weak_encode([2, 3], weak).tolist() == [2, 3, 5]
    assert lv_weak_encode([1, 1], weak).tolist() == [1, 1, 2]
    with pytest.raises(ValueError):
        lv_weak_encode([0, 3], weak)


def test_weak_decode_examples(weak):
    assert lv_weak_decode([2, 3, 5], weak).tolist() == [2, 3]
    assert lv_weak_decode([2, 3, 6], weak) is REJECT
    assert all(lv_weak_decode([0, 3, t], weak) is REJECT for t in range(11))


def test_weak_tag_two_routes_agree(weak):
    for m in weak.messages():
        direct = sum(int(np.prod([pow(int(m[i]), int(weak.G[i, j]), 11) for i in range(2)]))
                     for j in range(2)) % 11
        assert int(weak.tag(m)) == direct == weak.tag_by_logs(m)


def test_weak_leakage_condition(weak):
    assert weak.leakage_condition(Fraction(1, 3))
    assert not weak.leakage_condition(Fraction(1, 2))
    assert weak.delta == Fraction(3, 10)
