import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from leakyamd.adversary import wt2_secrecy_check
from leakyamd.wiretap2 import Wt2Instance, wt2_decode, wt2_encode


@pytest.fixture
def small():
    return Wt2Instance.from_matrices(5, [[1, 1]], [[1, 2]])


@pytest.fixture
def desk():
    return Wt2Instance.build(5, 4, 2)


def test_examples(small):
    assert wt2_encode([0], [0], small).tolist() == [0, 0]
    assert wt2_encode([3], [2], small).tolist() == [0, 3]
    with pytest.raises(ValueError):
        wt2_encode([3], [2, 1], small)
    assert wt2_decode([0, 0], small).tolist() == [0]
    assert wt2_decode([0, 3], small).tolist() == [3]
    assert wt2_decode(wt2_encode([0], [4], small), small).tolist() == [0]


def test_rho_is_derived(desk):
    assert desk.rho == 0.5
    assert desk.randomness_length == 2


def test_roundtrip_exhaustive(desk):
    for m in itertools.product(range(5), repeat=2):
        for r in itertools.product(range(5), repeat=2):
            assert tuple(wt2_decode(wt2_encode(m, r, desk), desk)) == m


def test_linearity_exhaustive_on_pairs(small):
    words = list(itertools.product(range(5), repeat=2))
    for x in words:
        for y in words:
            s = (np.array(x) + np.array(y)) % 5
            assert (wt2_decode(s, small) == (wt2_decode(x, small) + wt2_decode(y, small)) % 5).all()


@given(st.lists(st.integers(0, 4), min_size=4, max_size=4),
       st.lists(st.integers(0, 4), min_size=4, max_size=4))
def test_linearity_sampled(x, y):
    inst = Wt2Instance.build(5, 4, 2)
    lhs = wt2_decode((np.array(x) + y) % 5, inst)
    assert (lhs == (wt2_decode(x, inst) + wt2_decode(y, inst)) % 5).all()


def test_perfect_secrecy(desk):
    assert wt2_secrecy_check(desk) == 0
    assert wt2_secrecy_check(desk, 0) == 0
    assert wt2_secrecy_check(desk, 4) == 1


def test_secrecy_against_brute_force_counts(desk):
    # independent check: every view of size 2 is hit equally often by each message
    for s in itertools.combinations(range(4), 2):
        for m in itertools.product(range(5), repeat=2):
            counts = {}
            for r in itertools.product(range(5), repeat=2):
                x = wt2_encode(m, r, desk)
                key = tuple(int(x[i]) for i in s)
                counts[key] = counts.get(key, 0) + 1
            assert len(counts) == 25 and set(counts.values()) == {1}


def test_bad_matrices_rejected():
    with pytest.raises(ValueError):
        Wt2Instance.from_matrices(5, [[1, 1]], [[2, 2]])
    with pytest.raises(ValueError):
        Wt2Instance.build(5, 3, 3)
