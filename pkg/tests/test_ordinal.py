"""Bandt-Pompe extraction, Lehmer ranking, and distribution building."""

import itertools
import math

import numpy as np
import pytest

from ordtex import (
    OrdinalDistribution,
    UndersampledWarning,
    build_distribution,
    extract_pattern,
    lehmer_rank,
)
from oracles import naive_counts, naive_pattern, naive_rank


def quiet_build(seq, order, delay=1):
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UndersampledWarning)
        return build_distribution(seq, order, delay)


def test_extract_pattern_worked_sequence():
    assert extract_pattern((1, 6, 3)) == (0, 2, 1)
    assert extract_pattern((6, 3, 2)) == (2, 1, 0)
    assert extract_pattern((3, 2, 8)) == (1, 0, 2)
    assert extract_pattern((2, 8, 9)) == (0, 1, 2)


def test_extract_pattern_tie_rule():
    # equal values rank by temporal order: earlier index gets the lower rank
    assert extract_pattern((5, 5, 1)) == (1, 2, 0)
    assert extract_pattern((7, 7, 7)) == (0, 1, 2)
    assert extract_pattern((2, 1, 2, 1)) == (2, 0, 3, 1)


def test_extract_pattern_matches_naive():
    rng = np.random.default_rng(11)
    for order in (2, 3, 5, 7):
        for _ in range(50):
            w = np.round(rng.standard_normal(order) * 2) / 2
            assert extract_pattern(w) == naive_pattern(w)


def test_extract_pattern_errors():
    with pytest.raises(ValueError):
        extract_pattern(np.array([[1.0, 2.0]]))
    with pytest.raises(ValueError):
        extract_pattern((1.0, np.nan))
    with pytest.raises(ValueError):
        extract_pattern(())


def test_lehmer_rank_anchors():
    assert lehmer_rank((0, 1, 2)) == 0
    assert lehmer_rank((0, 2, 1)) == 1
    assert lehmer_rank((2, 1, 0)) == 5


def test_lehmer_rank_full_enumeration():
    # rank = position in the lexicographically sorted permutation list
    for order in (2, 3, 4):
        perms = sorted(itertools.permutations(range(order)))
        for want, p in enumerate(perms):
            assert lehmer_rank(p) == want


def test_lehmer_rank_rejects_non_permutations():
    for bad in ((0, 0, 1), (1, 2, 3), (0, 2)):
        with pytest.raises(ValueError):
            lehmer_rank(bad)


def test_build_distribution_worked_sequence():
    with pytest.warns(UndersampledWarning):
        dist = build_distribution((1, 6, 3, 2, 8, 9), 3, 1)
    assert dist.samples == 4
    assert dist.undersampled
    want = np.zeros(6)
    for pat in ((0, 2, 1), (2, 1, 0), (1, 0, 2), (0, 1, 2)):
        want[lehmer_rank(pat)] = 0.25
    assert np.array_equal(dist.probs, want)
    assert dist.counts.sum() == 4


def test_strictly_increasing_is_delta_at_zero():
    for order in (2, 4, 6):
        dist = quiet_build(np.arange(200.0), order)
        assert dist.probs[0] == 1.0
        assert np.all(dist.probs[1:] == 0.0)


def test_counts_match_naive_oracle():
    rng = np.random.default_rng(23)
    for _ in range(6):
        seq = rng.standard_normal(1500)
        tied = np.round(seq * 3.0)
        for s in (seq, tied):
            for order in (3, 4, 5):
                for delay in (1, 2, 3):
                    dist = quiet_build(s, order, delay)
                    assert np.array_equal(dist.counts, naive_counts(s, order, delay))


def test_monotone_transform_invariance():
    rng = np.random.default_rng(7)
    seq = rng.standard_normal(4000)
    base = quiet_build(seq, 5).counts
    for g in (lambda x: 3.0 * x + 7.0, np.exp, lambda x: x**3):
        assert np.array_equal(quiet_build(g(seq), 5).counts, base)


def test_count_conservation():
    rng = np.random.default_rng(13)
    seq = rng.standard_normal(997)
    for order, delay in ((2, 1), (3, 4), (6, 2)):
        dist = quiet_build(seq, order, delay)
        assert dist.samples == 997 - (order - 1) * delay
        assert dist.counts.sum() == dist.samples
        assert abs(dist.probs.sum() - 1.0) < 1e-12


def test_reversal_maps_patterns_to_reversed_patterns():
    # tie-free data: pattern of a reversed window is the reversed rank vector
    rng = np.random.default_rng(31)
    seq = rng.standard_normal(3000)
    order = 4
    fwd = quiet_build(seq, order).counts
    rev = quiet_build(seq[::-1], order).counts
    for pat in itertools.permutations(range(order)):
        assert fwd[lehmer_rank(pat)] == rev[lehmer_rank(pat[::-1])]
    assert fwd.sum() == rev.sum()


def test_iid_probabilities_near_uniform():
    # frozen statistical check: 3 binomial standard deviations, seed 0
    seq = np.random.default_rng(0).random(10**6)
    dist = build_distribution(seq, 4, 1)
    sigma = math.sqrt((1 / 24) * (1 - 1 / 24) / dist.samples)
    assert np.abs(dist.probs - 1 / 24).max() <= 3 * sigma


def test_undersampling_warning_boundary():
    import warnings

    rng = np.random.default_rng(2)
    # D=2: threshold is 10 * 2! = 20 windows
    with pytest.warns(UndersampledWarning):
        d = build_distribution(rng.random(20), 2, 1)  # 19 windows
    assert d.undersampled
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        d = build_distribution(rng.random(21), 2, 1)  # exactly 20
    assert not d.undersampled


def test_from_probs_validation():
    d = OrdinalDistribution.from_probs(np.full(6, 1 / 6), 3)
    assert d.alphabet == 6 and d.samples == 0
    with pytest.raises(ValueError):
        OrdinalDistribution.from_probs(np.full(5, 0.2), 3)


def test_build_distribution_argument_errors():
    seq = np.arange(100.0)
    with pytest.raises(ValueError):
        build_distribution(seq, 1, 1)
    with pytest.raises(ValueError):
        build_distribution(seq, 9, 1)
    with pytest.raises(ValueError):
        build_distribution(seq, 3, 0)
    with pytest.raises(ValueError):
        build_distribution(np.arange(4.0), 5, 1)  # too short
    with pytest.raises(ValueError):
        build_distribution(np.array([1.0, np.inf, 2.0, 0.0]), 2, 1)
    with pytest.raises(ValueError):
        build_distribution(np.zeros((10, 10)), 3, 1)
