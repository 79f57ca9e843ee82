"""Entropy, complexity, Fisher information, and CECP boundary curves."""

import math

import numpy as np
import pytest

from ordtex import (
    OrdinalDistribution,
    build_distribution,
    cecp_bounds,
    complexity_js,
    entropy_normalized,
    fisher_discrete,
    info_triple,
    js_divergence_max,
    js_divergence_to_uniform,
    shannon,
)


def delta(m, k=0):
    p = np.zeros(m)
    p[k] = 1.0
    return p


def test_shannon_anchors():
    assert shannon(np.full(120, 1 / 120)) == pytest.approx(math.log(120), abs=1e-12)
    assert shannon(delta(24)) == 0.0
    assert shannon(np.array([0.5, 0.5, 0.0, 0.0])) == pytest.approx(
        math.log(2), abs=1e-15
    )


def test_entropy_normalized_anchors():
    # endpoints are exact, not merely close
    assert entropy_normalized(np.full(720, 1 / 720)) == 1.0
    assert entropy_normalized(delta(720, 3)) == 0.0
    half = np.zeros(6)
    half[:2] = 0.5
    assert entropy_normalized(half) == pytest.approx(
        math.log(2) / math.log(6), abs=1e-14
    )


def test_complexity_anchors():
    assert complexity_js(np.full(24, 1 / 24)) == 0.0
    assert complexity_js(delta(24)) == 0.0
    for m in (6, 24, 120):
        # Q0 normalization: the closed form equals J at a delta to 1e-12
        q0 = 1.0 / js_divergence_max(m)
        assert q0 * js_divergence_to_uniform(delta(m)) == pytest.approx(1.0, abs=1e-12)


def test_fisher_anchors():
    assert fisher_discrete(np.full(24, 1 / 24)) == 0.0
    assert fisher_discrete(delta(6, 0)) == 1.0
    assert fisher_discrete(delta(6, 5)) == 1.0
    # interior delta: two unit jumps halved
    assert fisher_discrete(delta(6, 3)) == 1.0
    half = np.zeros(6)
    half[:2] = 0.5
    assert fisher_discrete(half) == pytest.approx(0.25, abs=1e-15)


def test_fisher_depends_on_ordering():
    a = np.array([0.5, 0.5, 0.0, 0.0, 0.0, 0.0])
    b = np.array([0.5, 0.0, 0.5, 0.0, 0.0, 0.0])
    assert fisher_discrete(a) == pytest.approx(0.25)
    assert fisher_discrete(b) == pytest.approx(0.75)


def test_entropy_and_complexity_are_permutation_invariant():
    rng = np.random.default_rng(42)
    for m in (6, 24, 120):
        for _ in range(10):
            p = rng.dirichlet(np.full(m, 0.6))
            q = rng.permutation(p)
            assert entropy_normalized(q) == pytest.approx(
                entropy_normalized(p), abs=1e-13
            )
            assert complexity_js(q) == pytest.approx(complexity_js(p), abs=1e-13)


def test_info_triple_endpoints_exact():
    t = info_triple(delta(120, 0))
    assert (t.h, t.c, t.f) == (0.0, 0.0, 1.0)
    t = info_triple(np.full(120, 1 / 120))
    assert (t.h, t.c, t.f) == (1.0, 0.0, 0.0)


def test_info_triple_accepts_distribution_objects():
    d = OrdinalDistribution.from_probs(np.full(6, 1 / 6), 3)
    t = info_triple(d)
    assert t.h == 1.0 and t.c == 0.0 and t.f == 0.0


def test_info_triple_iid_noise():
    seq = np.random.default_rng(8).random(10**6)
    t = info_triple(build_distribution(seq, 5, 1))
    assert t.h > 0.995 and t.c < 0.01 and t.f < 0.01


def test_quantifier_ranges_fuzz():
    rng = np.random.default_rng(77)
    for m in (6, 24, 120, 720):
        for alpha in (0.05, 0.5, 1.0, 5.0):
            p = rng.dirichlet(np.full(m, alpha))
            t = info_triple(p)
            for v in (t.h, t.c, t.f):
                assert 0.0 <= v <= 1.0


def test_complexity_vanishes_at_entropy_extremes():
    # C = 0 whenever H = 0 or H = 1, within 1e-12
    for m in (6, 24):
        assert abs(complexity_js(delta(m, 2))) <= 1e-12
        assert abs(complexity_js(np.full(m, 1 / m))) <= 1e-12


def test_probability_vector_validation():
    with pytest.raises(ValueError):
        shannon(np.array([0.7, 0.4]))  # sum != 1
    with pytest.raises(ValueError):
        shannon(np.array([1.2, -0.2]))
    with pytest.raises(ValueError):
        shannon(np.array([1.0]))
    with pytest.raises(ValueError):
        shannon(np.array([0.5, np.nan]))
    with pytest.raises(ValueError):
        js_divergence_max(1)


# -- boundary curves ---------------------------------------------------------


def sweep_cmax_at(m, h0, n_per=4001):
    """Brute-force envelope value at H=h0: dense sweep of every boundary
    family through the public quantifiers, linear interpolation across the
    segments that straddle h0."""
    best = 0.0
    ps = np.linspace(0.0, 1.0, n_per)
    for z in range(m - 1):
        r = m - z - 1
        hs = np.empty(n_per)
        cs = np.empty(n_per)
        for i, p in enumerate(ps):
            vec = np.zeros(m)
            vec[0] = p
            if r:
                vec[1 : 1 + r] = (1.0 - p) / r
            vec /= vec.sum()
            hs[i] = entropy_normalized(vec)
            cs[i] = complexity_js(vec)
        lo, hi = hs[:-1], hs[1:]
        for i in np.nonzero((lo - h0) * (hi - h0) <= 0)[0]:
            if hi[i] == lo[i]:
                c = max(cs[i], cs[i + 1])
            else:
                t = (h0 - lo[i]) / (hi[i] - lo[i])
                c = cs[i] + t * (cs[i + 1] - cs[i])
            best = max(best, c)
    return best


def test_bounds_endpoints_and_shape():
    b = cecp_bounds(24, samples=128)
    assert b.hs[0] == 0.0 and b.hs[-1] == 1.0
    assert b.c_min[0] == 0.0 and b.c_min[-1] == 0.0
    assert b.c_max[0] == 0.0 and b.c_max[-1] == 0.0
    assert np.all(b.c_min <= b.c_max + 1e-12)
    assert len(b.hs) == len(b.c_min) == len(b.c_max) == 128


def test_cmax_matches_brute_force_sweep_m6():
    b = cecp_bounds(6)
    assert b.cmax_at(0.5) == pytest.approx(sweep_cmax_at(6, 0.5), abs=1e-8)
    for h0 in (0.1, 0.3, 0.7, 0.9):
        assert b.cmax_at(h0) == pytest.approx(sweep_cmax_at(6, h0), abs=1e-5)


def test_cmin_matches_one_parameter_family():
    # lower curve: single nonzero family p in [1/M, 1], rest uniform
    m = 6
    b = cecp_bounds(m)
    rng = np.random.default_rng(4)
    for p in rng.uniform(1 / m + 1e-6, 1.0, 12):
        vec = np.full(m, (1.0 - p) / (m - 1))
        vec[0] = p
        vec /= vec.sum()
        h = entropy_normalized(vec)
        assert b.cmin_at(h) == pytest.approx(complexity_js(vec), abs=1e-9)


def test_random_distributions_lie_between_curves():
    rng = np.random.default_rng(55)
    for m in (6, 24, 120):
        b = cecp_bounds(m)
        for alpha in (0.02, 0.3, 1.0, 8.0):
            for _ in range(25):
                p = rng.dirichlet(np.full(m, alpha))
                h = entropy_normalized(p)
                c = complexity_js(p)
                assert c <= b.cmax_at(h) + 1e-9
                assert c >= b.cmin_at(h) - 1e-9


def test_polyline_tracks_exact_curve():
    # chords deviate from the true envelope by O(step^2) either way
    for m, tol in ((6, 1e-4), (120, 1e-4)):
        b = cecp_bounds(m, samples=64)
        assert np.abs(b.c_max - b.cmax_at(b.hs)).max() <= tol
    b = cecp_bounds(6, samples=512)
    assert np.abs(b.c_max - b.cmax_at(b.hs)).max() <= 1e-6


def test_bounds_argument_errors():
    with pytest.raises(ValueError):
        cecp_bounds(1)
    with pytest.raises(ValueError):
        cecp_bounds(6, samples=4)
    b = cecp_bounds(6)
    with pytest.raises(ValueError):
        b.cmax_at(1.5)
