import math
import random

import pytest

from warpdist.dtw_approx import EXACT_SMALL
from warpdist.edit_approx import (
    EditGapVerdict,
    ed_approximate,
    ed_banded,
    ed_gap,
    simplify_magnitude,
)
from warpdist.errors import DomainError
from warpdist.gen import random_magnitude_metric, unit_null_hamming
from warpdist.metric import NullAugmentedMetric, RealLineMetric
from warpdist.reductions import ed_general

UNIT = unit_null_hamming("abc")
REAL_NULL = NullAugmentedMetric(RealLineMetric(), origin=0.0)


# --- banded DP --------------------------------------------------------------


def test_banded_identity_zero_band():
    s = tuple("abcabc")
    assert ed_banded(UNIT, s, s, 0) == 0.0


def test_banded_overestimates_when_band_too_narrow():
    x, y = tuple("ab"), tuple("b")
    narrow = ed_banded(UNIT, x, y, 0)
    assert narrow > ed_general(UNIT, x, y) == 1.0
    assert narrow == math.inf


def test_banded_full_band_is_exact():
    rng = random.Random(1)
    for _ in range(50):
        x = tuple(rng.choice("abc") for _ in range(rng.randint(0, 10)))
        y = tuple(rng.choice("abc") for _ in range(rng.randint(0, 10)))
        K = max(len(x), len(y))
        assert ed_banded(UNIT, x, y, K) == ed_general(UNIT, x, y)


def test_banded_monotone_and_exact_with_few_indels():
    rng = random.Random(2)
    for _ in range(40):
        x = tuple(rng.choice("abc") for _ in range(rng.randint(1, 10)))
        y = tuple(rng.choice("abc") for _ in range(rng.randint(1, 10)))
        full = ed_general(UNIT, x, y)
        values = [ed_banded(UNIT, x, y, K) for K in range(0, 11)]
        assert all(a >= b for a, b in zip(values, values[1:]))
        assert values[-1] == full
        assert all(v >= full for v in values)


# --- magnitude simplification --------------------------------------------------


def test_simplify_keeps_everything_at_zero():
    x = tuple("abca")
    assert simplify_magnitude(UNIT, x, 0.0) == x


def test_simplify_drops_everything_above_max():
    x = tuple("abca")
    assert simplify_magnitude(UNIT, x, 1.0) == ()


def test_simplify_filters_by_magnitude():
    x = (1.0, 3.0, 2.0)
    assert simplify_magnitude(REAL_NULL, x, 1.5) == (3.0, 2.0)


def test_simplify_rejects_negative_radius():
    with pytest.raises(DomainError):
        simplify_magnitude(UNIT, tuple("a"), -1.0)


# --- gap test -------------------------------------------------------------------


def test_gap_zero_on_equal_strings():
    rng = random.Random(3)
    x = tuple(float(rng.randint(1, 50)) for _ in range(32))
    verdict = ed_gap(REAL_NULL, x, x, R=1.0, eps=0.5, rng=random.Random(0))
    assert verdict.bit == 0


def test_gap_zero_when_all_letters_drop():
    x = (2.0, 3.0, 4.0)
    y = (5.0, 6.0)
    verdict = ed_gap(REAL_NULL, x, y, R=10.0, eps=0.5, rng=random.Random(0))
    assert verdict.bit == 0


def test_gap_one_when_distance_huge():
    # certified direction: distance above 5nR forces every sample high
    n = 16
    x = tuple(1000.0 + i for i in range(n))
    y = tuple(-1000.0 - i for i in range(n))
    R = 1.0
    assert ed_general(REAL_NULL, x, y) > 5 * n * R
    for seed in range(5):
        verdict = ed_gap(REAL_NULL, x, y, R=R, eps=0.5, rng=random.Random(seed))
        assert verdict.bit == 1


def test_gap_reports_samples_used():
    x = tuple(float(v + 1) for v in range(32))
    verdict = ed_gap(REAL_NULL, x, x, R=1.0, eps=0.5, rng=random.Random(1))
    assert isinstance(verdict, EditGapVerdict)
    assert 1 <= verdict.samples_used <= math.ceil(4 * math.log2(32)) + 1


# --- structural properties -------------------------------------------------------


def test_survivors_have_magnitude_at_least_r_floor():
    rng = random.Random(5)
    m, letters = random_magnitude_metric(rng, 12)
    for _ in range(40):
        x = tuple(rng.choice(letters) for _ in range(20))
        R = 2.0 ** rng.randint(0, 8)
        r = R * (1 + rng.random())
        for l in simplify_magnitude(m, x, r):
            assert m.magnitude_of(l) >= R


def test_simplification_cost_within_4rn():
    rng = random.Random(6)
    m, letters = random_magnitude_metric(rng, 10)
    for _ in range(30):
        n = rng.randint(2, 24)
        x = tuple(rng.choice(letters) for _ in range(n))
        y = tuple(rng.choice(letters) for _ in range(n))
        R = 2.0 ** rng.randint(0, 6)
        r = R * (1 + rng.random())
        sx, sy = simplify_magnitude(m, x, r), simplify_magnitude(m, y, r)
        assert ed_general(m, x, y) <= ed_general(m, sx, sy) + 4 * R * n + 1e-9


def test_expected_simplified_cost_bounded():
    rng = random.Random(7)
    m, letters = random_magnitude_metric(rng, 10)
    checked = 0
    while checked < 5:
        n = rng.randint(6, 20)
        x = tuple(rng.choice(letters) for _ in range(n))
        y = tuple(rng.choice(letters) for _ in range(n))
        base = ed_general(m, x, y)
        if base <= 0:
            continue
        R = 2.0
        total = 0.0
        draws = 200
        for _ in range(draws):
            r = R * (1 + rng.random())
            total += ed_general(m, simplify_magnitude(m, x, r), simplify_magnitude(m, y, r))
        assert total / draws <= 6.0 * base
        checked += 1


# --- full approximation -----------------------------------------------------------


def test_approximate_equal_strings():
    x = tuple(float(v + 1) for v in range(64))
    est = ed_approximate(REAL_NULL, x, x, eps=0.5, seed=0)
    assert est.mode == EXACT_SMALL
    assert est.estimate == 0.0


def test_approximate_requires_unit_magnitudes():
    x = (0.5, 2.0)
    with pytest.raises(DomainError):
        ed_approximate(REAL_NULL, x, x, eps=0.5, seed=0)


def test_approximate_bracket_and_ratio():
    rng = random.Random(8)
    n = 96
    eps = 0.5
    hits = 0
    for seed in range(30):
        m, letters = random_magnitude_metric(rng, 14)
        x = tuple(rng.choice(letters) for _ in range(n))
        y = tuple(rng.choice(letters) for _ in range(n))
        truth = ed_general(m, x, y)
        est = ed_approximate(m, x, y, eps=eps, seed=seed)
        if est.lower - 1e-9 <= truth <= est.upper + 1e-9:
            hits += 1
        ratio = est.estimate / truth if truth > 0 else 1.0
        assert 1.0 / (150 * n ** eps) <= ratio <= 150 * n ** eps
    assert hits >= 27  # randomized guarantee, leave a little slack


def test_approximate_deterministic_per_seed():
    rng = random.Random(9)
    m, letters = random_magnitude_metric(rng, 10)
    x = tuple(rng.choice(letters) for _ in range(48))
    y = tuple(rng.choice(letters) for _ in range(48))
    a = ed_approximate(m, x, y, eps=0.5, seed=11)
    b = ed_approximate(m, x, y, eps=0.5, seed=11)
    assert (a.estimate, a.lower, a.upper, a.mode) == (b.estimate, b.lower, b.upper, b.mode)


def test_small_epsilon_falls_back_to_exact():
    x = (1.0, 2.0, 3.0)
    y = (3.0, 2.0)
    est = ed_approximate(REAL_NULL, x, y, eps=0.2, seed=0)
    assert est.mode == EXACT_SMALL
    assert est.estimate == ed_general(REAL_NULL, x, y)
