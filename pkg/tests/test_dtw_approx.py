import math
import random

import pytest

from warpdist.dtw import dtw_quadratic
from warpdist.dtw_approx import (
    EXACT_SMALL,
    GAP_BRACKETED,
    dtw_approx_reals,
    dtw_approximate,
    dtw_gap,
)
from warpdist.errors import DomainError
from warpdist.gen import random_tree_instance, random_wstree
from warpdist.metric import RealLineMetric, TreeMetric


def test_gap_zero_on_equal_strings():
    rng = random.Random(0)
    tree, x, _ = random_tree_instance(rng, nodes=12, n=32)
    assert dtw_gap(tree, x, x, r=tree.min_edge_weight(), eps=0.5) == 0


def test_gap_zero_when_everything_collapses():
    rng = random.Random(1)
    tree, x, y = random_tree_instance(rng, nodes=12, n=32)
    r = 4.0 * tree.max_edge_weight() + 1.0
    assert dtw_gap(tree, x, y, r=r, eps=0.5) == 0


def test_gap_one_on_oracle_verified_large_distance():
    rng = random.Random(2)
    found = 0
    while found < 5:
        tree, x, y = random_tree_instance(rng, nodes=16, n=64)
        metric = TreeMetric(tree)
        n = 64
        eps = 0.5
        r = tree.min_edge_weight()
        if dtw_quadratic(metric, x, y) > n ** (1 - eps) * r:
            # distance certified above the gap's upper certificate level
            assert dtw_gap(tree, x, y, r=r, eps=eps) in (0, 1)
            if dtw_quadratic(metric, x, y) >= n * r:
                assert dtw_gap(tree, x, y, r=r, eps=eps) == 1
                found += 1
        else:
            found += 0


def test_gap_soundness_randomized():
    rng = random.Random(3)
    eps = 0.5
    for _ in range(40):
        tree, x, y = random_tree_instance(rng, nodes=rng.randint(4, 24), n=48)
        metric = TreeMetric(tree)
        n = 48
        r = tree.min_edge_weight() * rng.choice([1.0, 2.0, 8.0])
        bit = dtw_gap(tree, x, y, r=r, eps=eps)
        truth = dtw_quadratic(metric, x, y)
        if bit == 1:
            assert truth > n ** (1 - eps) * r - 1e-9
        else:
            assert truth <= n * r + 1e-9


def test_gap_rejects_bad_arguments():
    rng = random.Random(4)
    tree, x, y = random_tree_instance(rng, nodes=8, n=8)
    with pytest.raises(DomainError):
        dtw_gap(tree, x, y, r=-1.0, eps=0.5)
    with pytest.raises(DomainError):
        dtw_gap(tree, x, y, r=1.0, eps=1.5)
    with pytest.raises(DomainError):
        dtw_gap(tree, (), y, r=1.0, eps=0.5)


def test_approximate_equal_strings_exact_small():
    rng = random.Random(5)
    tree, x, _ = random_tree_instance(rng, nodes=10, n=64)
    est = dtw_approximate(tree, x, x, eps=0.5)
    assert est.mode == EXACT_SMALL
    assert est.estimate == 0.0


def test_approximate_brackets_truth():
    rng = random.Random(6)
    n = 128
    eps = 0.5
    for _ in range(25):
        tree, x, y = random_tree_instance(rng, nodes=rng.randint(4, 32), n=n)
        metric = TreeMetric(tree)
        truth = dtw_quadratic(metric, x, y)
        est = dtw_approximate(tree, x, y, eps=eps)
        assert est.lower - 1e-9 <= truth <= est.upper + 1e-9
        if est.mode == GAP_BRACKETED:
            assert est.upper / est.lower <= n ** eps * (1 + 1e-9)
        else:
            assert est.estimate == pytest.approx(truth, abs=1e-9)


def test_approximate_small_distance_is_exact():
    rng = random.Random(7)
    tree = random_wstree(rng, 12)
    nodes = tree.nodes
    base = tuple(rng.choice(nodes) for _ in range(64))
    x = list(base)
    x[10] = rng.choice(nodes)  # a single perturbation keeps the distance small
    est = dtw_approximate(tree, tuple(x), base, eps=0.5)
    truth = dtw_quadratic(TreeMetric(tree), tuple(x), base)
    if est.mode == EXACT_SMALL:
        assert est.estimate == pytest.approx(truth, abs=1e-9)
    assert est.lower - 1e-9 <= truth <= est.upper + 1e-9


def test_gap_call_budget():
    rng = random.Random(8)
    n = 128
    for _ in range(15):
        tree, x, y = random_tree_instance(rng, nodes=16, n=n)
        est = dtw_approximate(tree, x, y, eps=0.5)
        if est.mode == GAP_BRACKETED:
            m_top = tree.max_edge_weight() / tree.min_edge_weight()
            grid = max(1, math.ceil(math.log2(m_top))) if m_top > 1 else 1
            assert est.gap_calls <= math.ceil(math.log2(grid + 1)) + 2


def test_small_epsilon_falls_back_to_exact():
    rng = random.Random(9)
    tree, x, y = random_tree_instance(rng, nodes=8, n=8)
    est = dtw_approximate(tree, x, y, eps=0.1)  # n^eps < 4
    assert est.mode == EXACT_SMALL
    assert est.estimate == pytest.approx(dtw_quadratic(TreeMetric(tree), x, y), abs=1e-9)


# --- real-line wrapper -----------------------------------------------------------


def test_reals_equal_strings():
    x = tuple(float(v) for v in range(32))
    assert dtw_approx_reals(x, x, eps=0.5, seed=0) == 0.0


def test_reals_constant_shift_bracket():
    n = 64
    c = 5.0
    x = tuple(0.0 for _ in range(n))
    y = tuple(c for _ in range(n))
    truth = dtw_quadratic(RealLineMetric(), x, y)
    assert truth == n * c
    est = dtw_approx_reals(x, y, eps=0.5, seed=1)
    # estimates are conservative: within n^eps below the tree distance and
    # a log-factor above the line distance across trials
    assert truth / (n ** 0.5 * 8 * math.log2(n)) <= est <= truth * 8 * math.log2(n)


def test_reals_deterministic_per_seed():
    rng = random.Random(10)
    x = tuple(float(rng.randint(0, 60)) for _ in range(48))
    y = tuple(float(rng.randint(0, 60)) for _ in range(48))
    a = dtw_approx_reals(x, y, eps=0.5, seed=42)
    b = dtw_approx_reals(x, y, eps=0.5, seed=42)
    assert a == b
