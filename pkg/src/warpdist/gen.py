"""Seeded random instance generation for tests, benchmarks, and the CLI.

Everything here takes an explicit ``random.Random`` so instances are
reproducible; metrics come out valid by construction (distance tables go
through a shortest-path closure, trees keep weights nonincreasing downward).
"""

from __future__ import annotations

import math
import random
import string
from typing import Dict, Hashable, List, Sequence, Tuple

from .metric import (
    HammingMetric,
    MetricSpace,
    NullAugmentedMetric,
    RealLineMetric,
    TableMetric,
)
from .wstree import WellSeparatedTree

Letter = Hashable

NULL_MEMBER = "~null"


def band_adversarial(n: int) -> Tuple[MetricSpace, tuple, tuple]:
    """The family that defeats the position-diagonal band heuristic:
    ``a b...b`` against ``a...a b`` has warping distance 0, yet any pairing
    confined near the diagonal mismatches almost everywhere."""
    if n < 2:
        raise ValueError("family needs n >= 2")
    x = ("a",) + ("b",) * (n - 1)
    y = ("a",) * (n - 1) + ("b",)
    return HammingMetric("ab"), x, y


def random_string(rng: random.Random, alphabet: Sequence[Letter], n: int) -> tuple:
    return tuple(rng.choice(alphabet) for _ in range(n))


def low_distance_pair(
    rng: random.Random,
    alphabet: Sequence[Letter],
    n: int,
    edits: int,
) -> Tuple[tuple, tuple]:
    """A pair at small warping distance: same run letters with re-rolled run
    lengths (free under warping) plus up to ``edits`` letter substitutions."""
    x = random_string(rng, alphabet, n)
    runs: List[Tuple[Letter, int]] = []
    for l in x:
        if runs and runs[-1][0] == l:
            runs[-1] = (l, runs[-1][1] + 1)
        else:
            runs.append((l, 1))
    y: List[Letter] = []
    for l, length in runs:
        y.extend([l] * max(1, length + rng.randint(-2, 2)))
    for _ in range(edits):
        if not y:
            break
        y[rng.randrange(len(y))] = rng.choice(alphabet)
    return x, tuple(y)


def _metric_closure(table: List[List[float]]) -> List[List[float]]:
    # Floyd-Warshall: shortest-path distances over positive weights always
    # satisfy the triangle inequality
    n = len(table)
    d = [row[:] for row in table]
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            row = d[i]
            for j in range(n):
                v = dik + dk[j]
                if v < row[j]:
                    row[j] = v
    return d


def random_table_metric(
    rng: random.Random,
    size: int,
    *,
    with_null: bool = False,
    max_weight: int = 9,
) -> TableMetric:
    """Random integer distance table, repaired into a metric by closure."""
    letters = [f"l{i}" for i in range(size)]
    if with_null:
        letters.append(NULL_MEMBER)
    n = len(letters)
    table = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            w = float(rng.randint(1, max_weight))
            table[i][j] = table[j][i] = w
    return TableMetric(letters, _metric_closure(table))


def random_null_table_metric(rng: random.Random, size: int) -> NullAugmentedMetric:
    inner = random_table_metric(rng, size, with_null=True)
    return NullAugmentedMetric(inner, member=NULL_MEMBER)


def unit_null_hamming(alphabet: Sequence[Letter]) -> NullAugmentedMetric:
    """Hamming letters with a unit-cost empty letter (the usual edit costs)."""
    return NullAugmentedMetric(HammingMetric(alphabet), unit=1.0)


def random_magnitude_metric(
    rng: random.Random,
    size: int,
    *,
    max_norm: float = 1024.0,
) -> Tuple[NullAugmentedMetric, List[str]]:
    """Arbitrary metric with unit-floor magnitudes: letters are planar points
    with norms in [1, max_norm] (log-uniform), the empty letter the origin."""
    letters = [f"p{i}" for i in range(size)]
    points = []
    for _ in range(size):
        # norms log-uniform, floored away from 1 so rounding never dips below
        norm = math.exp(rng.uniform(math.log(1.25), math.log(max_norm)))
        angle = rng.uniform(0.0, 2.0 * math.pi)
        points.append((norm * math.cos(angle), norm * math.sin(angle)))
    names = letters + [NULL_MEMBER]
    coords = points + [(0.0, 0.0)]
    n = len(names)
    table = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            dx = coords[i][0] - coords[j][0]
            dy = coords[i][1] - coords[j][1]
            d = (dx * dx + dy * dy) ** 0.5
            table[i][j] = table[j][i] = d
    inner = TableMetric(names, table)
    return NullAugmentedMetric(inner, member=NULL_MEMBER), letters


def random_wstree(
    rng: random.Random,
    size: int,
    *,
    root_weight: float = 16.0,
    min_weight: float = 0.25,
) -> WellSeparatedTree:
    """Random tree with weights that never increase away from the root."""
    if size < 1:
        raise ValueError("tree needs at least one node")
    names = [f"n{i}" for i in range(size)]
    parent: Dict[Letter, Letter] = {names[0]: names[0]}
    weight: Dict[Letter, float] = {}
    cap: Dict[Letter, float] = {names[0]: root_weight}
    for i in range(1, size):
        p = names[rng.randrange(i)]
        w = max(min_weight, cap[p] * rng.uniform(0.3, 1.0))
        w = min(w, cap[p])
        parent[names[i]] = p
        weight[names[i]] = w
        cap[names[i]] = w
    return WellSeparatedTree(parent, weight)


def random_real_string(
    rng: random.Random, n: int, lo: float = 0.0, hi: float = 256.0, integral: bool = True
) -> tuple:
    if integral:
        return tuple(float(rng.randint(int(lo), int(hi))) for _ in range(n))
    return tuple(rng.uniform(lo, hi) for _ in range(n))


def hamming_alphabet(size: int) -> str:
    if size > len(string.ascii_lowercase):
        raise ValueError("alphabet too large for letter names")
    return string.ascii_lowercase[:size]


def mixed_metric(rng: random.Random) -> Tuple[MetricSpace, Sequence[Letter]]:
    """One of several small metric spaces with unit smallest distance,
    paired with an alphabet to draw strings from."""
    kind = rng.randrange(3)
    if kind == 0:
        alpha = hamming_alphabet(rng.choice([2, 3, 4, 8]))
        return HammingMetric(alpha), alpha
    if kind == 1:
        values = [float(v) for v in range(rng.choice([4, 6, 10]))]
        return RealLineMetric(min_nonzero=1.0), values
    m = random_table_metric(rng, rng.choice([3, 4, 6]))
    assert m.alphabet is not None
    return m, m.alphabet


def random_tree_instance(
    rng: random.Random,
    *,
    nodes: int,
    n: int,
) -> Tuple[WellSeparatedTree, tuple, tuple]:
    tree = random_wstree(rng, nodes)
    alphabet = tree.nodes
    x = random_string(rng, alphabet, n)
    y = random_string(rng, alphabet, n)
    return tree, x, y
