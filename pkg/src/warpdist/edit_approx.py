"""Polynomial-factor edit-distance approximation over an arbitrary metric.

Where the DTW approximation needed tree structure to coarsen strings, edit
distance gets away with magnitudes alone: dropping every letter of magnitude
at most ``r`` (for ``r`` drawn at random from ``[R, 2R]``) leaves strings
whose banded edit distance separates "below 5nR" from "at least
n^(1-eps) R / 15" with high probability.  A binary search over the magnitude
scales present in the input then brackets the distance within ``O(n^eps)``.

Randomness is consumed through explicit streams derived from ``(seed,
scale-index, sample-index)``, so runs are reproducible and samples could be
evaluated concurrently.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Hashable, Iterable, List, Sequence, Set

from .dtw_approx import EXACT_SMALL, GAP_BRACKETED, ApproxEstimate
from .errors import DomainError
from .metric import NullAugmentedMetric
from .reductions import _ed_dp, ed_general
from .seeding import derive_rng

Letter = Hashable


def ed_banded(
    m: NullAugmentedMetric, x: Sequence[Letter], y: Sequence[Letter], K: int
) -> float:
    """Edit-distance DP restricted to ``|i - j| <= K``.

    Never underestimates; exact whenever some optimal script performs at
    most ``K`` insertions plus deletions.  May be infinite when the length
    difference alone exceeds the band.
    """
    if K < 0:
        raise DomainError("band parameter must be nonnegative")
    return _ed_dp(m, x, y, band=int(K))


def simplify_magnitude(
    m: NullAugmentedMetric, x: Sequence[Letter], r: float
) -> tuple:
    """Drop every letter of magnitude at most ``r``, keeping order."""
    if r < 0:
        raise DomainError("simplification radius must be nonnegative")
    return tuple(l for l in x if m.magnitude_of(l) > r)


@dataclass(frozen=True)
class EditGapVerdict:
    """Gap decision plus the number of random scales it consumed.

    bit 0: some sampled simplification had banded cost below ``n * R``,
    hence the true distance is at most ``5 n R``.  bit 1: all samples
    stayed at or above ``n * R``; with high probability the distance is at
    least ``n^(1-eps) R / 15``.
    """

    bit: int
    samples_used: int


def _sample_count(n: int) -> int:
    # enough samples that the per-sample 1/3 failure bound (Markov on the
    # expected simplified cost) drops below n^-2 overall
    if n < 2:
        return 1
    return math.ceil(4.0 * math.log2(n)) + 1


def _gap_core(
    m: NullAugmentedMetric,
    x: Sequence[Letter],
    y: Sequence[Letter],
    R: float,
    eps: float,
    uniforms: Iterable[float],
) -> EditGapVerdict:
    n = max(len(x), len(y))
    if n == 0:
        return EditGapVerdict(0, 0)
    band = math.ceil(n ** (1.0 - eps))
    cutoff = float(n) * R
    used = 0
    for u in uniforms:
        used += 1
        r = R * (1.0 + u)  # uniform over [R, 2R]
        sx = simplify_magnitude(m, x, r)
        sy = simplify_magnitude(m, y, r)
        e = ed_banded(m, sx, sy, band)
        if e < cutoff:
            return EditGapVerdict(0, used)
    return EditGapVerdict(1, used)


def ed_gap(
    m: NullAugmentedMetric,
    x: Sequence[Letter],
    y: Sequence[Letter],
    R: float,
    eps: float,
    rng: random.Random,
) -> EditGapVerdict:
    """Randomized gap decision at magnitude scale ``R`` (see
    :class:`EditGapVerdict` for the two certified directions)."""
    if R <= 0:
        raise DomainError("magnitude scale must be positive")
    if not (0.0 < eps < 1.0):
        raise DomainError("eps must lie strictly between 0 and 1")
    n = max(len(x), len(y))
    t = _sample_count(n)
    return _gap_core(m, x, y, R, eps, (rng.random() for _ in range(t)))


def _scale_exponents(mags: Set[float]) -> List[int]:
    """Exponents i with some magnitude in [2^(i-1), 2^(i+1)].

    Between consecutive kept exponents no letter changes survival, so gap
    verdicts only move where these scales do.
    """
    out: Set[int] = set()
    for mag in mags:
        if mag <= 0:
            continue
        base = math.floor(math.log2(mag))
        for i in (base - 1, base, base + 1, base + 2):
            if 2.0 ** (i - 1) <= mag <= 2.0 ** (i + 1):
                out.add(i)
    return sorted(out)


def ed_approximate(
    m: NullAugmentedMetric,
    x: Sequence[Letter],
    y: Sequence[Letter],
    eps: float,
    seed: int,
) -> ApproxEstimate:
    """Bracket ``ed(x, y)`` within ``O(n^eps)`` with high probability.

    Requires every letter magnitude to be at least 1.  Small distances come
    out exact through the banded DP; larger ones are bracketed between
    ``n^(1-eps) R / 15`` and ``5 n R'`` for an adjacent pair of gap scales.
    Falls back to the exact DP when ``n^eps < 4``.
    """
    if not isinstance(m, NullAugmentedMetric):
        raise DomainError("edit approximation needs a null-augmented metric")
    if not (0.0 < eps < 1.0):
        raise DomainError("eps must lie strictly between 0 and 1")

    n = max(len(x), len(y))
    if n == 0:
        return ApproxEstimate(0.0, EXACT_SMALL, 0.0, 0.0, 0)

    mags = {m.magnitude_of(l) for l in x} | {m.magnitude_of(l) for l in y}
    if min(mags) < 1.0:
        raise DomainError("edit approximation assumes letter magnitudes >= 1")

    if n ** eps < 4.0:
        v = ed_general(m, x, y)
        return ApproxEstimate(v, EXACT_SMALL, v, v, 0)

    band = math.ceil(n ** (1.0 - eps))
    r_floor = min(mags)
    e0 = ed_banded(m, x, y, band)
    if e0 <= r_floor * n ** (1.0 - eps):
        return ApproxEstimate(e0, EXACT_SMALL, e0, e0, 0)
    # the banded value certifies ed > r_floor * n^(1-eps)

    grid = _scale_exponents(mags)
    t = _sample_count(n)
    calls = 0
    samples = 0

    def gap(i: int) -> int:
        nonlocal calls, samples
        calls += 1
        verdict = _gap_core(
            m, x, y, 2.0 ** i, eps,
            (derive_rng(seed, i, s).random() for s in range(t)),
        )
        samples += verdict.samples_used
        return verdict.bit

    if gap(grid[0]) == 0:
        lower = r_floor * n ** (1.0 - eps)
        upper = 5.0 * n * 2.0 ** grid[0]
        return ApproxEstimate(lower, GAP_BRACKETED, lower, upper, calls, samples)

    # positions over the kept scales, plus one sentinel scale whose verdict
    # is 0 by fiat (deleting everything costs at most 2n * max magnitude)
    exponents = grid + [grid[-1] + 1]
    lo, hi = 0, len(exponents) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if gap(exponents[mid]) == 1:
            lo = mid
        else:
            hi = mid
    assert hi == lo + 1, "bisection must end on an adjacent verdict pair"

    r1 = 2.0 ** exponents[lo]
    r2 = 2.0 ** exponents[hi]
    lower = n ** (1.0 - eps) * r1 / 15.0
    upper = 5.0 * n * r2
    return ApproxEstimate(lower, GAP_BRACKETED, lower, upper, calls, samples)
