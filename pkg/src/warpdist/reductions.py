"""Edit distance, LCS, and the padded-string bridges between them and DTW.

Interleaving the empty letter around every letter of a string turns edit
scripts into warping paths: warping the padded strings costs exactly the
general edit distance, and restricting to insertions/deletions on the padded
strings costs exactly twice it.  Both identities are exact, so they double as
strong cross-checks between otherwise independent engines.

A note on the reverse direction: the identity map embeds plain edit distance
into insertion/deletion-only edit distance with distortion exactly 2 (witness
``0^n`` vs ``1^n``: n substitutions vs 2n indels), and no embedding does
better.  That floor is documented here because there is nothing to compute.
"""

from __future__ import annotations

import math
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .dtw import dtw_quadratic
from .errors import DomainError
from .metric import NULL, NullAugmentedMetric

Letter = Hashable

INF = math.inf


def pad(x: Sequence[Letter]) -> Tuple[Letter, ...]:
    """Interleave the empty letter: ``ab`` becomes ``NULL a NULL b NULL``.

    The result has length ``2|x| + 1`` with the original letters at even
    positions (0-based odd indices are the originals' complement: here the
    empty letter occupies indices 0, 2, 4, ...).
    """
    out: List[Letter] = [NULL]
    for l in x:
        out.append(l)
        out.append(NULL)
    return tuple(out)


def _ed_dp(
    m: NullAugmentedMetric,
    x: Sequence[Letter],
    y: Sequence[Letter],
    band: Optional[int] = None,
) -> float:
    """Weighted edit-distance DP; optionally restricted to ``|i - j| <= band``.

    Indels cost the letter's magnitude, substitutions the letter distance.
    With a band, cells outside it are treated as infinite, which makes the
    result an upper bound that is exact whenever some optimal script keeps
    every match within ``band`` positions of the diagonal.
    """
    nx, ny = len(x), len(y)
    mags_x = [m.magnitude_of(l) for l in x]
    mags_y = [m.magnitude_of(l) for l in y]
    cache: Dict[Tuple[Letter, Letter], float] = {}
    mdist = m.dist

    def sub(a: Letter, b: Letter) -> float:
        key = (a, b)
        v = cache.get(key)
        if v is None:
            v = mdist(a, b)
            cache[key] = v
        return v

    w = max(nx, ny) if band is None else band
    prev = [INF] * (ny + 1)
    prev[0] = 0.0
    acc = 0.0
    for j in range(1, min(ny, w) + 1):
        acc += mags_y[j - 1]
        prev[j] = acc
    for i in range(1, nx + 1):
        cur = [INF] * (ny + 1)
        lo = i - w
        if lo < 0:
            lo = 0
        hi = i + w
        if hi > ny:
            hi = ny
        if lo == 0:
            cur[0] = prev[0] + mags_x[i - 1]
        xi = x[i - 1]
        mx = mags_x[i - 1]
        for j in range(max(lo, 1), hi + 1):
            best = prev[j - 1] + sub(xi, y[j - 1])
            v = prev[j] + mx
            if v < best:
                best = v
            v = cur[j - 1] + mags_y[j - 1]
            if v < best:
                best = v
            cur[j] = best
        prev = cur
    return prev[ny]


def ed_general(m: NullAugmentedMetric, x: Sequence[Letter], y: Sequence[Letter]) -> float:
    """Exact edit distance with metric substitution costs and magnitude
    indel costs."""
    if not isinstance(m, NullAugmentedMetric):
        raise DomainError("edit distance needs a null-augmented metric")
    return _ed_dp(m, x, y)


def ed_via_dtw(m: NullAugmentedMetric, x: Sequence[Letter], y: Sequence[Letter]) -> float:
    """Edit distance computed as the warping distance of the padded strings.

    Equal to :func:`ed_general` on every input: extending a non-empty run
    inside a padded string is never cheaper than extending an adjacent run of
    empty letters, so optimal warpings of padded strings are exactly edit
    scripts.
    """
    if not isinstance(m, NullAugmentedMetric):
        raise DomainError("the padded reduction needs a null-augmented metric")
    return dtw_quadratic(m, pad(x), pad(y))


def lcs(x: Sequence[Letter], y: Sequence[Letter]) -> int:
    """Length of a longest common subsequence (classic quadratic DP)."""
    nx, ny = len(x), len(y)
    if nx == 0 or ny == 0:
        return 0
    prev = [0] * (ny + 1)
    for i in range(1, nx + 1):
        cur = [0] * (ny + 1)
        xi = x[i - 1]
        for j in range(1, ny + 1):
            if xi == y[j - 1]:
                cur[j] = prev[j - 1] + 1
            else:
                a = prev[j]
                b = cur[j - 1]
                cur[j] = a if a >= b else b
        prev = cur
    return prev[ny]


def ed_simple(x: Sequence[Letter], y: Sequence[Letter]) -> int:
    """Unit-cost edit distance using insertions and deletions only.

    Every common subsequence pins down the letters that survive untouched,
    so the cheapest script deletes and inserts everything else:
    ``|x| + |y| - 2 * lcs``.
    """
    return len(x) + len(y) - 2 * lcs(x, y)


def ed_via_lcs(x: Sequence[Letter], y: Sequence[Letter]) -> int:
    """Unit-cost edit distance (with substitutions) recovered from
    indel-only edit distance on the padded strings.

    The padded identity ``ed_simple(pad(x), pad(y)) == 2 * ed(x, y)`` makes
    the halved value exact; the evenness of the left side is asserted.
    """
    s = ed_simple(pad(x), pad(y))
    if s % 2 != 0:
        raise AssertionError("indel cost of padded strings must be even")
    return s // 2
