"""Brute-force reference implementations.

These exist to check the real engines, not to be fast.  Each enumerates its
solution space directly (warping paths, alignments, subsequences) with no
shared subproblem structure, so agreement with the dynamic programs is
meaningful evidence.  Hard size guards keep enumeration tractable.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Hashable, List, Sequence, Tuple

import numpy as np

from .errors import DomainError, GuardError
from .metric import MetricSpace, NullAugmentedMetric

Letter = Hashable

DTW_CELL_GUARD = 64
ED_LENGTH_GUARD = 12
LCS_LENGTH_GUARD = 16


@lru_cache(maxsize=64)
def _all_paths(nx: int, ny: int) -> np.ndarray:
    """Every monotone warping path through an nx-by-ny grid.

    Returned as a matrix of flattened cell indices (row-major, i*ny + j),
    right-padded with the sentinel nx*ny which points at a zero-cost slot.
    """
    paths: List[List[int]] = []
    path: List[int] = []

    def walk(i: int, j: int) -> None:
        path.append(i * ny + j)
        if i == nx - 1 and j == ny - 1:
            paths.append(path.copy())
        else:
            if i + 1 < nx:
                walk(i + 1, j)
            if j + 1 < ny:
                walk(i, j + 1)
            if i + 1 < nx and j + 1 < ny:
                walk(i + 1, j + 1)
        path.pop()

    walk(0, 0)
    width = nx + ny - 1
    sentinel = nx * ny
    out = np.full((len(paths), width), sentinel, dtype=np.intp)
    for row, p in enumerate(paths):
        out[row, : len(p)] = p
    return out


def dtw_bruteforce(m: MetricSpace, x: Sequence[Letter], y: Sequence[Letter]) -> float:
    """Minimum warping-path cost by exhaustive path enumeration."""
    if len(x) == 0 and len(y) == 0:
        return 0.0
    if len(x) == 0 or len(y) == 0:
        raise DomainError("warping against an empty string is undefined")
    if len(x) * len(y) > DTW_CELL_GUARD:
        raise GuardError(f"brute-force DTW is limited to {DTW_CELL_GUARD} grid cells")
    nx, ny = len(x), len(y)
    costs = np.empty(nx * ny + 1)
    for i in range(nx):
        for j in range(ny):
            costs[i * ny + j] = m.dist(x[i], y[j])
    costs[nx * ny] = 0.0  # padding slot
    paths = _all_paths(nx, ny)
    return float(costs[paths].sum(axis=1).min())


def ed_bruteforce(m: NullAugmentedMetric, x: Sequence[Letter], y: Sequence[Letter]) -> float:
    """Minimum edit cost by exhaustive alignment enumeration.

    Optimal edit scripts correspond one-to-one with monotone alignments:
    every letter is either matched to one letter of the other string
    (substitution, or a free match) or left unmatched (indel at its
    magnitude).  Enumerating alignments therefore covers all scripts.
    """
    if len(x) + len(y) > ED_LENGTH_GUARD:
        raise GuardError(f"brute-force edit distance is limited to {ED_LENGTH_GUARD} letters")
    nx, ny = len(x), len(y)
    mags_x = [m.magnitude_of(l) for l in x]
    mags_y = [m.magnitude_of(l) for l in y]

    def rec(i: int, j: int) -> float:
        if i == nx and j == ny:
            return 0.0
        best = math.inf
        if i < nx:
            v = mags_x[i] + rec(i + 1, j)
            if v < best:
                best = v
        if j < ny:
            v = mags_y[j] + rec(i, j + 1)
            if v < best:
                best = v
        if i < nx and j < ny:
            v = m.dist(x[i], y[j]) + rec(i + 1, j + 1)
            if v < best:
                best = v
        return best

    return rec(0, 0)


def lcs_bruteforce(x: Sequence[Letter], y: Sequence[Letter]) -> int:
    """Longest common subsequence length by subset enumeration over ``x``."""
    if len(x) > LCS_LENGTH_GUARD:
        raise GuardError(f"brute-force LCS is limited to |x| <= {LCS_LENGTH_GUARD}")
    nx = len(x)
    best = 0

    def is_subsequence(sub: Tuple[Letter, ...]) -> bool:
        it = iter(y)
        return all(any(l == c for c in it) for l in sub)

    for mask in range(1 << nx):
        size = mask.bit_count()
        if size <= best:
            continue
        sub = tuple(x[i] for i in range(nx) if mask >> i & 1)
        if is_subsequence(sub):
            best = size
    return best
