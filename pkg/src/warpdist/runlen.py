"""Run-length structure of strings and warping-path primitives.

A run is a maximal block of equal consecutive letters.  Warping two strings
against each other amounts to extending runs until both strings have equal
length; we store such a pairing compactly as a monotone path of index pairs
(a warping path) instead of materializing the extended strings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, List, Sequence, Tuple

from .errors import DomainError
from .metric import MetricSpace

Letter = Hashable
Run = Tuple[Letter, int]
Correspondence = Sequence[Tuple[int, int]]


@dataclass(frozen=True)
class RunEncoding:
    """A string decomposed into maximal runs, with cumulative end offsets."""

    runs: Tuple[Run, ...]
    prefix_lengths: Tuple[int, ...]

    @property
    def total_length(self) -> int:
        return self.prefix_lengths[-1] if self.prefix_lengths else 0

    def decode(self) -> Tuple[Letter, ...]:
        out: List[Letter] = []
        for letter, length in self.runs:
            out.extend([letter] * length)
        return tuple(out)


def encode_runs(s: Sequence[Letter]) -> RunEncoding:
    """Decompose ``s`` into maximal runs; decoding reproduces ``s`` exactly."""
    runs: List[Run] = []
    prefix: List[int] = []
    total = 0
    i = 0
    n = len(s)
    while i < n:
        j = i + 1
        while j < n and s[j] == s[i]:
            j += 1
        runs.append((s[i], j - i))
        total += j - i
        prefix.append(total)
        i = j
    return RunEncoding(tuple(runs), tuple(prefix))


def is_expansion(base: Sequence[Letter], candidate: Sequence[Letter]) -> bool:
    """True iff ``candidate`` can be obtained from ``base`` by extending runs.

    Equivalent test: same run letters in the same order, with every candidate
    run at least as long as the matching base run.
    """
    rb = encode_runs(base).runs
    rc = encode_runs(candidate).runs
    if len(rb) != len(rc):
        return False
    return all(lb == lc and nb <= nc for (lb, nb), (lc, nc) in zip(rb, rc))


def validate_correspondence(c: Correspondence, nx: int, ny: int) -> None:
    """Raise unless ``c`` is a monotone warping path covering both strings.

    A valid path starts at (0, 0), ends at (nx-1, ny-1), and each step
    advances one or both indices by exactly one.  Such paths have length at
    most nx + ny - 1 by construction.
    """
    if nx <= 0 or ny <= 0:
        raise DomainError("correspondences are defined for nonempty strings")
    if not c:
        raise DomainError("empty correspondence")
    if tuple(c[0]) != (0, 0):
        raise DomainError(f"correspondence must start at (0, 0), got {c[0]}")
    if tuple(c[-1]) != (nx - 1, ny - 1):
        raise DomainError(f"correspondence must end at ({nx - 1}, {ny - 1}), got {c[-1]}")
    for (i0, j0), (i1, j1) in zip(c, c[1:]):
        di, dj = i1 - i0, j1 - j0
        if (di, dj) not in ((0, 1), (1, 0), (1, 1)):
            raise DomainError(f"invalid step ({i0},{j0}) -> ({i1},{j1})")


def correspondence_cost(
    m: MetricSpace,
    x: Sequence[Letter],
    y: Sequence[Letter],
    c: Correspondence,
) -> float:
    """Total distance over the matched letter pairs of a warping path."""
    validate_correspondence(c, len(x), len(y))
    return sum(m.dist(x[i], y[j]) for i, j in c)
