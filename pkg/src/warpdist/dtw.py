"""Exact dynamic time warping engines.

Four routes to the same value:

* ``dtw_quadratic`` -- the textbook quadratic dynamic program, used as the
  mid-scale oracle.  Dispatches to a vectorized anti-diagonal kernel when the
  metric admits array costs, otherwise runs a plain rolling-row DP.
* ``dtw_banded`` -- the Sakoe-Chiba band heuristic over letter positions.
  Fast, but only an upper bound: it can be badly wrong even when the true
  distance is tiny (e.g. ``ab...b`` vs ``a...ab``).
* ``dtw_bounded`` -- a run-indexed dynamic program that either certifies the
  exact distance when it is at most ``K`` or reports that it exceeds ``K``,
  visiting O((|x|+|y|) * K / delta) states, where ``delta`` is the smallest
  nonzero letter distance.
* ``dtw_doubling`` -- wraps ``dtw_bounded`` with geometrically growing ``K``,
  giving exact answers in time proportional to ``n * dtw(x, y)``.

The bounded DP treats the two strings asymmetrically: one side is consumed
run by run, the other letter by letter, with the roles swapping inside the
recursion.  A subproblem ``(side, r, q, o)`` is the cheapest pairing of the
first ``r`` runs of the run-role string against the first ``q`` runs of the
letter-role string truncated after ``o`` letters of its ``q``-th run, under
the constraint that this final partial run is not extended.  Any pairing that
crosses runs whose indices differ by more than the band must mismatch about
half that many letters, so states far from the run diagonal are pruned to
infinity without affecting answers at or below ``K``.

Empty strings: warping is undefined against a nonempty string (domain
error); two empty strings are at distance zero.  Lengths never need to
match.  All functions are pure; each call owns its memo tables, so
concurrent use on separate inputs is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import chain
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, UnknownLetterError
from .metric import NULL, MetricSpace, NullAugmentedMetric, RealLineMetric, TreeMetric

Letter = Hashable

INF = math.inf

_NUMPY_MIN_LEN = 32
_TABLE_LIMIT = 256


def _require_nonempty(x: Sequence[Letter], y: Sequence[Letter]) -> None:
    if len(x) == 0 or len(y) == 0:
        raise DomainError("warping against an empty string is undefined")


def _encode_pair(
    x: Sequence[Letter], y: Sequence[Letter]
) -> Tuple[List[int], List[int], List[Letter]]:
    """Map letters of both strings to small integer codes."""
    index: Dict[Letter, int] = {}
    cx = [index.setdefault(l, len(index)) for l in x]
    cy = [index.setdefault(l, len(index)) for l in y]
    return cx, cy, list(index)


def _make_dist(m: MetricSpace, letters: Sequence[Letter]) -> Callable[[int, int], float]:
    cache: Dict[Tuple[int, int], float] = {}
    mdist = m.dist

    def dist(a: int, b: int) -> float:
        key = (a, b)
        v = cache.get(key)
        if v is None:
            v = mdist(letters[a], letters[b])
            cache[key] = v
        return v

    return dist


def _make_raw_dist(m: MetricSpace, letters: Sequence[Letter]) -> Callable[[int, int], float]:
    """Uncached code-indexed distance for engines that memoize pairs
    themselves.  Letters are validated once so the tree fast path can skip
    per-call membership checks."""
    if isinstance(m, TreeMetric):
        tree = m.tree
        for l in letters:
            if l not in tree:
                raise UnknownLetterError(f"letter {l!r} is not a tree node")
        tdist = tree.distance
        return lambda a, b: tdist(letters[a], letters[b])
    mdist = m.dist
    return lambda a, b: mdist(letters[a], letters[b])


def _pair_table(m: MetricSpace, letters: Sequence[Letter]) -> List[List[float]]:
    mdist = m.dist
    return [[mdist(a, b) for b in letters] for a in letters]


# ---------------------------------------------------------------------------
# Quadratic DP
# ---------------------------------------------------------------------------


def _quad_python_table(cx: List[int], cy: List[int], table: List[List[float]]) -> float:
    ny = len(cy)
    row = table[cx[0]]
    acc = 0.0
    prev = [0.0] * ny
    for j in range(ny):
        acc += row[cy[j]]
        prev[j] = acc
    for i in range(1, len(cx)):
        row = table[cx[i]]
        cur = [0.0] * ny
        left = cur[0] = prev[0] + row[cy[0]]
        for j in range(1, ny):
            up = prev[j]
            diag = prev[j - 1]
            best = up if up <= diag else diag
            if left < best:
                best = left
            left = cur[j] = best + row[cy[j]]
        prev = cur
    return prev[ny - 1]


def _quad_python_cached(
    cx: List[int], cy: List[int], dist: Callable[[int, int], float]
) -> float:
    ny = len(cy)
    acc = 0.0
    prev = [0.0] * ny
    a = cx[0]
    for j in range(ny):
        acc += dist(a, cy[j])
        prev[j] = acc
    for i in range(1, len(cx)):
        a = cx[i]
        cur = [0.0] * ny
        left = cur[0] = prev[0] + dist(a, cy[0])
        for j in range(1, ny):
            up = prev[j]
            diag = prev[j - 1]
            best = up if up <= diag else diag
            if left < best:
                best = left
            left = cur[j] = best + dist(a, cy[j])
        prev = cur
    return prev[ny - 1]


def _vector_form(m: MetricSpace, x: Sequence[Letter], y: Sequence[Letter]):
    """Describe how to compute diagonal cost vectors, or None if unsupported.

    Returns ("real", vx, vy) for absolute-difference metrics or
    ("table", cx, cy, table) for finite metrics small enough to tabulate.
    """
    origin: Optional[float] = None
    real = isinstance(m, RealLineMetric)
    if isinstance(m, NullAugmentedMetric) and m.null_origin is not None:
        real = True
        origin = m.null_origin
    if real:
        def as_value(l: Letter) -> float:
            if l is NULL and origin is not None:
                return origin
            if not isinstance(l, (int, float)) or not math.isfinite(l):
                raise UnknownLetterError(f"letter {l!r} is not a finite real")
            return float(l)

        vx = np.asarray([as_value(l) for l in x], dtype=np.float64)
        vy = np.asarray([as_value(l) for l in y], dtype=np.float64)
        return ("real", vx, vy)

    cx, cy, letters = _encode_pair(x, y)
    a = len(letters)
    if a <= _TABLE_LIMIT and a * a <= 8 * len(x) * len(y):
        table = np.asarray(_pair_table(m, letters), dtype=np.float64)
        return ("table", np.asarray(cx, dtype=np.intp), np.asarray(cy, dtype=np.intp), table)
    return None


def _quad_numpy(nx: int, ny: int, diag_costs) -> float:
    """Anti-diagonal sweep of the quadratic DP.

    Cells along one anti-diagonal only depend on the two previous diagonals,
    so each diagonal is a vectorized 3-way minimum.  Rows are kept in
    buffers with one-cell infinity margins so out-of-grid predecessors fall
    out naturally.
    """
    max_len = min(nx, ny)
    bufs = [np.empty(max_len + 2) for _ in range(3)]
    scratch = np.empty(max_len)
    offsets = [0, 0, 0]
    lengths = [0, 0, 0]

    for k in range(nx + ny - 1):
        i0 = k - ny + 1
        if i0 < 0:
            i0 = 0
        i1 = nx - 1 if nx - 1 < k else k
        L = i1 - i0 + 1

        slot = k % 3
        curpad = bufs[slot]
        curpad[0] = INF
        curpad[L + 1] = INF
        cur = curpad[1 : L + 1]
        c = diag_costs(k, i0, i1)

        if k == 0:
            cur[:] = c
        else:
            pslot = (k - 1) % 3
            prevpad, p0 = bufs[pslot], offsets[pslot]
            up = prevpad[i0 - p0 : i0 - p0 + L]
            left = prevpad[i0 - p0 + 1 : i0 - p0 + 1 + L]
            best = scratch[:L]
            np.minimum(up, left, out=best)
            if k >= 2:
                dslot = (k - 2) % 3
                prev2pad, pp0 = bufs[dslot], offsets[dslot]
                diag = prev2pad[i0 - pp0 : i0 - pp0 + L]
                np.minimum(best, diag, out=best)
            np.add(best, c, out=cur)

        offsets[slot] = i0
        lengths[slot] = L

    last = (nx + ny - 2) % 3
    return float(bufs[last][1])


def _quad_numpy_dispatch(form) -> float:
    kind = form[0]
    if kind == "real":
        _, vx, vy = form
        nx, ny = len(vx), len(vy)

        def diag_costs(k, i0, i1):
            ys = vy[k - i1 : k - i0 + 1][::-1]
            return np.abs(vx[i0 : i1 + 1] - ys)

    else:
        _, cx, cy, table = form
        nx, ny = len(cx), len(cy)

        def diag_costs(k, i0, i1):
            ys = cy[k - i1 : k - i0 + 1][::-1]
            return table[cx[i0 : i1 + 1], ys]

    return _quad_numpy(nx, ny, diag_costs)


def dtw_quadratic(m: MetricSpace, x: Sequence[Letter], y: Sequence[Letter]) -> float:
    """Exact dynamic time warping distance via the full quadratic DP."""
    if len(x) == 0 and len(y) == 0:
        return 0.0
    _require_nonempty(x, y)
    if min(len(x), len(y)) >= _NUMPY_MIN_LEN:
        form = _vector_form(m, x, y)
        if form is not None:
            return _quad_numpy_dispatch(form)
    cx, cy, letters = _encode_pair(x, y)
    a = len(letters)
    if a <= _TABLE_LIMIT and a * a <= 8 * len(cx) * len(cy):
        return _quad_python_table(cx, cy, _pair_table(m, letters))
    return _quad_python_cached(cx, cy, _make_dist(m, letters))


def dtw_banded(m: MetricSpace, x: Sequence[Letter], y: Sequence[Letter], K: int) -> float:
    """Sakoe-Chiba band heuristic: the quadratic DP restricted to cells with
    ``|i - j| <= 2K``.

    Always an upper bound on the true distance; exact whenever some optimal
    pairing only matches positions within ``K`` of each other.  Returns
    infinity when no path fits in the band (length difference above ``2K``).
    """
    if len(x) == 0 and len(y) == 0:
        return 0.0
    _require_nonempty(x, y)
    if K < 0:
        raise DomainError("band parameter must be nonnegative")
    w = 2 * int(K)
    cx, cy, letters = _encode_pair(x, y)
    nx, ny = len(cx), len(cy)
    if abs(nx - ny) > w:
        return INF
    a_count = len(letters)
    if a_count <= _TABLE_LIMIT and a_count * a_count <= 8 * nx * ny:
        table = _pair_table(m, letters)
        dist = lambda a, b: table[a][b]
    else:
        dist = _make_dist(m, letters)

    prev = [INF] * ny
    for i in range(nx):
        lo = i - w
        if lo < 0:
            lo = 0
        hi = i + w
        if hi > ny - 1:
            hi = ny - 1
        cur = [INF] * ny
        a = cx[i]
        for j in range(lo, hi + 1):
            c = dist(a, cy[j])
            if i == 0:
                cur[j] = c if j == 0 else c + cur[j - 1]
                continue
            best = prev[j]
            if j > 0:
                if cur[j - 1] < best:
                    best = cur[j - 1]
                if prev[j - 1] < best:
                    best = prev[j - 1]
            cur[j] = c + best
        prev = cur
    return prev[ny - 1]


# ---------------------------------------------------------------------------
# Bounded run-indexed DP
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundedResult:
    """Outcome of a bounded computation.

    ``exact`` means ``value`` is the true distance (and is at most the bound).
    Otherwise the true distance provably exceeds the bound and ``value``
    carries the banded relaxation's witness (possibly infinity).  ``states``
    counts memoized subproblems, the work measure of the bounded DP.
    """

    exact: bool
    value: float
    states: int = 0


@dataclass(frozen=True)
class SubproblemKey:
    """Identifies one state of the run-indexed DP (for inspection/tests).

    ``runs_side`` names the string consumed run-by-run ("x" or "y");
    ``run_index`` is how many of its runs are in play; ``letter_run_index``
    and ``offset`` locate the truncation point in the other string (offset 0
    means the run is empty and trivially unextendable).
    """

    runs_side: str
    run_index: int
    letter_run_index: int
    offset: int


def _runs_of(codes: Sequence[int]) -> Tuple[List[int], List[int]]:
    lets: List[int] = []
    lens: List[int] = []
    i = 0
    n = len(codes)
    while i < n:
        j = i + 1
        c = codes[i]
        while j < n and codes[j] == c:
            j += 1
        lets.append(c)
        lens.append(j - i)
        i = j
    return lets, lens


_DENSE_SLOT_LIMIT = 16_000_000


def _sp_engine(
    run_lets: Tuple[List[int], List[int]],
    run_lens: Tuple[List[int], List[int]],
    m: MetricSpace,
    letters: Sequence[Letter],
    band: int,
    tops: Sequence[Tuple[int, int, int, int]],
) -> Tuple[List[float], int]:
    """Evaluate run-DP states; returns values for ``tops`` plus a state count.

    Dispatches between two equivalent engines: a dense level sweep over the
    banded window of run-index pairs (fast, but its table must fit in
    memory) and a lazy depth-first fallback that only materializes reachable
    rows (for very long strings probed with very large bounds).
    """
    R0, R1 = len(run_lens[0]), len(run_lens[1])
    RB = max(R0, R1) + 1
    off = min(band + 1, RB)
    if 2 * RB * (2 * off + 1) <= _DENSE_SLOT_LIMIT:
        return _sp_dense(run_lets, run_lens, _make_raw_dist(m, letters), off, tops)
    return _sp_lazy(run_lets, run_lens, _make_dist(m, letters), band, tops)


def _sp_dense(
    run_lets: Tuple[List[int], List[int]],
    run_lens: Tuple[List[int], List[int]],
    dist: Callable[[int, int], float],
    off: int,
    tops: Sequence[Tuple[int, int, int, int]],
) -> Tuple[List[float], int]:
    """Bottom-up run-DP over the window ``|r - q| <= off`` of run pairs.

    Rows are processed level by level in ``r + q``, so every dependency
    (same side with one fewer run, the role-swapped row, and the previous
    letter-run row) is already final and can be read by direct indexing;
    window-boundary rows hold the pruning infinity.  Within a row, offsets
    are filled by one scan: extending the active run costs ``d`` per step,
    and the not-extended alternative reads a constant-shift slice of a
    finished row.
    """
    rl0, rl1 = run_lets
    rn0, rn1 = run_lens
    R0, R1 = len(rn0), len(rn1)
    RB = max(R0, R1) + 1
    W = 2 * off + 1
    lens = (rn0, rn1)
    lets = (rl0, rl1)
    runs = (R0, R1)

    rows: List[Optional[List[float]]] = [None] * (2 * RB * W)
    states = 0
    cbase = max(max(rl0, default=0), max(rl1, default=0)) + 1
    dcache: Dict[int, float] = {}
    dcache_get = dcache.get

    for t in range(0, R0 + R1 + 1):
        for side in (0, 1):
            r_run = runs[side]
            r_oth = runs[1 - side]
            olens = lens[1 - side]
            slens = lens[side]
            slets = lets[side]
            olets = lets[1 - side]
            rlo = t - r_oth
            if rlo < 0:
                rlo = 0
            half = (t - off + 1) // 2
            if half > rlo:
                rlo = half
            rhi = min(r_run, t, (t + off) // 2)
            flipbase = (1 - side) * RB
            sidebase = side * RB
            for r in range(rlo, rhi + 1):
                q = t - r
                co = q - r + off
                L = olens[q - 1] if q else 0
                base = (sidebase + r) * W
                if co == 0 or co == W - 1:
                    rows[base + co] = [INF] * (L + 1)
                    states += L + 1
                    continue
                if r == 0:
                    # empty run side pairs only with an empty portion
                    row = [INF] * (L + 1)
                    if q <= 1:
                        row[0] = 0.0
                    rows[base + co] = row
                    states += L + 1
                    continue
                if q == 0:
                    rows[base + co] = [INF]
                    states += 1
                    continue
                l = slens[r - 1]
                rowB = rows[(flipbase + q - 1) * W + (W - co)]
                rowC = rows[base + co - 1]
                p = olens[q - 2] if q >= 2 else 0
                v = rowC[p]
                bval = rowB[l]
                if bval < v:
                    v = bval
                row = [v]
                if L:
                    slet = slets[r - 1]
                    olet = olets[q - 1]
                    dk = slet * cbase + olet
                    d = dcache_get(dk)
                    if d is None:
                        d = dist(slet, olet)
                        dcache[dk] = d
                    append = row.append
                    if l <= L:
                        rowA = rows[base - W + co + 1]
                        dl = d * l
                        for o_ in range(1, l):
                            w = rowB[l - o_] + d * o_
                            v = v + d
                            if w < v:
                                v = w
                            append(v)
                        for o_ in range(l, L + 1):
                            w = rowA[o_ - l] + dl
                            v = v + d
                            if w < v:
                                v = w
                            append(v)
                    else:
                        for o_ in range(1, L + 1):
                            w = rowB[l - o_] + d * o_
                            v = v + d
                            if w < v:
                                v = w
                            append(v)
                rows[base + co] = row
                states += L + 1

    out: List[float] = []
    for side, r, q, o in tops:
        if abs(q - r) > off:
            out.append(INF)
            continue
        row = rows[(side * RB + r) * W + (q - r + off)]
        out.append(INF if row is None else row[o])
    return out, states


def _sp_lazy(
    run_lets: Tuple[List[int], List[int]],
    run_lens: Tuple[List[int], List[int]],
    dist: Callable[[int, int], float],
    band: int,
    tops: Sequence[Tuple[int, int, int, int]],
) -> Tuple[List[float], int]:
    """Evaluate run-DP states lazily, one (side, r, q) row at a time.

    All offsets of a fixed run pair form a row whose recurrence is a single
    left-to-right scan: extending the active run adds ``d`` per offset,
    while the not-extended option reads a constant-shift slice of one of at
    most three previously finished rows.  Rows are resolved depth-first with
    an explicit work stack (chains can be as long as the run counts), and
    rows outside the band are pinned to infinity wholesale.
    """
    rl0, rl1 = run_lets
    rn0, rn1 = run_lens
    RB = max(len(rn0), len(rn1)) + 1
    lens = (rn0, rn1)
    lets = (rl0, rl1)

    rows: Dict[int, List[float]] = {}
    states = 0
    stack: List[int] = []
    out: List[float] = []

    for side, r, q, o in tops:
        top = (side * RB + r) * RB + q
        stack.append(top)
        while stack:
            rk = stack[-1]
            if rk in rows:
                stack.pop()
                continue
            q_ = rk % RB
            t = rk // RB
            r_ = t % RB
            side_ = t // RB
            other = 1 - side_
            olens = lens[other]
            L = olens[q_ - 1] if q_ >= 1 else 0

            dq = r_ - q_
            if dq > band or -dq > band:
                rows[rk] = [INF] * (L + 1)
                states += L + 1
                stack.pop()
                continue
            if r_ == 0:
                # empty run side: matchable only against an empty portion,
                # i.e. offset 0 of at most one (empty) run
                row = [INF] * (L + 1)
                if q_ <= 1:
                    row[0] = 0.0
                rows[rk] = row
                states += L + 1
                stack.pop()
                continue
            if q_ == 0:
                rows[rk] = [INF]
                states += 1
                stack.pop()
                continue

            slens = lens[side_]
            l = slens[r_ - 1]
            kA = (side_ * RB + (r_ - 1)) * RB + q_
            kB = (other * RB + (q_ - 1)) * RB + r_
            kC = (side_ * RB + r_) * RB + (q_ - 1)
            rowB = rows.get(kB)
            rowC = rows.get(kC)
            rowA = rows.get(kA) if l <= L else None
            missing = False
            if rowB is None:
                stack.append(kB)
                missing = True
            if rowC is None:
                stack.append(kC)
                missing = True
            if l <= L and rowA is None:
                stack.append(kA)
                missing = True
            if missing:
                continue

            # offset 0: the active run of the letter side is empty; drop it
            # and either keep roles (previous run complete) or swap them
            p = olens[q_ - 2] if q_ >= 2 else 0
            v = rowC[p]
            bval = rowB[l]
            if bval < v:
                v = bval
            row = [v]
            if L:
                d = dist(lets[side_][r_ - 1], lets[other][q_ - 1])
                append = row.append
                if l <= L:
                    dl = d * l
                    hi = l - 1 if l - 1 < L else L
                    for o_ in range(1, hi + 1):
                        w = rowB[l - o_] + d * o_
                        v = v + d
                        if w < v:
                            v = w
                        append(v)
                    for o_ in range(hi + 1, L + 1):
                        w = rowA[o_ - l] + dl
                        v = v + d
                        if w < v:
                            v = w
                        append(v)
                else:
                    for o_ in range(1, L + 1):
                        w = rowB[l - o_] + d * o_
                        v = v + d
                        if w < v:
                            v = w
                        append(v)
            rows[rk] = row
            states += L + 1
            stack.pop()
        out.append(rows[top][o])
    return out, states


def _band_width(K: float, delta: float) -> int:
    # States with |r - q| above the band cost more than K: they force at
    # least (|r - q| - 1) / 2 mismatches, each at least delta.
    if not math.isfinite(K):
        raise DomainError("bound must be finite")
    if delta <= 0:
        raise DomainError("smallest nonzero distance must be positive")
    ratio = K / delta
    return 2 * (0 if not math.isfinite(ratio) else math.ceil(ratio)) + 1


def dtw_bounded(
    m: MetricSpace,
    x: Sequence[Letter],
    y: Sequence[Letter],
    K: float,
    *,
    min_gap: Optional[float] = None,
) -> BoundedResult:
    """Compute ``dtw(x, y)`` exactly if it is at most ``K``, else certify it
    exceeds ``K``.

    ``min_gap`` overrides the metric's smallest nonzero distance when the
    caller knows the letters actually present are further apart (narrower
    band, same answers); it must never exceed the true separation.
    """
    if len(x) == 0 and len(y) == 0:
        return BoundedResult(exact=True, value=0.0)
    _require_nonempty(x, y)
    if K < 0:
        raise DomainError("bound must be nonnegative")
    delta = m.min_nonzero_distance if min_gap is None else min_gap
    band = _band_width(K, delta)

    cx, cy, letters = _encode_pair(x, y)
    runs = (_runs_of(cx), _runs_of(cy))
    run_lets = (runs[0][0], runs[1][0])
    run_lens = (runs[0][1], runs[1][1])
    tops = [
        (0, len(run_lens[0]), len(run_lens[1]), run_lens[1][-1]),
        (1, len(run_lens[1]), len(run_lens[0]), run_lens[0][-1]),
    ]
    values, states = _sp_engine(run_lets, run_lens, m, letters, band, tops)
    v = min(values)
    if v <= K:
        return BoundedResult(exact=True, value=v, states=states)
    return BoundedResult(exact=False, value=v, states=states)


def dtw_threshold_or_exceed(
    m: MetricSpace,
    x: Sequence[Letter],
    y: Sequence[Letter],
    threshold: float,
    *,
    min_gap: Optional[float] = None,
) -> BoundedResult:
    """Either the exact distance (when at most ``threshold``) or a
    certificate that it lies above the threshold."""
    if threshold < 0:
        raise DomainError("threshold must be nonnegative")
    return dtw_bounded(m, x, y, threshold, min_gap=min_gap)


def _max_pair_distance_bound(
    m: MetricSpace, x: Sequence[Letter], y: Sequence[Letter]
) -> float:
    md = m.max_distance
    if math.isfinite(md):
        return md
    values: List[float] = []
    for l in chain(x, y):
        if l is NULL and isinstance(m, NullAugmentedMetric) and m.null_origin is not None:
            values.append(m.null_origin)
        elif isinstance(l, (int, float)) and math.isfinite(l):
            values.append(float(l))
        else:
            values = []
            break
    if values:
        return max(values) - min(values)
    distinct = list(dict.fromkeys(chain(x, y)))
    if len(distinct) > 2048:
        raise DomainError("cannot bound pair distances over this many distinct letters")
    return max((m.dist(a, b) for a in distinct for b in distinct), default=0.0)


def dtw_doubling(
    m: MetricSpace,
    x: Sequence[Letter],
    y: Sequence[Letter],
    *,
    counters: Optional[dict] = None,
) -> float:
    """Exact distance by probing the bounded DP with doubling bounds.

    Work across probes telescopes, so the total time is proportional to
    ``n * dtw(x, y)``.  The bound is capped where an exact answer becomes
    guaranteed: no pairing can cost more than (|x|+|y|) times the largest
    pair distance.
    """
    if len(x) == 0 and len(y) == 0:
        return 0.0
    _require_nonempty(x, y)
    delta = m.min_nonzero_distance
    K = max(delta, 1.0) if math.isfinite(delta) else 1.0
    cap = _max_pair_distance_bound(m, x, y) * (len(x) + len(y)) + 1.0
    probes = 0
    states = 0
    while True:
        res = dtw_bounded(m, x, y, K)
        probes += 1
        states += res.states
        if res.exact:
            if counters is not None:
                counters["probes"] = probes
                counters["states"] = states
            return res.value
        if K > cap:
            raise AssertionError("bounded DP exceeded a cap that guarantees exactness")
        K *= 2.0


def subproblem_value(
    m: MetricSpace,
    x: Sequence[Letter],
    y: Sequence[Letter],
    key: SubproblemKey,
    *,
    bound: Optional[float] = None,
    min_gap: Optional[float] = None,
) -> float:
    """Value of a single run-DP state (infinity when unreachable or banded
    away under ``bound``)."""
    _require_nonempty(x, y)
    if key.runs_side not in ("x", "y"):
        raise DomainError("runs_side must be 'x' or 'y'")
    side = 0 if key.runs_side == "x" else 1
    cx, cy, letters = _encode_pair(x, y)
    runs = (_runs_of(cx), _runs_of(cy))
    run_lens = (runs[0][1], runs[1][1])
    rlens = run_lens[side]
    llens = run_lens[1 - side]
    r, q, o = key.run_index, key.letter_run_index, key.offset
    if not (0 <= r <= len(rlens)) or not (0 <= q <= len(llens)):
        raise DomainError("run indices out of range")
    max_o = llens[q - 1] if q >= 1 else 0
    if not (0 <= o <= max_o):
        raise DomainError("offset out of range for the indexed run")
    if bound is None:
        band = len(rlens) + len(llens) + 2
    else:
        delta = m.min_nonzero_distance if min_gap is None else min_gap
        band = _band_width(bound, delta)
    values, _ = _sp_engine(
        (runs[0][0], runs[1][0]), run_lens, m, letters, band, [(side, r, q, o)]
    )
    return values[0]
