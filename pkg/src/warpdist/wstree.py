"""Well-separated tree metrics.

A well-separated tree is a rooted, edge-weighted tree in which every
root-to-leaf path has nonincreasing edge weights.  The distance between two
nodes is the maximum edge weight on the path connecting them, which makes the
heaviest edge near the root dominate every cross-subtree distance.

The module also provides the randomized embedding of a finite set of reals
into such a tree (distances in the tree dominate absolute differences, with
logarithmic expected distortion) and the coarsening operator that replaces
each letter of a string with its highest ancestor reachable through light
edges.

Trees are immutable after construction; all operations here are pure, so
instances can be shared freely across threads.
"""

from __future__ import annotations

import math
import random
import warnings
from bisect import bisect_right
from typing import Dict, Hashable, Iterable, Mapping, Sequence, Tuple

from .errors import DomainError, MetricDefinitionError

Letter = Hashable


class WellSeparatedTree:
    """Rooted tree with positive, downward-nonincreasing edge weights.

    ``parent`` maps every node to its parent (the root maps to itself) and
    ``weight`` gives the weight of each node's parent edge (absent or ignored
    for the root).  Construction validates the shape and the weight ordering;
    a depth much larger than logarithmic is reported as a warning because it
    only degrades running time, never correctness.
    """

    __slots__ = ("_parent", "_weight", "_depth", "_root", "_nodes", "_dcache")

    def __init__(
        self,
        parent: Mapping[Letter, Letter],
        weight: Mapping[Letter, float],
        *,
        depth_constant: float = 4.0,
    ) -> None:
        roots = [n for n, p in parent.items() if p == n]
        if len(roots) != 1:
            raise MetricDefinitionError(f"tree must have exactly one root, found {len(roots)}")
        root = roots[0]

        self._parent: Dict[Letter, Letter] = dict(parent)
        self._weight: Dict[Letter, float] = {}
        self._root = root
        self._nodes: Tuple[Letter, ...] = tuple(self._parent)
        self._dcache: Dict[Tuple[Letter, Letter], float] = {}

        for node, par in self._parent.items():
            if node == root:
                continue
            if par not in self._parent:
                raise MetricDefinitionError(f"parent of {node!r} is not a node")
            w = weight.get(node)
            if w is None or not math.isfinite(w) or w <= 0:
                raise MetricDefinitionError(f"node {node!r} needs a positive finite edge weight")
            self._weight[node] = float(w)

        self._depth = self._compute_depths()

        for node, par in self._parent.items():
            if node == root or par == root:
                continue
            if self._weight[node] > self._weight[par]:
                raise MetricDefinitionError(
                    f"edge weights must not increase away from the root "
                    f"({node!r}: {self._weight[node]} above {par!r}: {self._weight[par]})"
                )

        n = len(self._nodes)
        if n > 1:
            limit = depth_constant * math.log2(n)
            actual = max(self._depth.values())
            if actual > limit:
                warnings.warn(
                    f"tree depth {actual} exceeds {depth_constant}*log2({n}); "
                    "distance queries will be slower than logarithmic",
                    stacklevel=2,
                )

    def _compute_depths(self) -> Dict[Letter, int]:
        depth: Dict[Letter, int] = {self._root: 0}
        for node in self._parent:
            chain = []
            cur = node
            while cur not in depth:
                chain.append(cur)
                cur = self._parent[cur]
                if len(chain) > len(self._parent):
                    raise MetricDefinitionError("parent pointers contain a cycle")
            base = depth[cur]
            for offset, member in enumerate(reversed(chain), start=1):
                depth[member] = base + offset
        return depth

    @property
    def root(self) -> Letter:
        return self._root

    @property
    def nodes(self) -> Tuple[Letter, ...]:
        return self._nodes

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, node: Letter) -> bool:
        return node in self._parent

    def parent_of(self, node: Letter) -> Letter:
        return self._parent[node]

    def edge_weight(self, node: Letter) -> float:
        """Weight of the edge from ``node`` to its parent (root has none)."""
        if node == self._root:
            raise DomainError("root has no parent edge")
        return self._weight[node]

    def depth_of(self, node: Letter) -> int:
        return self._depth[node]

    def min_edge_weight(self) -> float:
        """Smallest edge weight; ``inf`` for a single-node tree."""
        return min(self._weight.values(), default=math.inf)

    def max_edge_weight(self) -> float:
        """Largest edge weight, read off the root's child edges."""
        best = 0.0
        for node, par in self._parent.items():
            if node != self._root and par == self._root:
                best = max(best, self._weight[node])
        return best

    def distance(self, u: Letter, v: Letter) -> float:
        """Maximum edge weight on the u-v path; 0 when ``u == v``.

        Both endpoints climb to their lowest common ancestor tracking the
        heaviest edge seen, so a query costs one walk of the tree depth;
        resolved pairs are memoized on the tree (pure values, shareable).
        """
        if u == v:
            return 0.0
        key = (u, v)
        cached = self._dcache.get(key)
        if cached is not None:
            return cached
        if u not in self._parent or v not in self._parent:
            missing = u if u not in self._parent else v
            raise DomainError(f"{missing!r} is not a node of this tree")
        a, b = u, v
        best = 0.0
        weight = self._weight
        parent = self._parent
        da, db = self._depth[a], self._depth[b]
        while da > db:
            w = weight[a]
            if w > best:
                best = w
            a = parent[a]
            da -= 1
        while db > da:
            w = weight[b]
            if w > best:
                best = w
            b = parent[b]
            db -= 1
        while a != b:
            w = weight[a]
            if w > best:
                best = w
            w = weight[b]
            if w > best:
                best = w
            a = parent[a]
            b = parent[b]
        self._dcache[key] = best
        self._dcache[v, u] = best
        return best


def embed_reals(points: Iterable[float], rng: random.Random) -> WellSeparatedTree:
    """Embed a finite set of reals into a well-separated tree.

    The point set is split by a pivot drawn uniformly from the middle half of
    its range; both halves recurse, and the two subtree roots hang off a fresh
    internal node with edges weighted by the current range.  Input points end
    up as their own nodes and never coincide with the synthetic pivots, so
    tree distances between points always dominate their absolute differences.

    Deterministic for a fixed ``rng`` state.  Raises on empty or non-finite
    input.
    """
    pts = sorted(set(float(p) for p in points))
    if not pts:
        raise DomainError("cannot embed an empty point set")
    for p in pts:
        if not math.isfinite(p):
            raise DomainError(f"non-finite point {p!r}")

    parent: Dict[Letter, Letter] = {}
    weight: Dict[Letter, float] = {}
    counter = 0

    def build(lo: int, hi: int) -> Letter:
        nonlocal counter
        if hi - lo == 1:
            leaf = pts[lo]
            parent.setdefault(leaf, leaf)
            return leaf
        m1, m2 = pts[lo], pts[hi - 1]
        r = m2 - m1
        pivot_value = rng.uniform(m1 + r / 4.0, m2 - r / 4.0)
        pivot = f"~p{counter}"
        counter += 1
        parent[pivot] = pivot
        # Points equal to the pivot value go left; both sides stay nonempty
        # because the pivot lies strictly inside (m1, m2).
        split = bisect_right(pts, pivot_value, lo, hi)
        split = min(max(split, lo + 1), hi - 1)
        left = build(lo, split)
        right = build(split, hi)
        for child in (left, right):
            parent[child] = pivot
            weight[child] = r
        return pivot

    root = build(0, len(pts))
    parent[root] = root
    return WellSeparatedTree(parent, weight)


def simplify_tree(tree: WellSeparatedTree, s: Sequence[Letter], r: float) -> Tuple[Letter, ...]:
    """Coarsen a string: each letter becomes its highest ancestor reachable
    through edges of weight at most ``r / 4``.

    Because edge weights never increase toward the leaves, a greedy climb
    that stops at the first heavy edge finds that ancestor.  The climb is
    memoized per call since strings repeat letters heavily.
    """
    if r < 0:
        raise DomainError("simplification radius must be nonnegative")
    cutoff = r / 4.0
    cache: Dict[Letter, Letter] = {}
    out = []
    root = tree.root
    for letter in s:
        target = cache.get(letter)
        if target is None:
            if letter not in tree:
                raise DomainError(f"{letter!r} is not a node of this tree")
            node = letter
            while node != root and tree.edge_weight(node) <= cutoff:
                node = tree.parent_of(node)
            cache[letter] = target = node
        out.append(target)
    return tuple(out)
