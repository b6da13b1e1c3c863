"""Metric spaces over string alphabets.

Strings are plain sequences of hashable letters.  A metric space supplies the
pairwise letter distance together with two bounds the distance engines rely
on: the smallest nonzero distance (which scales dynamic-programming band
widths) and the largest distance (which caps doubling searches).

Variants: generalized Hamming (distinct letters at a unit distance), the real
line, arbitrary validated distance tables, well-separated tree metrics, and a
null-augmented wrapper that adds an empty letter whose distance to ``l`` is
the insertion/deletion cost of ``l``.

Costs are 64-bit floats throughout, with ``math.inf`` as the saturating
"no solution" sentinel (absorbing under addition, comparable everywhere).
Metrics whose distances are all integers report ``integral = True``, which
the tests use to switch to exact equality: integer-valued float sums stay
exact far beyond any length handled here.

All metric objects are immutable after construction; ``dist`` is pure, so
instances can be shared between concurrent computations.
"""

from __future__ import annotations

import math
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .errors import DomainError, MetricDefinitionError, UnknownLetterError
from .wstree import WellSeparatedTree

Letter = Hashable
Str = Sequence


class _NullLetter:
    """Singleton empty letter used by edit-distance costs."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "NULL"


NULL: Letter = _NullLetter()


class MetricSpace:
    """Interface shared by all metric variants."""

    def dist(self, a: Letter, b: Letter) -> float:
        raise NotImplementedError

    @property
    def alphabet(self) -> Optional[Tuple[Letter, ...]]:
        """Finite alphabet, or ``None`` when the letter set is unbounded."""
        return None

    @property
    def min_nonzero_distance(self) -> float:
        raise NotImplementedError

    @property
    def max_distance(self) -> float:
        raise NotImplementedError

    @property
    def integral(self) -> bool:
        """True when every distance is an exact integer (enables exact asserts)."""
        return False

    def contains(self, letter: Letter) -> bool:
        raise NotImplementedError

    def _require(self, letter: Letter) -> None:
        if not self.contains(letter):
            raise UnknownLetterError(f"letter {letter!r} is not in this alphabet")


class HammingMetric(MetricSpace):
    """Distinct letters sit at a fixed unit distance; equal letters at zero."""

    def __init__(self, alphabet: Iterable[Letter], unit: float = 1.0) -> None:
        letters = tuple(dict.fromkeys(alphabet))
        if not letters:
            raise MetricDefinitionError("alphabet must be nonempty")
        if not math.isfinite(unit) or unit <= 0:
            raise MetricDefinitionError("unit distance must be positive and finite")
        self._letters = letters
        self._set = frozenset(letters)
        self._unit = float(unit)

    @property
    def unit(self) -> float:
        return self._unit

    @property
    def alphabet(self) -> Tuple[Letter, ...]:
        return self._letters

    @property
    def min_nonzero_distance(self) -> float:
        return self._unit if len(self._letters) > 1 else math.inf

    @property
    def max_distance(self) -> float:
        return self._unit if len(self._letters) > 1 else 0.0

    @property
    def integral(self) -> bool:
        return float(self._unit).is_integer()

    def contains(self, letter: Letter) -> bool:
        return letter in self._set

    def dist(self, a: Letter, b: Letter) -> float:
        self._require(a)
        self._require(b)
        return 0.0 if a == b else self._unit


class RealLineMetric(MetricSpace):
    """Letters are finite reals; distance is the absolute difference.

    The letter set is unbounded, so callers that need a smallest nonzero
    distance declare one up front (default 1.0, matching integer-valued
    inputs).  NaN and infinite letters are rejected.
    """

    def __init__(self, min_nonzero: float = 1.0) -> None:
        if not math.isfinite(min_nonzero) or min_nonzero <= 0:
            raise MetricDefinitionError("min_nonzero must be positive and finite")
        self._min_nonzero = float(min_nonzero)

    @property
    def min_nonzero_distance(self) -> float:
        return self._min_nonzero

    @property
    def max_distance(self) -> float:
        return math.inf

    def contains(self, letter: Letter) -> bool:
        return isinstance(letter, (int, float)) and math.isfinite(letter)

    def dist(self, a: Letter, b: Letter) -> float:
        self._require(a)
        self._require(b)
        return abs(float(a) - float(b))


class TableMetric(MetricSpace):
    """Arbitrary finite metric given by an explicit distance table.

    The constructor checks shape, symmetry, the zero diagonal and
    nonnegativity; the cubic triangle-inequality scan lives in
    :func:`validate_metric` so that deliberately broken tables can be built
    and inspected.
    """

    def __init__(self, alphabet: Sequence[Letter], distances: Sequence[Sequence[float]]) -> None:
        letters = tuple(alphabet)
        if not letters:
            raise MetricDefinitionError("alphabet must be nonempty")
        if len(set(letters)) != len(letters):
            raise MetricDefinitionError("alphabet letters must be distinct")
        n = len(letters)
        if len(distances) != n or any(len(row) != n for row in distances):
            raise MetricDefinitionError(f"distance table must be {n}x{n}")
        table = [[float(v) for v in row] for row in distances]
        for i in range(n):
            if table[i][i] != 0.0:
                raise MetricDefinitionError(f"d({letters[i]!r},{letters[i]!r}) must be 0")
            for j in range(n):
                v = table[i][j]
                if not math.isfinite(v) or v < 0:
                    raise MetricDefinitionError("distances must be finite and nonnegative")
                if v != table[j][i]:
                    raise MetricDefinitionError("distance table must be symmetric")
                if i != j and v == 0.0:
                    raise MetricDefinitionError(
                        f"distinct letters {letters[i]!r},{letters[j]!r} at distance 0"
                    )
        self._letters = letters
        self._index = {l: i for i, l in enumerate(letters)}
        self._table = table
        off_diagonal = [table[i][j] for i in range(n) for j in range(n) if i != j]
        self._min_nonzero = min(off_diagonal, default=math.inf)
        self._max = max(off_diagonal, default=0.0)

    @property
    def alphabet(self) -> Tuple[Letter, ...]:
        return self._letters

    @property
    def min_nonzero_distance(self) -> float:
        return self._min_nonzero

    @property
    def max_distance(self) -> float:
        return self._max

    @property
    def integral(self) -> bool:
        return all(v.is_integer() for row in self._table for v in row)

    def contains(self, letter: Letter) -> bool:
        return letter in self._index

    def dist(self, a: Letter, b: Letter) -> float:
        ia = self._index.get(a)
        ib = self._index.get(b)
        if ia is None or ib is None:
            missing = a if ia is None else b
            raise UnknownLetterError(f"letter {missing!r} is not in this alphabet")
        return self._table[ia][ib]


class TreeMetric(MetricSpace):
    """Metric induced by a well-separated tree: max edge weight on the path.

    Distance queries are memoized on the underlying tree, so repeated pairs
    are cheap no matter how many metric views wrap the same tree.
    """

    def __init__(self, tree: WellSeparatedTree) -> None:
        self._tree = tree

    @property
    def tree(self) -> WellSeparatedTree:
        return self._tree

    @property
    def alphabet(self) -> Tuple[Letter, ...]:
        return self._tree.nodes

    @property
    def min_nonzero_distance(self) -> float:
        return self._tree.min_edge_weight()

    @property
    def max_distance(self) -> float:
        return self._tree.max_edge_weight()

    @property
    def integral(self) -> bool:
        weights = [self._tree.edge_weight(n) for n in self._tree.nodes if n != self._tree.root]
        return all(float(w).is_integer() for w in weights)

    def contains(self, letter: Letter) -> bool:
        return letter in self._tree

    def dist(self, a: Letter, b: Letter) -> float:
        if a not in self._tree or b not in self._tree:
            missing = a if a not in self._tree else b
            raise UnknownLetterError(f"letter {missing!r} is not a tree node")
        return self._tree.distance(a, b)


class NullAugmentedMetric(MetricSpace):
    """Wraps an inner metric with an empty letter ``NULL``.

    ``dist(NULL, l)`` is the magnitude of ``l`` (its insertion/deletion
    cost), provided by exactly one of three modes:

    * ``unit=c``     -- every letter has magnitude ``c`` (Hamming-style costs);
    * ``origin=v``   -- real-line inner metric, magnitude ``|l - v|``;
    * ``member=m``   -- ``NULL`` is identified with an existing inner letter
      ``m`` (table or tree metrics); ``m`` is removed from the usable
      alphabet.

    ``require_unit_magnitudes=True`` additionally enforces magnitude >= 1 for
    every non-null letter, the assumption under which the randomized edit
    approximation operates; it is checked by :func:`validate_metric`.
    """

    def __init__(
        self,
        inner: MetricSpace,
        *,
        unit: Optional[float] = None,
        origin: Optional[float] = None,
        member: Optional[Letter] = None,
        require_unit_magnitudes: bool = False,
    ) -> None:
        modes = sum(v is not None for v in (unit, origin, member))
        if modes != 1:
            raise MetricDefinitionError("exactly one of unit/origin/member must be given")
        if unit is not None and (not math.isfinite(unit) or unit <= 0):
            raise MetricDefinitionError("unit magnitude must be positive and finite")
        if origin is not None:
            if not isinstance(inner, RealLineMetric):
                raise MetricDefinitionError("origin mode requires a real-line inner metric")
            if not math.isfinite(origin):
                raise MetricDefinitionError("origin must be finite")
        if member is not None:
            if inner.alphabet is None or member not in inner.alphabet:
                raise MetricDefinitionError(f"null member {member!r} is not an inner letter")
        self._inner = inner
        self._unit = None if unit is None else float(unit)
        self._origin = None if origin is None else float(origin)
        self._member = member
        self.require_unit_magnitudes = bool(require_unit_magnitudes)

    @property
    def inner(self) -> MetricSpace:
        return self._inner

    @property
    def null_origin(self) -> Optional[float]:
        return self._origin

    @property
    def alphabet(self) -> Optional[Tuple[Letter, ...]]:
        base = self._inner.alphabet
        if base is None:
            return None
        usable = tuple(l for l in base if l != self._member)
        return usable + (NULL,)

    def magnitude_of(self, letter: Letter) -> float:
        if letter is NULL:
            return 0.0
        self._inner._require(letter)
        if self._unit is not None:
            return self._unit
        if self._origin is not None:
            return abs(float(letter) - self._origin)
        return self._inner.dist(self._member, letter)

    @property
    def min_nonzero_distance(self) -> float:
        candidates = [self._inner.min_nonzero_distance]
        if self._unit is not None:
            candidates.append(self._unit)
        elif self._member is not None:
            assert self._inner.alphabet is not None
            mags = [self.magnitude_of(l) for l in self._inner.alphabet if l != self._member]
            candidates.extend(m for m in mags if m > 0)
        # origin mode inherits the declared real-line resolution
        return min(candidates)

    @property
    def max_distance(self) -> float:
        if isinstance(self._inner, RealLineMetric):
            return math.inf
        assert self._inner.alphabet is not None
        mags = [self.magnitude_of(l) for l in self._inner.alphabet if l != self._member]
        return max([self._inner.max_distance] + mags, default=0.0)

    @property
    def integral(self) -> bool:
        if not self._inner.integral:
            return False
        if self._unit is not None:
            return self._unit.is_integer()
        if self._member is not None:
            return True
        return False

    def contains(self, letter: Letter) -> bool:
        if letter is NULL:
            return True
        if letter == self._member:
            return False
        return self._inner.contains(letter)

    def dist(self, a: Letter, b: Letter) -> float:
        if a is NULL:
            return self.magnitude_of(b)
        if b is NULL:
            return self.magnitude_of(a)
        self._require(a)
        self._require(b)
        return self._inner.dist(a, b)


def magnitude(m: NullAugmentedMetric, letter: Letter) -> float:
    """Magnitude of a letter: its distance from the empty letter."""
    if not isinstance(m, NullAugmentedMetric):
        raise DomainError("magnitude is only defined for null-augmented metrics")
    return m.magnitude_of(letter)


def validate_metric(
    m: MetricSpace,
    sample: Optional[Sequence[Letter]] = None,
) -> List[str]:
    """Exhaustively check the metric axioms; return violations as data.

    Finite variants are scanned over their whole alphabet; unbounded ones
    (the real line) require an explicit ``sample``.  The scan covers the
    identity of indiscernibles, symmetry, nonnegativity, the triangle
    inequality on all triples, the declared distance bounds, and (when
    requested) the unit-magnitude floor of a null-augmented metric.
    """
    letters: Sequence[Letter]
    if m.alphabet is not None:
        letters = m.alphabet
    elif sample is not None:
        letters = list(dict.fromkeys(sample))
    else:
        raise DomainError("an unbounded metric needs a sample of letters to validate")

    violations: List[str] = []
    n = len(letters)
    d: Dict[Tuple[int, int], float] = {}
    for i in range(n):
        for j in range(i, n):
            v = m.dist(letters[i], letters[j])
            d[i, j] = d[j, i] = v

    for i in range(n):
        if d[i, i] != 0.0:
            violations.append(f"identity: d({letters[i]!r},{letters[i]!r}) = {d[i, i]}")
        for j in range(i + 1, n):
            v = d[i, j]
            back = m.dist(letters[j], letters[i])
            if v < 0:
                violations.append(f"negative: d({letters[i]!r},{letters[j]!r}) = {v}")
            if back != v:
                violations.append(f"asymmetry: d({letters[i]!r},{letters[j]!r}) != reverse")
            if letters[i] != letters[j] and v == 0.0:
                violations.append(
                    f"indiscernible: distinct {letters[i]!r},{letters[j]!r} at distance 0"
                )

    for i in range(n):
        for j in range(n):
            for k in range(n):
                if d[i, k] > d[i, j] + d[j, k] + 1e-12:
                    violations.append(
                        f"triangle: d({letters[i]!r},{letters[k]!r}) = {d[i, k]} > "
                        f"{d[i, j]} + {d[j, k]} via {letters[j]!r}"
                    )

    lo, hi = m.min_nonzero_distance, m.max_distance
    for (i, j), v in d.items():
        if i < j:
            if 0 < v < lo:
                violations.append(f"bound: nonzero d({letters[i]!r},{letters[j]!r}) = {v} < {lo}")
            if v > hi:
                violations.append(f"bound: d({letters[i]!r},{letters[j]!r}) = {v} > {hi}")

    if isinstance(m, NullAugmentedMetric) and m.require_unit_magnitudes:
        for l in letters:
            if l is not NULL and m.magnitude_of(l) < 1.0:
                violations.append(f"magnitude floor: |{l!r}| = {m.magnitude_of(l)} < 1")

    return violations
