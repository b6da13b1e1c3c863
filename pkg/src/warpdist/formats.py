"""File formats: metric definitions, tree definitions, and string files.

Metric JSON::

    {"kind": "hamming", "alphabet": ["a", "b"], "null": true}
    {"kind": "real", "null": 0.0, "min_nonzero": 1.0}
    {"kind": "table", "alphabet": [...], "distances": [[...]], "null": "<id>"}
    {"kind": "tree", "nodes": [{"id": ..., "parent": ..., "weight": ...}],
     "null": "<id>"}

The optional ``null`` key augments the metric with an empty letter for
edit-distance use: ``true`` (or a number) for hamming gives a unit (or
fixed) insertion cost, a number for real places the empty letter on the
line, and an id for table/tree designates an existing element (which then
disappears from the usable alphabet).  Every loaded finite metric is
validated against the metric axioms; violations abort the load.

String files hold one token per letter, whitespace separated, with the
compact run form ``a*3`` meaning three ``a`` in a row.  Tokens of real-line
strings parse as numbers.
"""

from __future__ import annotations

import json
from typing import Any, Dict, Hashable, List, Tuple, Union

from .errors import MetricDefinitionError, UnknownLetterError
from .metric import (
    HammingMetric,
    MetricSpace,
    NullAugmentedMetric,
    RealLineMetric,
    TableMetric,
    TreeMetric,
    validate_metric,
)
from .wstree import WellSeparatedTree

Letter = Hashable


def tree_from_spec(nodes: List[Dict[str, Any]]) -> WellSeparatedTree:
    parent: Dict[Letter, Letter] = {}
    weight: Dict[Letter, float] = {}
    for entry in nodes:
        if "id" not in entry:
            raise MetricDefinitionError("tree node entries need an 'id'")
        node = entry["id"]
        par = entry.get("parent", node)
        parent[node] = par
        if par != node:
            if "weight" not in entry:
                raise MetricDefinitionError(f"non-root node {node!r} needs a 'weight'")
            weight[node] = float(entry["weight"])
    return WellSeparatedTree(parent, weight)


def tree_to_spec(tree: WellSeparatedTree) -> Dict[str, Any]:
    nodes = []
    for node in tree.nodes:
        if node == tree.root:
            nodes.append({"id": node, "parent": node})
        else:
            nodes.append(
                {"id": node, "parent": tree.parent_of(node), "weight": tree.edge_weight(node)}
            )
    return {"kind": "tree", "nodes": nodes}


def metric_from_spec(spec: Union[str, Dict[str, Any]]) -> MetricSpace:
    """Build a metric from a definition dict or a builtin name.

    Builtin names: ``hamming`` (alphabet inferred later from the strings)
    and ``real``.  Finite metrics are validated; any axiom violation raises.
    """
    if isinstance(spec, str):
        spec = {"kind": spec}
    kind = spec.get("kind")
    null = spec.get("null")

    base: MetricSpace
    if kind == "hamming":
        alphabet = spec.get("alphabet")
        if not alphabet:
            raise MetricDefinitionError("hamming metric needs an 'alphabet'")
        base = HammingMetric(alphabet, unit=float(spec.get("unit", 1.0)))
        if null is not None:
            unit = 1.0 if null is True else float(null)
            base = NullAugmentedMetric(base, unit=unit)
    elif kind == "real":
        base = RealLineMetric(min_nonzero=float(spec.get("min_nonzero", 1.0)))
        if null is not None:
            base = NullAugmentedMetric(base, origin=float(null))
        return base  # unbounded alphabet: nothing to scan
    elif kind == "table":
        if "alphabet" not in spec or "distances" not in spec:
            raise MetricDefinitionError("table metric needs 'alphabet' and 'distances'")
        base = TableMetric(spec["alphabet"], spec["distances"])
        if null is not None:
            base = NullAugmentedMetric(base, member=null)
    elif kind == "tree":
        if "nodes" not in spec:
            raise MetricDefinitionError("tree metric needs 'nodes'")
        base = TreeMetric(tree_from_spec(spec["nodes"]))
        if null is not None:
            base = NullAugmentedMetric(base, member=null)
    else:
        raise MetricDefinitionError(f"unknown metric kind {kind!r}")

    violations = validate_metric(base)
    if violations:
        raise MetricDefinitionError(
            "metric violates the axioms: " + "; ".join(violations[:5])
        )
    return base


def load_metric(path: str) -> MetricSpace:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MetricDefinitionError(f"{path}: not valid JSON ({exc})") from exc
    return metric_from_spec(spec)


def parse_tokens(text: str, *, real: bool = False) -> Tuple[Letter, ...]:
    """Parse a string file: whitespace tokens, ``tok*count`` runs allowed."""
    out: List[Letter] = []
    for token in text.split():
        if "*" in token:
            tok, _, count = token.rpartition("*")
            try:
                reps = int(count)
            except ValueError as exc:
                raise UnknownLetterError(f"bad run count in token {token!r}") from exc
            if reps < 1 or not tok:
                raise UnknownLetterError(f"bad run token {token!r}")
        else:
            tok, reps = token, 1
        letter: Letter = tok
        if real:
            try:
                letter = float(tok)
            except ValueError as exc:
                raise UnknownLetterError(f"token {tok!r} is not a number") from exc
            if letter != letter or letter in (float("inf"), float("-inf")):
                raise UnknownLetterError(f"token {tok!r} is not finite")
        out.extend([letter] * reps)
    return tuple(out)


def load_string(path: str, *, real: bool = False) -> Tuple[Letter, ...]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_tokens(fh.read(), real=real)
