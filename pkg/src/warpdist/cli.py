"""Command-line front end.

Subcommands: ``dtw``, ``ed``, ``lcs``, ``ed-via-dtw``, ``ed-via-lcs``,
``approx-dtw``, ``approx-ed``, ``embed``, ``gen``, ``bench``.  Machine-readable
JSON goes to stdout (``--pretty`` for a human layout); diagnostics go to
stderr.  Exit codes: 0 success, 1 usage, 2 input or metric validation
failure, 3 guard or precondition violation.

Seeds default to the ``WARPDIST_SEED`` environment variable (else 0) and are
always echoed in the report, so identical seed and inputs reproduce every
field except ``elapsed_ns``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Any, Dict, Hashable, List, Optional, Sequence, Tuple

from . import gen as genmod
from .dtw import dtw_banded, dtw_bounded, dtw_doubling, dtw_quadratic
from .dtw_approx import dtw_approx_reals, dtw_approximate
from .edit_approx import ed_approximate
from .errors import DomainError, GuardError, MetricDefinitionError, UnknownLetterError
from .formats import load_metric, load_string, metric_from_spec, tree_to_spec
from .metric import (
    HammingMetric,
    MetricSpace,
    NullAugmentedMetric,
    RealLineMetric,
    TreeMetric,
)
from .oracles import dtw_bruteforce, ed_bruteforce, lcs_bruteforce
from .reductions import ed_general, ed_via_dtw, ed_via_lcs, lcs
from .seeding import derive_rng
from .wstree import embed_reals

Letter = Hashable


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _default_seed() -> int:
    try:
        return int(os.environ.get("WARPDIST_SEED", "0"))
    except ValueError:
        return 0


def _emit(report: Dict[str, Any], pretty: bool) -> None:
    if pretty:
        for key, value in report.items():
            if key == "rows" and isinstance(value, list):
                print("rows:")
                for row in value:
                    print("  " + "  ".join(f"{k}={v}" for k, v in row.items()))
            else:
                print(f"{key}: {value}")
    else:
        print(json.dumps(report))


def _coerce_letters(m: MetricSpace, letters: Sequence[Letter]) -> Tuple[Letter, ...]:
    """Map raw string tokens onto the metric's alphabet (numeric ids allowed)."""
    out: List[Letter] = []
    for token in letters:
        if m.contains(token):
            out.append(token)
            continue
        if isinstance(token, str):
            try:
                num = float(token)
            except ValueError:
                num = None
            if num is not None and m.contains(num):
                out.append(num)
                continue
        raise UnknownLetterError(f"letter {token!r} is not in the metric's alphabet")
    return tuple(out)


def _resolve_metric(name: str, *strings: Sequence[Letter]) -> MetricSpace:
    if name == "hamming":
        alphabet = list(dict.fromkeys(l for s in strings for l in s))
        return HammingMetric(alphabet if alphabet else ["a"])
    if name == "real":
        return RealLineMetric()
    return load_metric(name)


def _ensure_null(m: MetricSpace) -> NullAugmentedMetric:
    """Edit commands need an empty letter; plain metrics get the usual one."""
    if isinstance(m, NullAugmentedMetric):
        return m
    if isinstance(m, HammingMetric):
        return NullAugmentedMetric(m, unit=m.unit)
    if isinstance(m, RealLineMetric):
        return NullAugmentedMetric(m, origin=0.0)
    raise MetricDefinitionError(
        "this metric has no null element; add one in the metric file"
    )


def _load_pair(args) -> Tuple[MetricSpace, Tuple[Letter, ...], Tuple[Letter, ...]]:
    if getattr(args, "instance", None):
        with open(args.instance, "r", encoding="utf-8") as fh:
            bundle = json.load(fh)
        metric = metric_from_spec(bundle["metric"])
        x = _coerce_letters(metric, bundle["x"])
        y = _coerce_letters(metric, bundle["y"])
        return metric, x, y
    real_tokens = args.metric == "real"
    x = load_string(args.x, real=real_tokens)
    y = load_string(args.y, real=real_tokens)
    metric = _resolve_metric(args.metric, x, y)
    if args.metric not in ("hamming", "real"):
        x = _coerce_letters(metric, x)
        y = _coerce_letters(metric, y)
    return metric, x, y


def _timed(fn, *args, **kwargs) -> Tuple[Any, int]:
    t0 = time.perf_counter_ns()
    value = fn(*args, **kwargs)
    return value, time.perf_counter_ns() - t0


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_dtw(args) -> Dict[str, Any]:
    m, x, y = _load_pair(args)
    report: Dict[str, Any] = {
        "command": "dtw",
        "sizes": {"x": len(x), "y": len(y)},
    }
    if args.bound is not None:
        res, ns = _timed(dtw_bounded, m, x, y, args.bound)
        report["method"] = "bounded"
        report["bound"] = args.bound
        report["distance"] = res.value if res.exact else None
        report["exceeds_bound"] = not res.exact
        report["counters"] = {"states": res.states}
    elif args.banded is not None:
        value, ns = _timed(dtw_banded, m, x, y, args.banded)
        report["method"] = "banded"
        report["band"] = args.banded
        report["distance"] = value if value != float("inf") else None
    else:
        use_doubling = args.doubling or max(len(x), len(y)) >= 4096
        counters: Dict[str, int] = {}
        if use_doubling:
            value, ns = _timed(dtw_doubling, m, x, y, counters=counters)
            report["method"] = "doubling"
            report["counters"] = counters
        else:
            value, ns = _timed(dtw_quadratic, m, x, y)
            report["method"] = "quadratic"
        report["distance"] = value
    if args.oracle:
        oracle = dtw_bruteforce(m, x, y)
        report["oracle"] = oracle
        report["oracle_matches"] = report.get("distance") == oracle
    report["elapsed_ns"] = ns
    return report


def _cmd_ed(args) -> Dict[str, Any]:
    m, x, y = _load_pair(args)
    nm = _ensure_null(m)
    value, ns = _timed(ed_general, nm, x, y)
    report = {
        "command": "ed",
        "sizes": {"x": len(x), "y": len(y)},
        "method": "weighted-dp",
        "distance": value,
    }
    if args.oracle:
        oracle = ed_bruteforce(nm, x, y)
        report["oracle"] = oracle
        report["oracle_matches"] = value == oracle
    report["elapsed_ns"] = ns
    return report


def _cmd_ed_via_dtw(args) -> Dict[str, Any]:
    m, x, y = _load_pair(args)
    nm = _ensure_null(m)
    value, ns = _timed(ed_via_dtw, nm, x, y)
    return {
        "command": "ed-via-dtw",
        "sizes": {"x": len(x), "y": len(y)},
        "method": "padded-dtw",
        "distance": value,
        "elapsed_ns": ns,
    }


def _cmd_ed_via_lcs(args) -> Dict[str, Any]:
    x = load_string(args.x)
    y = load_string(args.y)
    value, ns = _timed(ed_via_lcs, x, y)
    return {
        "command": "ed-via-lcs",
        "sizes": {"x": len(x), "y": len(y)},
        "method": "padded-lcs",
        "distance": value,
        "elapsed_ns": ns,
    }


def _cmd_lcs(args) -> Dict[str, Any]:
    x = load_string(args.x)
    y = load_string(args.y)
    value, ns = _timed(lcs, x, y)
    report = {
        "command": "lcs",
        "sizes": {"x": len(x), "y": len(y)},
        "method": "quadratic-dp",
        "length": value,
    }
    if args.oracle:
        oracle = lcs_bruteforce(x, y)
        report["oracle"] = oracle
        report["oracle_matches"] = value == oracle
    report["elapsed_ns"] = ns
    return report


def _cmd_approx_dtw(args) -> Dict[str, Any]:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.tree is None and not args.real:
        raise _UsageError("approx-dtw needs --tree FILE or --real")
    if args.real:
        x = load_string(args.x, real=True)
        y = load_string(args.y, real=True)
        counters: Dict[str, int] = {}
        value, ns = _timed(
            dtw_approx_reals, x, y, args.epsilon, seed, args.trials, counters=counters
        )
        return {
            "command": "approx-dtw",
            "sizes": {"x": len(x), "y": len(y)},
            "method": "real-embeddings",
            "epsilon": args.epsilon,
            "estimate": value,
            "seed": seed,
            "counters": counters,
            "elapsed_ns": ns,
        }
    metric = load_metric(args.tree)
    if not isinstance(metric, TreeMetric):
        raise MetricDefinitionError("--tree expects a tree metric file")
    x = _coerce_letters(metric, load_string(args.x))
    y = _coerce_letters(metric, load_string(args.y))
    est, ns = _timed(dtw_approximate, metric.tree, x, y, args.epsilon)
    return {
        "command": "approx-dtw",
        "sizes": {"x": len(x), "y": len(y)},
        "method": "tree-gap-search",
        "epsilon": args.epsilon,
        "estimate": est.estimate,
        "lower": est.lower,
        "upper": est.upper,
        "mode": est.mode,
        "gap_calls": est.gap_calls,
        "seed": seed,
        "elapsed_ns": ns,
    }


def _cmd_approx_ed(args) -> Dict[str, Any]:
    seed = args.seed if args.seed is not None else _default_seed()
    metric = _resolve_metric(args.metric) if args.metric else None
    real_tokens = args.metric == "real"
    x = load_string(args.x, real=real_tokens)
    y = load_string(args.y, real=real_tokens)
    if metric is None:
        raise _UsageError("approx-ed needs --metric")
    if args.metric == "hamming":
        metric = _resolve_metric("hamming", x, y)
    nm = _ensure_null(metric)
    if args.metric not in ("hamming", "real"):
        x = _coerce_letters(nm, x)
        y = _coerce_letters(nm, y)
    est, ns = _timed(ed_approximate, nm, x, y, args.epsilon, seed)
    return {
        "command": "approx-ed",
        "sizes": {"x": len(x), "y": len(y)},
        "method": "magnitude-gap-search",
        "epsilon": args.epsilon,
        "estimate": est.estimate,
        "lower": est.lower,
        "upper": est.upper,
        "mode": est.mode,
        "gap_calls": est.gap_calls,
        "samples": est.samples,
        "seed": seed,
        "elapsed_ns": ns,
    }


def _cmd_embed(args) -> Dict[str, Any]:
    import random

    seed = args.seed if args.seed is not None else _default_seed()
    points = load_string(args.points, real=True)
    tree, ns = _timed(embed_reals, points, random.Random(seed))
    spec = tree_to_spec(tree)
    spec["seed"] = seed
    spec["elapsed_ns"] = ns
    return spec


def _cmd_gen(args) -> Dict[str, Any]:
    import random

    seed = args.seed if args.seed is not None else _default_seed()
    rng = random.Random(seed)
    n = args.n
    family = args.family
    if family == "band-adversarial":
        metric, x, y = genmod.band_adversarial(n)
        metric_spec: Any = {"kind": "hamming", "alphabet": ["a", "b"]}
    elif family == "hamming":
        alpha = genmod.hamming_alphabet(args.alphabet_size)
        metric_spec = {"kind": "hamming", "alphabet": list(alpha)}
        x, y = genmod.low_distance_pair(rng, alpha, n, args.edits)
    elif family == "real":
        metric_spec = {"kind": "real"}
        x = genmod.random_real_string(rng, n)
        y = genmod.random_real_string(rng, n)
    elif family == "tree":
        tree = genmod.random_wstree(rng, args.alphabet_size)
        metric_spec = tree_to_spec(tree)
        x = genmod.random_string(rng, tree.nodes, n)
        y = genmod.random_string(rng, tree.nodes, n)
    else:
        raise _UsageError(f"unknown family {family!r}")
    return {
        "command": "gen",
        "family": family,
        "seed": seed,
        "metric": metric_spec,
        "x": list(x),
        "y": list(y),
    }


def _cmd_bench(args) -> Dict[str, Any]:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.sizes:
        sizes = [int(tok) for tok in args.sizes.split(",")]
    else:
        sizes = [args.n]
    rows: List[Dict[str, Any]] = []
    for n in sizes:
        if args.family == "band-adversarial":
            metric, x, y = genmod.band_adversarial(n)
        elif args.family == "low-distance":
            rng = derive_rng(seed, n)
            alpha = genmod.hamming_alphabet(4)
            metric = HammingMetric(alpha)
            x, y = genmod.low_distance_pair(rng, alpha, n, args.edits)
        else:
            raise _UsageError(f"unknown bench family {args.family!r}")
        counters: Dict[str, int] = {}
        value, ns = _timed(dtw_doubling, metric, x, y, counters=counters)
        rows.append(
            {"n": n, "method": "doubling", "value": value, "elapsed_ns": ns, **counters}
        )
        if max(len(x), len(y)) <= 131072:
            qvalue, qns = _timed(dtw_quadratic, metric, x, y)
            rows.append({"n": n, "method": "quadratic", "value": qvalue, "elapsed_ns": qns})
        bvalue, bns = _timed(dtw_banded, metric, x, y, args.band)
        rows.append(
            {
                "n": n,
                "method": "banded",
                "band": args.band,
                "value": None if bvalue == float("inf") else bvalue,
                "elapsed_ns": bns,
            }
        )
    return {"command": "bench", "family": args.family, "seed": seed, "rows": rows}


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_pair_arguments(sub: argparse.ArgumentParser, *, metric: bool = True) -> None:
    sub.add_argument("x", help="first string file")
    sub.add_argument("y", help="second string file")
    if metric:
        sub.add_argument(
            "--metric",
            default="hamming",
            help="metric: 'hamming', 'real', or a metric JSON file",
        )
        sub.add_argument("--instance", help="instance bundle JSON (overrides x/y/--metric)")


def _add_pretty(sub: argparse.ArgumentParser) -> None:
    # SUPPRESS keeps a subcommand-level flag from clobbering the global one
    sub.add_argument(
        "--pretty", action="store_true", default=argparse.SUPPRESS,
        help="human-readable output",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="warpdist", description=__doc__)
    parser.add_argument("--pretty", action="store_true", help="human-readable output")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("dtw", help="exact dynamic time warping distance")
    _add_pair_arguments(p)
    p.add_argument("--bound", type=float, help="bounded method: exact if at most K")
    p.add_argument("--doubling", action="store_true", help="force the doubling method")
    p.add_argument("--banded", type=int, help="Sakoe-Chiba band heuristic with parameter K")
    p.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    _add_pretty(p)
    p.set_defaults(func=_cmd_dtw)

    p = subs.add_parser("ed", help="weighted edit distance")
    _add_pair_arguments(p)
    p.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    _add_pretty(p)
    p.set_defaults(func=_cmd_ed)

    p = subs.add_parser("ed-via-dtw", help="edit distance through the padded warping identity")
    _add_pair_arguments(p)
    _add_pretty(p)
    p.set_defaults(func=_cmd_ed_via_dtw)

    p = subs.add_parser("ed-via-lcs", help="unit-cost edit distance through padded LCS")
    _add_pair_arguments(p, metric=False)
    _add_pretty(p)
    p.set_defaults(func=_cmd_ed_via_lcs)

    p = subs.add_parser("lcs", help="longest common subsequence length")
    _add_pair_arguments(p, metric=False)
    p.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    _add_pretty(p)
    p.set_defaults(func=_cmd_lcs)

    p = subs.add_parser("approx-dtw", help="polynomial-factor DTW approximation")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int, help="embedding trials (real mode)")
    p.add_argument("--tree", help="well-separated tree metric JSON file")
    p.add_argument("--real", action="store_true", help="treat strings as reals")
    _add_pretty(p)
    p.set_defaults(func=_cmd_approx_dtw)

    p = subs.add_parser("approx-ed", help="polynomial-factor edit-distance approximation")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--seed", type=int)
    p.add_argument("--metric", required=False, help="'hamming', 'real', or metric JSON file")
    _add_pretty(p)
    p.set_defaults(func=_cmd_approx_ed)

    p = subs.add_parser("embed", help="embed reals into a well-separated tree")
    p.add_argument("points", help="file of real-valued tokens")
    p.add_argument("--seed", type=int)
    _add_pretty(p)
    p.set_defaults(func=_cmd_embed)

    p = subs.add_parser("gen", help="generate a seeded random instance bundle")
    p.add_argument("--family", default="hamming",
                   choices=["hamming", "real", "tree", "band-adversarial"])
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--seed", type=int)
    p.add_argument("--alphabet-size", type=int, default=4)
    p.add_argument("--edits", type=int, default=4)
    _add_pretty(p)
    p.set_defaults(func=_cmd_gen)

    p = subs.add_parser("bench", help="timing sweeps over instance families")
    p.add_argument("--family", default="band-adversarial",
                   choices=["band-adversarial", "low-distance"])
    p.add_argument("--n", type=int, default=4096)
    p.add_argument("--sizes", help="comma-separated sizes (overrides --n)")
    p.add_argument("--seed", type=int)
    p.add_argument("--band", type=int, default=8)
    p.add_argument("--edits", type=int, default=4)
    _add_pretty(p)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help
        return 0 if not exc.code else 1
    try:
        report = args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (MetricDefinitionError, UnknownLetterError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, GuardError) as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    _emit(report, args.pretty)
    return 0
