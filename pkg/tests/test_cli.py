import json
import random

import pytest

from warpdist.cli import main
from warpdist.formats import (
    load_metric,
    metric_from_spec,
    parse_tokens,
    tree_from_spec,
    tree_to_spec,
)
from warpdist.gen import random_wstree
from warpdist.metric import NULL, NullAugmentedMetric, TreeMetric


@pytest.fixture
def files(tmp_path):
    def write(name, content):
        path = tmp_path / name
        path.write_text(content)
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip().startswith("{") else out


# --- formats -----------------------------------------------------------------


def test_parse_tokens_plain_and_runs():
    assert parse_tokens("a b a") == ("a", "b", "a")
    assert parse_tokens("a*3 c*2 b*2 d") == tuple("aaaccbbd")
    assert parse_tokens("1 2.5 3", real=True) == (1.0, 2.5, 3.0)


def test_metric_from_spec_variants():
    m = metric_from_spec({"kind": "hamming", "alphabet": ["a", "b"], "null": True})
    assert isinstance(m, NullAugmentedMetric)
    assert m.dist(NULL, "a") == 1.0
    table = metric_from_spec(
        {"kind": "table", "alphabet": ["a", "b"], "distances": [[0, 2], [2, 0]]}
    )
    assert table.dist("a", "b") == 2.0
    with pytest.raises(Exception):
        metric_from_spec({"kind": "table", "alphabet": ["a", "b", "c"],
                          "distances": [[0, 1, 5], [1, 0, 1], [5, 1, 0]]})


def test_tree_spec_roundtrip():
    tree = random_wstree(random.Random(0), 12)
    spec = tree_to_spec(tree)
    back = tree_from_spec(spec["nodes"])
    for u in tree.nodes:
        for v in tree.nodes:
            assert tree.distance(u, v) == back.distance(u, v)


# --- basic distance commands ----------------------------------------------------


def test_dtw_equal_files(files, capsys):
    a = files("a.txt", "a b a")
    b = files("b.txt", "a b a")
    code, report = run(capsys, "dtw", "--metric", "hamming", a, b)
    assert code == 0
    assert report["distance"] == 0.0
    assert report["method"] == "quadratic"


def test_dtw_method_flags(files, capsys):
    a = files("a.txt", "a b")
    b = files("b.txt", "b a")
    code, report = run(capsys, "dtw", "--doubling", a, b)
    assert code == 0 and report["distance"] == 2.0 and report["method"] == "doubling"
    code, report = run(capsys, "dtw", "--bound", "1", a, b)
    assert code == 0 and report["distance"] is None and report["exceeds_bound"]
    code, report = run(capsys, "dtw", "--bound", "2", a, b)
    assert code == 0 and report["distance"] == 2.0
    code, report = run(capsys, "dtw", "--banded", "2", a, b)
    assert code == 0 and report["distance"] == 2.0


def test_dtw_oracle_crosscheck(files, capsys):
    a = files("a.txt", "a b a b")
    b = files("b.txt", "b a b a")
    code, report = run(capsys, "dtw", "--oracle", a, b)
    assert code == 0 and report["oracle_matches"]


def test_ed_via_dtw_agrees_with_ed(files, capsys):
    a = files("a.txt", "a b b c")
    b = files("b.txt", "b c a")
    _, direct = run(capsys, "ed", a, b)
    _, via = run(capsys, "ed-via-dtw", a, b)
    assert direct["distance"] == via["distance"]


def test_ed_via_lcs_and_lcs(files, capsys):
    a = files("a.txt", "a b")
    b = files("b.txt", "b a")
    _, via = run(capsys, "ed-via-lcs", a, b)
    assert via["distance"] == 2
    _, l = run(capsys, "lcs", "--oracle", a, b)
    assert l["length"] == 1 and l["oracle_matches"]


def test_real_metric_strings(files, capsys):
    a = files("a.txt", "0 3.5 7")
    b = files("b.txt", "0 3.5 7")
    code, report = run(capsys, "dtw", "--metric", "real", a, b)
    assert code == 0 and report["distance"] == 0.0


# --- approximation commands -------------------------------------------------------


def test_approx_dtw_tree(files, capsys, tmp_path):
    rng = random.Random(3)
    tree = random_wstree(rng, 16)
    tree_file = files("tree.json", json.dumps(tree_to_spec(tree)))
    x = files("x.txt", " ".join(rng.choice(tree.nodes) for _ in range(64)))
    y = files("y.txt", " ".join(rng.choice(tree.nodes) for _ in range(64)))
    code, report = run(capsys, "approx-dtw", "--tree", tree_file, "--epsilon", "0.5",
                       "--seed", "7", x, y)
    assert code == 0
    assert report["mode"] in ("exact_small", "gap_bracketed")
    assert report["lower"] <= report["estimate"] <= report["upper"] + 1e-9
    assert report["seed"] == 7


def test_approx_dtw_real(files, capsys):
    x = files("x.txt", " ".join(str(v) for v in range(40)))
    y = files("y.txt", " ".join(str(v + 3) for v in range(40)))
    code, report = run(capsys, "approx-dtw", "--real", "--seed", "1", x, y)
    assert code == 0
    assert report["estimate"] >= 0.0
    assert report["counters"]["trials"] >= 1


def test_approx_ed(files, capsys):
    rng = random.Random(5)
    x = files("x.txt", " ".join(str(rng.randint(1, 200)) for _ in range(64)))
    y = files("y.txt", " ".join(str(rng.randint(1, 200)) for _ in range(64)))
    code, report = run(capsys, "approx-ed", "--metric", "real", "--seed", "3",
                       "--epsilon", "0.5", x, y)
    assert code == 0
    assert report["lower"] <= report["estimate"] <= report["upper"] + 1e-9


# --- embed / gen / bench -----------------------------------------------------------


def test_embed_emits_loadable_tree(files, capsys, tmp_path):
    pts = files("p.txt", "0 1 2 4 8 16")
    code, spec = run(capsys, "embed", "--seed", "2", pts)
    assert code == 0 and spec["kind"] == "tree"
    spec.pop("seed")
    spec.pop("elapsed_ns")
    tree_file = tmp_path / "t.json"
    tree_file.write_text(json.dumps(spec))
    metric = load_metric(str(tree_file))
    assert isinstance(metric, TreeMetric)
    for a in (0.0, 1.0, 2.0, 4.0, 8.0, 16.0):
        for b in (0.0, 1.0, 16.0):
            assert metric.dist(a, b) >= abs(a - b)


def test_gen_bundle_feeds_dtw(files, capsys, tmp_path):
    code, bundle = run(capsys, "gen", "--family", "hamming", "--n", "24", "--seed", "9")
    assert code == 0 and bundle["seed"] == 9
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps(bundle))
    dummy = files("d.txt", "a")
    code, report = run(capsys, "dtw", "--instance", str(inst), dummy, dummy)
    assert code == 0 and report["distance"] >= 0.0


def test_gen_deterministic(files, capsys):
    _, one = run(capsys, "gen", "--family", "tree", "--n", "16", "--seed", "4")
    _, two = run(capsys, "gen", "--family", "tree", "--n", "16", "--seed", "4")
    assert one == two


def test_bench_band_adversarial(files, capsys):
    code, report = run(capsys, "bench", "--family", "band-adversarial", "--n", "512")
    assert code == 0
    rows = {row["method"]: row for row in report["rows"]}
    assert rows["doubling"]["value"] == 0.0
    assert rows["quadratic"]["value"] == 0.0
    assert rows["banded"]["value"] >= 1.0  # the heuristic misses the free warp


def test_report_determinism_modulo_elapsed(files, capsys):
    a = files("a.txt", "a b c a")
    b = files("b.txt", "c a b")
    _, r1 = run(capsys, "dtw", a, b)
    _, r2 = run(capsys, "dtw", a, b)
    r1.pop("elapsed_ns")
    r2.pop("elapsed_ns")
    assert r1 == r2


# --- exit codes -----------------------------------------------------------------


def test_exit_code_usage(capsys):
    assert main(["no-such-command"]) == 1
    assert main([]) == 1


def test_seed_env_var_default(files, capsys, monkeypatch):
    monkeypatch.setenv("WARPDIST_SEED", "123")
    _, bundle = run(capsys, "gen", "--family", "hamming", "--n", "8")
    assert bundle["seed"] == 123
    monkeypatch.delenv("WARPDIST_SEED")
    _, bundle = run(capsys, "gen", "--family", "hamming", "--n", "8")
    assert bundle["seed"] == 0


def test_exit_code_validation(files, capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "table", "alphabet": ["a", "b", "c"],
                               "distances": [[0, 1, 5], [1, 0, 1], [5, 1, 0]]}))
    a = files("a.txt", "a b")
    b = files("b.txt", "b a")
    assert main(["dtw", "--metric", str(bad), a, b]) == 2
    capsys.readouterr()
    # unknown letters against a valid file metric
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"kind": "table", "alphabet": ["a", "b"],
                                "distances": [[0, 1], [1, 0]]}))
    c = files("c.txt", "a z")
    assert main(["dtw", "--metric", str(good), a, c]) == 2


def test_exit_code_guard(files, capsys):
    a = files("a.txt", "a " * 20)
    b = files("b.txt", "b " * 20)
    assert main(["dtw", "--oracle", a, b]) == 3
    capsys.readouterr()
    empty = files("e.txt", "")
    assert main(["dtw", a, empty]) == 3
