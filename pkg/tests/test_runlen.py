import pytest
from hypothesis import given
from hypothesis import strategies as st

from warpdist.dtw import dtw_quadratic
from warpdist.errors import DomainError
from warpdist.metric import HammingMetric
from warpdist.runlen import (
    correspondence_cost,
    encode_runs,
    is_expansion,
    validate_correspondence,
)

HAMMING = HammingMetric("abcdef")

letters = st.sampled_from("abc")
small_strings = st.lists(letters, min_size=0, max_size=12).map(tuple)


@pytest.mark.parametrize(
    "s, expected",
    [
        ("aaaccbbd", [("a", 3), ("c", 2), ("b", 2), ("d", 1)]),
        ("", []),
        ("abab", [("a", 1), ("b", 1), ("a", 1), ("b", 1)]),
    ],
)
def test_encode_runs(s, expected):
    enc = encode_runs(tuple(s))
    assert list(enc.runs) == expected


def test_prefix_lengths_strictly_increase():
    enc = encode_runs(tuple("aaaccbbd"))
    assert list(enc.prefix_lengths) == [3, 5, 7, 8]


@given(small_strings)
def test_encode_decode_roundtrip(s):
    enc = encode_runs(s)
    assert enc.decode() == s
    assert all(a[0] != b[0] for a, b in zip(enc.runs, enc.runs[1:]))
    assert sum(length for _, length in enc.runs) == len(s)


@pytest.mark.parametrize(
    "base, candidate, expected",
    [
        ("aaaccbbd", "aaacccccbbdd", True),
        ("abc", "abc", True),
        ("ab", "ba", False),
        ("", "", True),
        ("", "a", False),
        ("ab", "aabb", True),
        ("ab", "aacbb", False),
    ],
)
def test_is_expansion(base, candidate, expected):
    assert is_expansion(tuple(base), tuple(candidate)) is expected


@given(small_strings)
def test_every_string_expands_itself(s):
    assert is_expansion(s, s)


def test_cost_of_identity_pairing_is_zero():
    s = tuple("abca")
    path = [(i, i) for i in range(len(s))]
    assert correspondence_cost(HAMMING, s, s, path) == 0.0


def test_cost_of_diagonal_mismatch():
    assert correspondence_cost(HAMMING, tuple("ab"), tuple("ba"), [(0, 0), (1, 1)]) == 2.0


def test_cost_of_worked_warping_path():
    # pairing of efabbcccc / ffaabcc realised as the expansions
    # e f a a b b c c c c
    # f f a a b b b b c c
    x = tuple("efabbcccc")
    y = tuple("ffaabcc")
    path = [(0, 0), (1, 1), (2, 2), (2, 3), (3, 4), (4, 4), (5, 4), (6, 4), (7, 5), (8, 6)]
    assert correspondence_cost(HAMMING, x, y, path) == 3.0


@pytest.mark.parametrize(
    "path",
    [
        [],
        [(0, 0)],
        [(0, 0), (2, 1)],
        [(1, 0), (1, 1)],
        [(0, 0), (0, 0), (1, 1)],
    ],
)
def test_invalid_paths_rejected(path):
    with pytest.raises(DomainError):
        correspondence_cost(HAMMING, tuple("ab"), tuple("ab"), path)


def _random_path(draw, nx, ny):
    i = j = 0
    path = [(0, 0)]
    while (i, j) != (nx - 1, ny - 1):
        options = []
        if i + 1 < nx:
            options.append((i + 1, j))
        if j + 1 < ny:
            options.append((i, j + 1))
        if i + 1 < nx and j + 1 < ny:
            options.append((i + 1, j + 1))
        i, j = draw(st.sampled_from(options))
        path.append((i, j))
    return path


@given(st.data(), st.lists(letters, min_size=1, max_size=6).map(tuple),
       st.lists(letters, min_size=1, max_size=6).map(tuple))
def test_any_valid_path_costs_at_least_dtw(data, x, y):
    path = _random_path(data.draw, len(x), len(y))
    validate_correspondence(path, len(x), len(y))
    assert len(path) <= len(x) + len(y)
    assert correspondence_cost(HAMMING, x, y, path) >= dtw_quadratic(HAMMING, x, y)
