import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from streamclust.edge_stream import SKIP, Edge, EdgeStream, open_stream, parse_edge_line
from streamclust.exceptions import ParseError


def test_parse_tab_separated():
    assert parse_edge_line("3\t7") == Edge(3, 7)


@pytest.mark.parametrize("line", ["# comment", "", "   \n", "5 5", "#1 2"])
def test_parse_skips(line):
    assert parse_edge_line(line) is SKIP


@pytest.mark.parametrize("line", ["a b", "1", "1 2 3", "1 x", "-1 2"])
def test_parse_error_carries_line_number(line):
    with pytest.raises(ParseError) as exc:
        parse_edge_line(line, lineno=12)
    assert exc.value.lineno == 12
    assert "line 12" in str(exc.value)


def test_endpoint_order_preserved():
    assert parse_edge_line("9 2") == Edge(9, 2)


def test_open_as_is(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("1 2\n2 3\n")
    assert list(open_stream(p)) == [Edge(1, 2), Edge(2, 3)]


def test_self_loops_filtered_and_counted(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("1 2\n4 4\n2 3\n\n# c\n3 1\n")
    stream = open_stream(p)
    edges = list(stream)
    assert len(edges) == 3
    assert stream.count == 3
    assert stream.self_loops == 1


def test_duplicates_kept(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("1 2\n1 2\n2 1\n")
    assert list(open_stream(p)) == [(1, 2), (1, 2), (2, 1)]


def test_shuffle_deterministic_and_permutation(tmp_path):
    p = tmp_path / "g.txt"
    rng = random.Random(3)
    lines = [f"{rng.randrange(50)} {rng.randrange(50, 100)}" for _ in range(200)]
    p.write_text("\n".join(lines))
    a = list(open_stream(p, shuffle_seed=42))
    b = list(open_stream(p, shuffle_seed=42))
    c = list(open_stream(p, shuffle_seed=43))
    plain = list(open_stream(p))
    assert a == b
    assert a != plain and a != c
    assert Counter(a) == Counter(plain) == Counter(c)


def test_missing_file():
    with pytest.raises(OSError):
        open_stream("/nonexistent/edges.txt")


def test_parse_error_propagates_with_line(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("1 2\n# ok\nfoo bar\n")
    with pytest.raises(ParseError) as exc:
        list(open_stream(p))
    assert exc.value.lineno == 3


def test_stream_is_single_use():
    stream = EdgeStream([(1, 2), (2, 3)])
    assert list(stream) == [(1, 2), (2, 3)]
    assert list(stream) == []
    assert stream.count == 2


lines_strategy = st.lists(
    st.one_of(
        st.tuples(st.integers(0, 30), st.integers(0, 30)).map(lambda t: f"{t[0]} {t[1]}"),
        st.just("# comment"),
        st.just(""),
    ),
    max_size=40,
)


@given(lines_strategy)
def test_count_matches_valid_lines_and_roundtrip(tmp_path_factory, lines):
    p = tmp_path_factory.mktemp("h") / "g.txt"
    p.write_text("\n".join(lines) + "\n")
    expected = [
        tuple(map(int, ln.split())) for ln in lines
        if ln and not ln.startswith("#") and ln.split()[0] != ln.split()[1]
    ]
    stream = open_stream(p)
    edges = list(stream)
    assert stream.count == len(expected)
    assert [f"{u} {v}" for u, v in edges] == [f"{u} {v}" for u, v in expected]
