"""Tests for graph reading and writing."""

import tempfile
from pathlib import Path

import pytest

from pyextremal.errors import DomainError, GraphFormatError
from pyextremal.graph import complete_graph, cycle_graph, random_graph
from pyextremal.graph_io import (
    dump_graph,
    format_edgelist,
    format_graph6,
    load_graph,
    load_graphs,
    parse_edgelist,
    parse_graph6,
    resolve_pattern,
)


def test_edgelist_roundtrip(petersen):
    """Test that the edge-list format reads back what it writes."""
    assert parse_edgelist(format_edgelist(petersen)) == petersen


def test_edgelist_comments_and_duplicates():
    """Test comments, blank lines and duplicate edges."""
    g = parse_edgelist("# a path\n3\n\n0 1  # first\n1 0\n1 2\n")
    assert g.edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize(
    "text,line",
    [
        ("3\n0 1\n0 5\n", 3),
        ("x\n", 1),
        ("3\n0 1 2\n", 2),
        ("3\n1 1\n", 2),
        ("", 1),
    ],
)
def test_edgelist_errors_name_the_line(text, line):
    """Test that malformed edge lists report the offending line."""
    with pytest.raises(GraphFormatError) as excinfo:
        parse_edgelist(text)
    assert excinfo.value.line == line
    assert f"line {line}" in str(excinfo.value)


def test_graph6_known_value():
    """Test the graph6 code of K_3."""
    assert format_graph6(complete_graph(3)) == "Bw\n"


def test_graph6_many_records():
    """Test reading several graph6 records."""
    graphs = [random_graph(9, 0.4, seed=s) for s in range(3)]
    text = ">>graph6<<" + "".join(format_graph6(g) for g in graphs)
    assert parse_graph6(text) == graphs


def test_graph6_error():
    """Test an invalid graph6 record."""
    with pytest.raises(GraphFormatError):
        parse_graph6("B~~~~\n")


def test_load_and_dump_by_suffix(petersen):
    """Test that file formats are chosen by suffix."""
    with tempfile.TemporaryDirectory() as tmpdir:
        g6 = Path(tmpdir) / "p.g6"
        txt = Path(tmpdir) / "p.txt"
        dump_graph(petersen, g6)
        dump_graph(petersen, txt)
        assert g6.read_text() == format_graph6(petersen)
        assert load_graph(g6) == petersen
        assert load_graph(txt) == petersen
        many = Path(tmpdir) / "many.g6"
        many.write_text(format_graph6(petersen) * 2)
        assert len(load_graphs(many)) == 2
        with pytest.raises(GraphFormatError):
            load_graph(many)


def test_resolve_pattern(petersen):
    """Test named patterns, family shorthands and files."""
    assert resolve_pattern("k4").edge_count() == 6
    assert resolve_pattern("C7") == cycle_graph(7)
    assert resolve_pattern("s4").degrees()[0] == 4
    assert resolve_pattern("e3").edge_count() == 0
    assert resolve_pattern("p5").edge_count() == 4
    with pytest.raises(DomainError):
        resolve_pattern("c2")
    with pytest.raises(DomainError):
        resolve_pattern("no-such-pattern")
    with tempfile.TemporaryDirectory() as tmpdir:
        path = Path(tmpdir) / "g.txt"
        dump_graph(petersen, path)
        assert resolve_pattern(str(path)) == petersen
