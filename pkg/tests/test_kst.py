"""Tests for the K_{s,t} prefix-stream checks."""

import tempfile
from fractions import Fraction
from math import log, sqrt
from pathlib import Path

import pytest

from pyextremal.errors import DomainError, GraphFormatError
from pyextremal.graph import complete_graph, fano_incidence_graph
from pyextremal.kst import (
    PrefixStream,
    block_stats,
    complete_stream,
    convexity_term,
    degree_chain,
    degree_sum_check,
    empty_stream,
    liminf_statistic,
    low_degree_witness,
    matching_stream,
    witness_threshold,
)


def test_prefix_stream_basics():
    """Test prefixes and validation."""
    stream = PrefixStream.from_back_edges([[], [0], [1, 0, 0]])
    assert stream.horizon == 3
    assert stream.prefix(3) == complete_graph(3)
    assert stream.prefix(0).n == 0
    with pytest.raises(DomainError):
        stream.prefix(4)
    with pytest.raises(DomainError):
        PrefixStream(((), (1,)))


def test_stream_from_graph(petersen):
    """Test that a graph is its own last prefix."""
    assert PrefixStream.from_graph(petersen).prefix(10) == petersen


def test_stream_text_form():
    """Test the one-line-per-vertex format."""
    stream = PrefixStream.parse("# comment\n-\n0\n\n0 2\n")
    assert stream.back_edges == ((), (0,), (), (0, 2))
    assert stream.format() == "-\n0\n-\n0 2\n"
    with pytest.raises(GraphFormatError) as excinfo:
        PrefixStream.parse("-\n1\n")
    assert excinfo.value.line == 2
    with pytest.raises(GraphFormatError):
        PrefixStream.parse("-\nx\n")


def test_stream_files():
    """Test saving and loading a stream."""
    stream = matching_stream(6)
    with tempfile.TemporaryDirectory() as tmpdir:
        path = Path(tmpdir) / "stream.txt"
        stream.save(path)
        assert PrefixStream.load(path) == stream


def test_stream_builders():
    """Test the built-in streams."""
    assert complete_stream(5).prefix(5) == complete_graph(5)
    assert matching_stream(5).prefix(5).edges() == [(0, 1), (2, 3)]
    assert empty_stream(4).prefix(4).edge_count() == 0


def test_degree_sum_on_free_graph(petersen):
    """Test the inequality on a C4-free graph."""
    report = degree_sum_check(petersen, 2, 2)
    assert report.kst_free and report.holds
    assert (report.lhs, report.rhs) == (30, 45)


def test_degree_sum_on_graph_with_copy():
    """Test that a failing inequality is only reported when a copy exists."""
    report = degree_sum_check(complete_graph(4), 2, 2)
    assert not report.kst_free
    assert not report.holds
    assert report.to_dict()["lhs"] == 12


def test_degree_sum_block():
    """Test degrees counted into a block."""
    report = degree_sum_check(complete_graph(4), 1, 3, block=[0, 1])
    assert report.n == 2
    assert report.lhs == 6
    with pytest.raises(DomainError):
        degree_sum_check(complete_graph(4), 2, 2, block=[7])


def test_block_stats():
    """Test edge counts between the first block and later blocks."""
    stats = block_stats(complete_stream(6), 2, 3)
    assert stats.E == (2, 4, 4)
    assert stats.F == (2, 6, 10)
    with pytest.raises(DomainError):
        block_stats(complete_stream(5), 2, 3)
    with pytest.raises(DomainError):
        block_stats(complete_stream(5), 0, 3)


def test_convexity_term():
    """Test the positive part of the falling product."""
    assert convexity_term(10, 3, 2) == 70
    assert convexity_term(5, 3, 2) == 10
    assert convexity_term(3, 3, 2) == 0
    assert convexity_term(2, 3, 2) == 0
    assert convexity_term(7, 3, 1) == 7


def test_degree_chain_on_heawood():
    """Test both links of the chain on a C4-free stream."""
    stream = PrefixStream.from_graph(fano_incidence_graph())
    chain = degree_chain(stream, 2, 2, 7, 2)
    assert chain.holds
    assert chain.rhs == 21
    assert isinstance(chain.convex, Fraction)


def test_witness_threshold():
    """Test the threshold formula."""
    assert witness_threshold(2, 2, 4, 1) == pytest.approx(16 * sqrt(2) * 2 * 2 / sqrt(log(4)))
    assert witness_threshold(2, 2, 4, 2) > witness_threshold(2, 2, 4, 1)
    with pytest.raises(DomainError):
        witness_threshold(2, 2, 1, 1)


def test_low_degree_witness():
    """Test the first low-degree vertex of the first block."""
    witness = low_degree_witness(empty_stream(8), 2, 2, 4, 2)
    assert (witness.ell, witness.vertex, witness.degree) == (1, 0, 0)
    with pytest.raises(DomainError):
        low_degree_witness(empty_stream(30), 2, 2, 4, 5)
    with pytest.raises(DomainError):
        low_degree_witness(complete_stream(8), 2, 2, 4, 2)


def test_liminf_statistic():
    """Test the normalised minimum degree series."""
    series = liminf_statistic(complete_stream(6), 2, 6)
    assert series.ns == [2, 3, 4, 5, 6]
    for m, value in zip(series.ns, series.values):
        assert value == pytest.approx((m - 1) * sqrt(log(m)) / sqrt(m))
    assert all(a >= b for a, b in zip(series.running_min, series.running_min[1:]))
    assert series.running_min[-1] == min(series.values)
    with pytest.raises(DomainError):
        liminf_statistic(complete_stream(6), 1, 6)
    with pytest.raises(DomainError):
        liminf_statistic(complete_stream(6), 2, 7)
