"""Tests for exact Ramsey numbers and vertex-deletion bounds."""

import networkx as nx
import pytest

from pyextremal.errors import DomainError
from pyextremal.graph import Graph, clique_number, complete_graph, cycle_graph, path_graph
from pyextremal.graph_io import resolve_pattern
from pyextremal.multiplicity import count_mono
from pyextremal.ramsey import (
    KNOWN_RAMSEY_NUMBERS,
    IsomorphismCache,
    clique_bound,
    ramsey_exact,
    ramsey_report,
    sample_random_ramsey,
    strip_isolated,
    verify_sandwich,
)

FAST = ["k2", "p3", "p4", "k13", "c4", "k3"]


def _atlas_patterns():
    """Patterns on two to four vertices with an edge, K4 left out; triangle-bearing ones are slow."""
    params = []
    for graph in nx.graph_atlas_g():
        n = graph.number_of_nodes()
        if n > 4:
            break
        if n < 2 or graph.number_of_edges() == 0 or graph.number_of_edges() == 6:
            continue
        h = Graph.from_networkx(graph)
        marks = [pytest.mark.slow] if h.edge_count() >= 4 and clique_number(h) >= 3 else []
        params.append(pytest.param(h, id=f"n{n}-" + "-".join(f"{u}{v}" for u, v in h.edges()), marks=marks))
    return params


@pytest.mark.parametrize("name", FAST)
def test_small_ramsey_numbers(name):
    """Test known values of small patterns."""
    result = ramsey_exact(resolve_pattern(name))
    assert result.exact
    assert result.value == KNOWN_RAMSEY_NUMBERS[name]


@pytest.mark.slow
@pytest.mark.parametrize("name", ["paw", "diamond"])
def test_larger_ramsey_numbers(name):
    """Test known values that need longer searches."""
    assert ramsey_exact(resolve_pattern(name)).value == KNOWN_RAMSEY_NUMBERS[name]


def test_witness_avoids_pattern():
    """Test that the witness colours K_5 without a monochromatic triangle."""
    result = ramsey_exact(complete_graph(3))
    assert result.witness.n == 5
    assert count_mono(result.witness, complete_graph(3)).total == 0


def test_edgeless_and_isolated_vertices():
    """Test edgeless patterns and isolated vertices."""
    assert ramsey_exact(Graph.empty(3)).value == 1
    with_isolated = Graph.from_edges(3, [(0, 1)])
    assert strip_isolated(with_isolated).n == 2
    assert ramsey_exact(with_isolated).value == 3


def test_cap_gives_interval():
    """Test that the cap leaves an interval."""
    result = ramsey_exact(cycle_graph(4), n_cap=5)
    assert not result.exact
    assert result.value is None
    assert (result.lower, result.upper) == (6, clique_bound(4))


def test_budget_gives_interval():
    """Test that the budget leaves an interval."""
    result = ramsey_exact(complete_graph(3), budget=5)
    assert not result.exact
    assert result.lower == 3 and result.upper == 6


def test_symmetry_and_workers_agree():
    """Test that search options do not change the value."""
    p4 = path_graph(4)
    assert ramsey_exact(p4, symmetry=False).value == 5
    assert ramsey_exact(p4, workers=2).value == 5


@pytest.mark.parametrize("h", _atlas_patterns())
def test_pruned_search_matches_unpruned(h):
    """Test that symmetry breaking never changes r(H)."""
    pruned = ramsey_exact(h)
    unpruned = ramsey_exact(h, symmetry=False)
    assert pruned.exact and unpruned.exact
    assert pruned.value == unpruned.value


def test_clique_bound():
    """Test the binomial upper bound."""
    assert [clique_bound(v) for v in range(1, 5)] == [1, 2, 6, 20]


def test_report():
    """Test the search report of an exact value."""
    report = ramsey_report(complete_graph(3), "k3", n_cap=8, budget=10**6)
    assert report.status == "complete"
    assert report.value == 6
    assert report.details == {"pattern_vertices": 3, "pattern_edges": 3}
    assert report.witness["n"] == 5


def test_sandwich_triangle():
    """Test both bounds for the triangle."""
    report = verify_sandwich(complete_graph(3), 0)
    assert report.status == "holds"
    assert report.factor == 4
    assert report.ratio == 3.0
    assert report.to_dict()["r_deleted"] == [2, 2]


def test_sandwich_to_edgeless():
    """Test deleting the centre of a path."""
    report = verify_sandwich(path_graph(3), 1)
    assert report.deleted.value == 1
    assert report.status == "holds"


def test_sandwich_inconclusive():
    """Test that unresolved values leave the check open."""
    report = verify_sandwich(cycle_graph(4), 0, n_cap=5)
    assert report.upper_inequality is None
    assert report.status == "inconclusive"
    assert report.ratio is None


def test_sandwich_rejects_bad_vertex():
    """Test vertex validation."""
    with pytest.raises(DomainError):
        verify_sandwich(complete_graph(3), 3)


def test_cache_identifies_isomorphic_patterns():
    """Test that relabelled patterns share one entry."""
    cache = IsomorphismCache(n_cap=8)
    first = cache.ramsey(path_graph(3))
    second = cache.ramsey(Graph.from_edges(3, [(0, 2), (2, 1)]))
    assert first is second
    assert len(cache) == 1
    cache.ramsey(complete_graph(3))
    assert len(cache) == 2


def test_sample_random_patterns():
    """Test a seeded sample of small random patterns."""
    sample = sample_random_ramsey(3, 0.5, trials=12, seed=1, n_cap=8)
    assert len(sample.values) + len(sample.censored) == 12
    assert set(sample.values) <= {1, 2, 3, 6}
    assert 1 <= sample.distinct_patterns <= 4
    assert sum(sample.histogram().values()) == len(sample.values)
    assert sample.to_dict()["resolved"] == len(sample.values)
    again = sample_random_ramsey(3, 0.5, trials=12, seed=1, n_cap=8)
    assert again.values == sample.values
    with pytest.raises(DomainError):
        sample_random_ramsey(3, 0.5, trials=0)
