"""Tests for the extremal constructions."""

import pytest
from pydantic import ValidationError

from pyextremal.constructions import (
    CONSTRUCTIONS,
    JointExtremalSpec,
    PolaritySpec,
    PrismBlowupSpec,
    TuranSpec,
    build_construction,
    construction_report,
    equitable_sizes,
    get_construction_names,
    get_construction_spec,
    joint_dichotomy_report,
    joint_extremal,
    joint_part_layout,
    prism_part_sizes,
    projective_points,
    turan_graph,
    turan_number,
)
from pyextremal.errors import DomainError
from pyextremal.graph import Graph, clique_number, complete_graph, count_cliques, is_kst_free, joint_number


def test_equitable_sizes():
    """Test balanced splits, larger parts first."""
    assert equitable_sizes(10, 3) == [4, 3, 3]
    assert equitable_sizes(6, 3) == [2, 2, 2]
    with pytest.raises(DomainError):
        equitable_sizes(5, 0)


def test_turan_graph():
    """Test T_{9,2}."""
    g = turan_graph(TuranSpec(n=9, r=2))
    assert turan_number(9, 2) == 20
    assert g.edge_count() == 20
    assert clique_number(g) == 2


def test_turan_spec_validation():
    """Test that impossible Turán parameters are refused."""
    with pytest.raises(ValidationError):
        TuranSpec(n=3, r=4)
    with pytest.raises(ValidationError):
        TuranSpec(n=0, r=1)


@pytest.mark.parametrize("r,n", [(2, 5), (2, 9), (2, 13), (3, 10), (3, 19), (4, 17)])
def test_joint_extremal_identities(r, n):
    """Test edge, clique and joint counts of G_{n,r} for n = 1 mod r^2."""
    report = construction_report("joint", {"n": n, "r": r})
    assert report.passed, report.to_dict()
    d = (r - 1) * (n - 1) // (r * r)
    g = report.graph
    assert g.edge_count() == turan_number(n, r)
    assert count_cliques(g, r + 1).total == d ** r
    assert joint_number(g, r + 1).size == d ** (r - 1)


def test_joint_extremal_general_part_layout():
    """Test the part layout of G_{n,r}(s)."""
    spec = JointExtremalSpec(n=14, r=3, s=2)
    assert joint_part_layout(spec) == [2, 4, 4, 4]
    assert joint_extremal(spec).n == 14
    report = construction_report("joint", {"n": 14, "r": 3, "s": 2})
    assert report.passed


@pytest.mark.parametrize("n,j", [(12, 2), (18, 3), (16, 3)])
def test_prism_blowup(n, j):
    """Test the prism blow-up counts."""
    report = construction_report("prism", {"n": n, "j": j})
    assert report.passed, report.to_dict()
    assert sum(prism_part_sizes(n, j)) == n
    assert count_cliques(report.graph, 3).total == j * j * (n - 4 * j)


def test_prism_spec_needs_room():
    """Test the prism size precondition."""
    with pytest.raises(ValidationError):
        PrismBlowupSpec(n=9, j=2)


def test_rademacher_graph():
    """Test one extra edge over the Turán number and floor(n/2) triangles."""
    g = build_construction("rademacher", {"n": 7})
    assert g.edge_count() == turan_number(7, 2) + 1
    assert count_cliques(g, 3).total == 3


def test_polarity_graph():
    """Test the polarity graph of PG(2, 3)."""
    assert len(projective_points(3)) == 13
    report = construction_report("polarity", {"q": 3})
    assert report.passed
    assert report.graph.edge_count() == 24
    assert is_kst_free(report.graph, 2, 2)
    with pytest.raises(ValidationError):
        PolaritySpec(q=4)


def test_pendant_clique_closed_form():
    """Test T(3, 6) against its closed-form sizes."""
    report = construction_report("pendant", {"k": 3, "ell": 6})
    assert report.passed
    assert {c.name for c in report.checks} >= {"vertices_closed_form", "edges_closed_form"}
    assert report.graph.n == 9


def test_registry():
    """Test the construction registry accessors."""
    assert set(get_construction_names()) == set(CONSTRUCTIONS)
    assert get_construction_spec("turan") is TuranSpec
    with pytest.raises(DomainError):
        build_construction("moore", {})


def test_report_to_dict():
    """Test the JSON form of a construction report."""
    data = construction_report("turan", {"n": 9, "r": 2}).to_dict()
    assert data["construction"] == "turan"
    assert data["edges"] == 20
    assert data["passed"] is True
    assert all(check["passed"] for check in data["checks"])


def test_joint_dichotomy_report():
    """Test both sides of the joints dichotomy."""
    turan = joint_dichotomy_report(turan_graph(TuranSpec(n=8, r=2)), 2)
    assert turan["is_turan"] is True
    assert turan["cliques"] == 0
    dense = joint_dichotomy_report(complete_graph(5), 2)
    assert dense["is_turan"] is False
    assert dense["cliques"] == 10
    assert dense["joint"] == 3
    with pytest.raises(DomainError):
        joint_dichotomy_report(Graph.empty(5), 2)
