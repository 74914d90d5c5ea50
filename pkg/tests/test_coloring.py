"""Tests for edge colourings and pattern counting."""

import tempfile
from math import comb
from pathlib import Path

import networkx as nx
import pytest
from networkx.algorithms import isomorphism

from pyextremal.coloring import (
    BLUE,
    RED,
    EdgeColoring,
    PatternMatcher,
    automorphism_count,
    blowup_coloring,
    copies_in_complete,
    count_embeddings,
    dump_coloring,
    format_coloring_text,
    load_coloring,
    parse_coloring_text,
    partition_classes,
    partition_coloring,
    pendant_shape,
    random_coloring,
)
from pyextremal.errors import DomainError, GraphFormatError
from pyextremal.graph import Graph, complement, complete_graph, cycle_graph, path_graph, random_graph, star_graph
from pyextremal.graph_io import resolve_pattern
from pyextremal.multiplicity import pendant_clique_pattern

PATTERNS = ["k3", "p3", "c4", "paw", "diamond", "p4", "k13", "k4", "c5"]


def _nx_copies(g: Graph, h: Graph) -> int:
    matcher = isomorphism.GraphMatcher(g.to_networkx(), h.to_networkx())
    embeddings = sum(1 for _ in matcher.subgraph_monomorphisms_iter())
    return embeddings // _nx_automorphisms(h)


def _nx_automorphisms(h: Graph) -> int:
    graph = h.to_networkx()
    return sum(1 for _ in isomorphism.GraphMatcher(graph, graph).isomorphisms_iter())


def _without_edge(g: Graph, u: int, v: int) -> Graph:
    return Graph.from_edges(g.n, [e for e in g.edges() if e != (min(u, v), max(u, v))])


def test_pair_index_is_lexicographic():
    """Test the pair order of stored colours."""
    c = EdgeColoring.from_function(6, 3, lambda u, v: (u + v) % 3)
    index = 0
    for u in range(6):
        for v in range(u + 1, 6):
            assert c.pair_index(u, v) == c.pair_index(v, u) == index
            assert c.color(u, v) == (u + v) % 3
            index += 1
    with pytest.raises(DomainError):
        c.pair_index(2, 2)


def test_invalid_colorings():
    """Test colour range and length checks."""
    with pytest.raises(DomainError):
        EdgeColoring(3, 2, (0, 1))
    with pytest.raises(DomainError):
        EdgeColoring(3, 2, (0, 1, 2))
    with pytest.raises(DomainError):
        EdgeColoring(3, 0, (0, 0, 0))


def test_from_graph_and_color_graph(petersen):
    """Test that colour classes are the graph and its complement."""
    c = EdgeColoring.from_graph(petersen)
    assert c.color_graph(RED) == petersen
    assert c.color_graph(BLUE) == complement(petersen)
    assert c.class_sizes() == [15, 30]
    with pytest.raises(DomainError):
        c.color_graph(2)


def test_from_rows():
    """Test building from colour-class rows."""
    c = EdgeColoring.from_graph(cycle_graph(5))
    assert EdgeColoring.from_rows(5, 2, c.class_rows) == c
    with pytest.raises(DomainError):
        EdgeColoring.from_rows(3, 2, [complete_graph(3).rows, complete_graph(3).rows])


def test_relabel_and_permute(pentagon_colors):
    """Test colour and vertex relabelling."""
    swapped = pentagon_colors.relabel_colors([1, 0])
    assert swapped.color_graph(RED) == pentagon_colors.color_graph(BLUE)
    mapping = [2, 4, 1, 0, 3]
    moved = pentagon_colors.permute_vertices(mapping)
    for u in range(5):
        for v in range(u + 1, 5):
            assert moved.color(mapping[u], mapping[v]) == pentagon_colors.color(u, v)
    with pytest.raises(DomainError):
        pentagon_colors.relabel_colors([0, 0])


def test_json_form(pentagon_colors):
    """Test the JSON form and its validation."""
    data = pentagon_colors.to_dict()
    assert data["n"] == 5 and data["q"] == 2
    assert data["edges"][0] == [0, 1, RED]
    assert EdgeColoring.from_dict(data) == pentagon_colors
    with pytest.raises(GraphFormatError):
        EdgeColoring.from_dict({"n": 3, "q": 2, "edges": [[0, 1, 0], [1, 0, 1], [1, 2, 0]]})
    with pytest.raises(GraphFormatError):
        EdgeColoring.from_dict({"n": 3, "q": 2, "edges": [[0, 1, 0]]})
    with pytest.raises(GraphFormatError):
        EdgeColoring.from_dict({"q": 2, "edges": []})


def test_text_form(pentagon_colors):
    """Test the row-major text form."""
    text = format_coloring_text(pentagon_colors)
    assert text.splitlines()[0] == "5 2"
    assert text.splitlines()[1] == "0 1 1 0"
    assert parse_coloring_text(text) == pentagon_colors
    with pytest.raises(GraphFormatError) as excinfo:
        parse_coloring_text("3 2\n0 1\n0 1\n")
    assert excinfo.value.line == 3
    with pytest.raises(GraphFormatError):
        parse_coloring_text("3\n")


def test_load_and_dump(pentagon_colors):
    """Test colouring files by suffix."""
    with tempfile.TemporaryDirectory() as tmpdir:
        for name in ("c.json", "c.txt"):
            path = Path(tmpdir) / name
            dump_coloring(pentagon_colors, path)
            assert load_coloring(path) == pentagon_colors
        bad = Path(tmpdir) / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(GraphFormatError):
            load_coloring(bad)


def test_partition_coloring():
    """Test red classes and blue cross pairs."""
    assert partition_classes(7, 3) == [[0, 1, 2], [3, 4], [5, 6]]
    c = partition_coloring(6, 2)
    assert c.class_sizes() == [6, 9]
    assert c.color(0, 2) == RED and c.color(2, 3) == BLUE


def test_blowup_coloring(pentagon_colors):
    """Test that blocks take the fresh colour and cross pairs the base colour."""
    c = blowup_coloring(pentagon_colors, 10)
    assert c.q == 3
    assert c.class_sizes()[2] == 5
    assert c.color(0, 1) == 2
    assert c.color(0, 2) == pentagon_colors.color(0, 1)
    assert c.color(1, 9) == pentagon_colors.color(0, 4)
    with pytest.raises(DomainError):
        blowup_coloring(pentagon_colors, 10, inner_color=1)
    with pytest.raises(DomainError):
        blowup_coloring(pentagon_colors, 4)


def test_random_coloring_reproducible():
    """Test seeded random colourings."""
    assert random_coloring(8, 3, seed=1) == random_coloring(8, 3, seed=1)
    assert set(random_coloring(8, 3, seed=1).colors) <= {0, 1, 2}


def test_automorphisms_match_networkx():
    """Test automorphism counts on every graph with at most five vertices."""
    for graph in nx.graph_atlas_g():
        if graph.number_of_nodes() > 5:
            break
        if graph.number_of_nodes() == 0:
            continue
        h = Graph.from_networkx(graph)
        assert automorphism_count(h) == _nx_automorphisms(h), graph.edges()


def test_pendant_shapes():
    """Test recognition of cliques with pendant leaves."""
    assert pendant_shape(complete_graph(4)) == (4, 0)
    assert pendant_shape(star_graph(3)) == (2, 2)
    assert pendant_shape(path_graph(3)) == (2, 1)
    assert pendant_shape(resolve_pattern("paw")) == (3, 1)
    assert pendant_shape(pendant_clique_pattern(4, 3)) == (4, 3)
    assert pendant_shape(cycle_graph(4)) is None
    assert pendant_shape(path_graph(4)) is None


def test_copies_in_complete():
    """Test copies of small patterns in K_n."""
    assert copies_in_complete(complete_graph(3), 5) == 10
    assert copies_in_complete(cycle_graph(4), 4) == 3
    assert copies_in_complete(path_graph(3), 4) == 12
    assert copies_in_complete(complete_graph(5), 4) == 0


@pytest.mark.parametrize("name", PATTERNS)
def test_matcher_count_matches_networkx(name):
    """Test copy counts against networkx monomorphisms."""
    h = resolve_pattern(name)
    g = random_graph(9, 0.5, seed=7)
    assert PatternMatcher(h).count(g.rows, g.vertex_mask) == _nx_copies(g, h)


def test_pendant_pattern_count_matches_networkx():
    """Test the closed-form pendant count."""
    h = pendant_clique_pattern(3, 2)
    g = random_graph(9, 0.6, seed=2)
    assert PatternMatcher(h).count(g.rows, g.vertex_mask) == _nx_copies(g, h)


@pytest.mark.parametrize("name", PATTERNS)
def test_copies_through_edge(name):
    """Test per-edge counts as the loss from deleting the edge."""
    h = resolve_pattern(name)
    g = random_graph(8, 0.6, seed=13)
    matcher = PatternMatcher(h)
    total = matcher.count(g.rows, g.vertex_mask)
    through_all = 0
    for u, v in g.edges():
        through = matcher.copies_through(g.rows, g.vertex_mask, u, v)
        reduced = _without_edge(g, u, v)
        assert through == total - matcher.count(reduced.rows, reduced.vertex_mask)
        assert matcher.occurs_through(g.rows, g.vertex_mask, u, v) == (through > 0)
        through_all += through
    assert through_all == total * h.edge_count()


def test_count_embeddings_respects_universe():
    """Test that vertices outside the universe are ignored."""
    g = complete_graph(6)
    assert count_embeddings(g.rows, 0b000111, complete_graph(3)) == 6
    assert count_embeddings(g.rows, 0b000011, complete_graph(3)) == 0
    assert count_embeddings(g.rows, g.vertex_mask, complete_graph(3), workers=2) == 6 * comb(6, 3)


def test_matcher_rejects_edgeless_pattern():
    """Test that edgeless patterns cannot be matched."""
    with pytest.raises(DomainError):
        PatternMatcher(Graph.empty(3))
