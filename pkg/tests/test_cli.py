"""Tests for the command-line interface."""

import json
import tempfile
from pathlib import Path

from pyextremal.cli import main


def test_construct_list(runner):
    """Test listing constructions."""
    result = runner.invoke(main, ["construct", "list"])
    assert result.exit_code == 0
    assert "turan" in result.output
    assert "--n" in result.output


def test_construct_edgelist(runner):
    """Test emitting T_{9,2} as an edge list."""
    result = runner.invoke(main, ["construct", "turan", "--n", "9", "--r", "2", "--emit", "edgelist"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "9"
    assert len(lines) == 21


def test_construct_json(runner):
    """Test the construction report."""
    result = runner.invoke(main, ["construct", "polarity", "--q", "3"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["passed"]
    assert data["edges"] == 24
    assert data["graph6"]


def test_construct_invalid_parameters(runner):
    """Test that impossible parameters exit with 2."""
    result = runner.invoke(main, ["construct", "turan", "--n", "3", "--r", "5"])
    assert result.exit_code == 2
    assert "Error" in result.output


def test_construct_to_file(runner):
    """Test writing a construction to a graph6 file."""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = Path(tmpdir) / "rademacher.g6"
        result = runner.invoke(main, ["construct", "rademacher", "--n", "7", "--emit", "graph6", "-o", str(path)])
        assert result.exit_code == 0
        assert path.read_text().strip()


def test_ramsey_exact_json(runner):
    """Test r(K_3) as JSON."""
    result = runner.invoke(main, ["--json", "--comparable", "ramsey", "exact", "--pattern", "k3"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["value"] == 6
    assert data["status"] == "complete"
    assert "timestamp" not in data


def test_ramsey_over_budget_exits_3(runner):
    """Test that an unresolved search exits with 3."""
    result = runner.invoke(main, ["--json", "ramsey", "exact", "--pattern", "k3", "--budget", "5"])
    assert result.exit_code == 3
    assert json.loads(result.output)["status"] == "interval"


def test_unknown_pattern_exits_2(runner):
    """Test that bad input exits with 2."""
    result = runner.invoke(main, ["ramsey", "exact", "--pattern", "zz"])
    assert result.exit_code == 2


def test_ramsey_table(runner):
    """Test the plain-text report."""
    result = runner.invoke(main, ["ramsey", "exact", "--pattern", "p3"])
    assert result.exit_code == 0
    assert "status    : complete" in result.output
    assert "value     : 3" in result.output


def test_ramsey_sandwich(runner):
    """Test the vertex-deletion check."""
    result = runner.invoke(main, ["--json", "ramsey", "sandwich", "--pattern", "k3", "--delete", "0"])
    assert result.exit_code == 0
    assert json.loads(result.output)["value"] == "holds"


def test_sub_ramsey(runner):
    """Test sr(2, 3)."""
    result = runner.invoke(main, ["--json", "ap", "sr-exact", "--m", "2", "--k", "3", "--nmax", "8"])
    assert result.exit_code == 0
    assert json.loads(result.output)["value"] == 5


def test_ap_set_mapping(runner):
    """Test a permutation with a progression mapped off itself."""
    result = runner.invoke(main, ["--json", "ap", "set-mapping", "--perm", "2,1,4,3,6,5", "--k", "3"])
    assert result.exit_code == 0
    terms = json.loads(result.output)["witness"]
    perm = [2, 1, 4, 3, 6, 5]
    assert not set(terms) & {perm[x - 1] for x in terms}


def test_ap_coverage(runner):
    """Test the pair-coverage bound."""
    result = runner.invoke(main, ["--json", "ap", "coverage", "--n", "60", "--k", "3"])
    assert result.exit_code == 0
    assert json.loads(result.output)["value"] <= 2


def test_mult_goodman(runner):
    """Test the closed-form triangle minimum."""
    result = runner.invoke(main, ["--json", "mult", "goodman", "--n", "6"])
    assert json.loads(result.output)["value"] == 2


def test_mult_coloring_and_count(runner):
    """Test writing the pentagon colouring and counting triangles in it."""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = Path(tmpdir) / "pentagon.json"
        written = runner.invoke(main, ["mult", "coloring", "pentagon", "-o", str(path)])
        assert written.exit_code == 0
        result = runner.invoke(main, ["--json", "mult", "count", "--coloring", str(path), "--pattern", "k3"])
        assert result.exit_code == 0
        assert json.loads(result.output)["value"] == 0


def test_missing_input_file_is_bad_input(runner):
    """Test that an unreadable colouring file exits 2."""
    with tempfile.TemporaryDirectory() as tmpdir:
        missing = Path(tmpdir) / "missing.json"
        result = runner.invoke(main, ["mult", "count", "--coloring", str(missing), "--pattern", "k3"])
        assert result.exit_code == 2


def test_mult_exact_with_witness(runner):
    """Test the exact minimum and its witness file."""
    with tempfile.TemporaryDirectory() as tmpdir:
        witness = Path(tmpdir) / "best.txt"
        result = runner.invoke(
            main, ["--json", "mult", "exact", "--pattern", "k3", "--n", "6", "--witness", str(witness)]
        )
        assert result.exit_code == 0
        assert json.loads(result.output)["value"] == 2
        assert witness.read_text().startswith("6 2")


def test_match_exact(runner):
    """Test a maximum connected matching of the pentagon."""
    result = runner.invoke(main, ["--json", "match", "exact", "--graph", "c5", "--s", "1"])
    assert result.exit_code == 0
    assert json.loads(result.output)["value"] == 2


def test_kst_blocks(runner):
    """Test block edge counts of the complete stream."""
    result = runner.invoke(main, ["--json", "kst", "blocks", "--stream", "complete:6", "--n", "2", "--blocks", "3"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["value"] == [2, 4, 4]
    assert data["details"]["F"] == [2, 6, 10]


def test_kst_bad_stream(runner):
    """Test that an unknown stream exits with 2."""
    result = runner.invoke(main, ["kst", "liminf", "--stream", "spiral:5", "--s", "2", "--nmax", "4"])
    assert result.exit_code == 2


def test_config_file_switches_to_json(runner):
    """Test that the configuration file sets the output format."""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = Path(tmpdir) / "config.yaml"
        path.write_text("output:\n  json: true\n")
        result = runner.invoke(main, ["--config", str(path), "mult", "goodman", "--n", "7"])
        assert result.exit_code == 0
        assert json.loads(result.output)["value"] == 4


def test_verify_paper_suite(runner):
    """Test running one acceptance suite."""
    result = runner.invoke(main, ["verify-paper", "--suite", "joints"])
    assert result.exit_code == 0
    assert "2/2 criteria passed" in result.output


def test_verify_json(runner):
    """Test the JSON form of acceptance results under the short name."""
    result = runner.invoke(main, ["--json", "verify", "--suite", "kst"])
    assert result.exit_code == 0
    assert [r["number"] for r in json.loads(result.output)] == [12]
