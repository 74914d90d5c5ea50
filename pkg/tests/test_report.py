"""Tests for the search report envelope."""

import json
import tempfile
from pathlib import Path

import pytest
from pydantic import ValidationError

from pyextremal import __version__
from pyextremal.report import SearchReport, Stopwatch


def _report(**kwargs) -> SearchReport:
    fields = {"command": "ramsey exact k3", "value": 6, "lower": 6, "upper": 6, "nodes": 12, "elapsed": 0.5}
    fields.update(kwargs)
    return SearchReport(**fields)


def test_exit_codes():
    """Test the exit code of each status."""
    assert _report().exit_code == 0
    assert _report(status="violated").exit_code == 1
    assert _report(status="interval", value=None, upper=None, exact=False).exit_code == 3
    assert _report(status="refused", value=None, exact=False).exit_code == 3
    assert _report().resolved
    assert not _report(status="refused").resolved


def test_invalid_report():
    """Test status and interval validation."""
    with pytest.raises(ValidationError):
        _report(status="unknown")
    with pytest.raises(ValidationError):
        _report(lower=7, upper=6)


def test_comparable_json():
    """Test that comparable output leaves out volatile fields."""
    data = json.loads(_report().to_json(comparable=True))
    assert "timestamp" not in data and "elapsed" not in data
    assert data["value"] == 6
    assert data["version"] == __version__
    assert data["schema_version"] == 1
    assert _report().to_json(comparable=True) == _report(elapsed=9.0).to_json(comparable=True)
    assert "timestamp" in _report().to_dict()


def test_save():
    """Test saving a report."""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = Path(tmpdir) / "report.json"
        _report().save(str(path), comparable=True)
        assert json.loads(path.read_text())["command"] == "ramsey exact k3"


def test_render_table():
    """Test the plain-text rendering."""
    text = _report(seed=4, details={"pattern_vertices": 3}, witness={"n": 5}).render_table()
    lines = text.splitlines()
    assert lines[0] == "ramsey exact k3"
    assert lines[1] == "-" * len("ramsey exact k3")
    assert "status    : complete" in lines
    assert "interval  : [6, 6]" in lines
    assert "seed      : 4" in lines
    assert any(line.startswith("pattern_vertices") for line in lines)
    assert "    n: 5" in lines


def test_render_open_interval():
    """Test that a missing upper end shows as a question mark."""
    text = _report(status="interval", value=None, upper=None, exact=False).render_table()
    assert "interval  : [6, ?]" in text
    assert "exact     : no" in text


def test_stopwatch():
    """Test wall-time measurement."""
    with Stopwatch() as watch:
        sum(range(1000))
    assert watch.elapsed >= 0.0
