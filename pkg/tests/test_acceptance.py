"""Tests for the acceptance criteria runner."""

import pytest

from pyextremal.acceptance import (
    CRITERIA,
    SUITES,
    get_criteria,
    naive_sub_ramsey,
    naive_triangle_minimum,
    render_criteria,
    run_criteria,
)
from pyextremal.errors import DomainError


def test_criteria_numbering():
    """Test that criteria are numbered in order and belong to known suites."""
    assert [c.number for c in CRITERIA] == list(range(1, len(CRITERIA) + 1))
    assert {c.suite for c in CRITERIA} == set(SUITES)


def test_get_criteria():
    """Test suite selection."""
    assert len(get_criteria()) == len(CRITERIA)
    assert len(get_criteria("all")) == len(CRITERIA)
    assert [c.number for c in get_criteria("match")] == [10, 11]
    with pytest.raises(DomainError):
        get_criteria("nope")


def test_naive_oracles():
    """Test the brute-force reference values."""
    assert naive_sub_ramsey(2, 3, 6) == 5
    assert naive_sub_ramsey(1, 2, 3) == 2
    assert naive_triangle_minimum(5) == 0
    assert naive_triangle_minimum(6) == 2


@pytest.mark.parametrize("suite", ["joints", "match", "kst"])
def test_fast_suites_pass(suite, small_config):
    """Test that the quick suites pass."""
    results = run_criteria(suite, small_config)
    assert results
    for result in results:
        assert result.passed, result.message


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["ap", "mult", "ramsey"])
def test_slow_suites_pass(suite):
    """Test the search-heavy suites under the default configuration."""
    for result in run_criteria(suite):
        assert result.passed, result.message


def test_render_criteria(small_config):
    """Test the one-line-per-criterion text."""
    results = run_criteria("joints", small_config)
    text = render_criteria(results)
    lines = text.splitlines()
    assert lines[0].startswith("[PASS]  1 joints/joint-extremal identities: ")
    assert lines[-1] == f"{len(results)}/{len(results)} criteria passed"
    assert results[0].to_dict()["suite"] == "joints"
