"""Test configuration."""

import pytest
from click.testing import CliRunner

from pyextremal.coloring import pentagon_coloring
from pyextremal.config import ToolkitConfig
from pyextremal.graph import complete_graph, cycle_graph, petersen_graph


@pytest.fixture
def triangle():
    return complete_graph(3)


@pytest.fixture
def pentagon():
    return cycle_graph(5)


@pytest.fixture
def petersen():
    return petersen_graph()


@pytest.fixture
def pentagon_colors():
    return pentagon_coloring()


@pytest.fixture
def small_config():
    """Budgets small enough for unit tests."""
    return ToolkitConfig.from_dict(
        {
            "search": {"node_budget": 10**6, "ramsey_budget": 10**6, "ramsey_cap": 8, "multiplicity_budget": 10**6},
            "sampling": {"seed": 3, "trials": 200},
        }
    )


@pytest.fixture
def runner():
    return CliRunner()
