"""pyextremal - exact finite checks for extremal and Ramsey-type graph problems."""

__version__ = "0.1.0"

from .config import ToolkitConfig, load_config
from .graph import Graph
from .coloring import EdgeColoring
from .report import SearchReport
from .errors import (
    BudgetExceeded,
    DomainError,
    InvariantViolation,
    PyExtremalError,
)

__all__ = [
    "ToolkitConfig",
    "load_config",
    "Graph",
    "EdgeColoring",
    "SearchReport",
    "BudgetExceeded",
    "DomainError",
    "InvariantViolation",
    "PyExtremalError",
]
