"""Monochromatic copy counts, exact Ramsey multiplicity and random-colouring estimates."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, sqrt
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .coloring import (
    EdgeColoring,
    PatternMatcher,
    copies_in_complete,
    count_pendant_cliques,
    partition_classes,
    partition_coloring,
)
from .edge_search import minimise_mono
from .errors import DomainError, InvariantViolation
from .graph import Graph, checked_count, mask_of
from .report import SearchReport, Stopwatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonoCount:
    """Monochromatic copies of a pattern, one count per colour."""

    per_color: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.per_color)

    def to_dict(self) -> Dict[str, Any]:
        return {"per_color": list(self.per_color), "total": self.total}


def _require_pattern(h: Graph) -> None:
    if h.edge_count() == 0:
        raise DomainError("pattern has no edges")
    if any(d == 0 for d in h.degrees()):
        raise DomainError("pattern has isolated vertices; remove them first")


def count_mono(c: EdgeColoring, h: Graph, workers: int = 1) -> MonoCount:
    """Exact number of copies of ``h`` in each colour class of ``c``.

    Raises:
        DomainError: If ``h`` is edgeless or has isolated vertices
    """
    _require_pattern(h)
    if h.n > c.n:
        return MonoCount(tuple(0 for _ in range(c.q)))
    matcher = PatternMatcher(h)
    universe = (1 << c.n) - 1
    counts = tuple(
        checked_count(matcher.count(c.class_rows[color], universe, workers), "copy count") for color in range(c.q)
    )
    return MonoCount(counts)


def count_mono_in_parts(c: EdgeColoring, h: Graph, parts: List[List[int]], color: int) -> int:
    """Copies of ``h`` in ``color`` whose vertices all lie inside one of ``parts``."""
    _require_pattern(h)
    matcher = PatternMatcher(h)
    rows = c.class_rows[color]
    return sum(matcher.count(rows, mask_of(part)) for part in parts)


def pendant_clique_pattern(k: int, ell: int) -> Graph:
    """A k-clique on ``0..k-1`` with leaves ``k..k+ell-1`` attached to vertex 0."""
    if k < 2 or ell < 0:
        raise DomainError(f"need k >= 2 and ell >= 0, got k={k}, ell={ell}")
    edges = [(u, v) for u in range(k) for v in range(u + 1, k)] + [(0, k + i) for i in range(ell)]
    return Graph.from_edges(k + ell, edges)


def goodman_minimum(n: int) -> int:
    """Fewest monochromatic triangles over 2-colourings of K_n."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    return comb(n, 3) - n * ((n - 1) ** 2 // 4) // 2


def partition_coloring_bound(k: int, h: int) -> Fraction:
    """Limit proportion (k-1)^(1-h) of red copies in the partition colouring with k-1 parts."""
    if k < 2 or h < 1:
        raise DomainError(f"need k >= 2 and h >= 1, got k={k}, h={h}")
    return Fraction(1, (k - 1) ** (h - 1))


def multiplicity_exact(
    h: Graph, n: int, q: int, budget: int = 10**7, symmetry: bool = True, workers: int = 1
) -> SearchReport:
    """Minimum number of monochromatic copies of ``h`` over all q-colourings of K_n.

    Over budget the report holds the interval from 0 to the best colouring
    found and is flagged inexact.

    Returns:
        SearchReport with the minimum as ``value`` and a minimising colouring
        (JSON form) as witness
    """
    _require_pattern(h)
    if n < 0 or q < 1:
        raise DomainError(f"need n >= 0 and q >= 1, got n={n}, q={q}")
    command = f"mult exact h={h.n}v{h.edge_count()}e n={n} q={q}"
    with Stopwatch() as watch:
        result = minimise_mono(h, n, q, symmetry=symmetry, budget=budget, workers=workers)
    witness = result.coloring.to_dict() if result.coloring is not None else None
    details = {"n": n, "q": q, "pattern_vertices": h.n, "pattern_edges": h.edge_count(),
               "copies_in_complete": copies_in_complete(h, n)}
    common = {"command": command, "nodes": result.nodes, "elapsed": watch.elapsed, "witness": witness}
    if not result.complete:
        logger.warning(f"Multiplicity search for n={n}, q={q} stopped at the budget of {budget} nodes")
        return SearchReport(status="interval", lower=0, upper=result.value, exact=False, details=details, **common)
    if result.coloring is not None and count_mono(result.coloring, h).total != result.value:
        raise InvariantViolation(f"witness does not reproduce the minimum {result.value}")
    return SearchReport(value=result.value, lower=result.value, upper=result.value, details=details, **common)


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Mean monochromatic proportion over random colourings against q^(1-m)."""

    n: int
    q: int
    trials: int
    seed: Optional[int]
    mean: float
    std_error: float
    bound: float

    @property
    def deviation(self) -> float:
        """Distance from the bound in standard errors (0 when the error is 0)."""
        if self.std_error == 0:
            return 0.0 if self.mean == self.bound else float("inf")
        return abs(self.mean - self.bound) / self.std_error

    @property
    def within_three_se(self) -> bool:
        return self.deviation <= 3.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "q": self.q,
            "trials": self.trials,
            "seed": self.seed,
            "mean": self.mean,
            "std_error": self.std_error,
            "bound": self.bound,
            "deviation": self.deviation,
            "within_three_se": self.within_three_se,
        }


def _triangle_counts(colors: np.ndarray, n: int, q: int, upper: Tuple[np.ndarray, np.ndarray]) -> int:
    total = 0
    for c in range(q):
        adjacency = np.zeros((n, n), dtype=np.int64)
        chosen = colors == c
        adjacency[upper[0][chosen], upper[1][chosen]] = 1
        adjacency += adjacency.T
        total += int(np.trace(adjacency @ adjacency @ adjacency)) // 6
    return total


def multiplicity_upper_estimate(h: Graph, n: int, q: int, trials: int = 10_000, seed: Optional[int] = 0) -> MonteCarloEstimate:
    """Monte-Carlo monochromatic proportion of ``h`` in uniform q-colourings of K_n.

    One PCG64 stream seeded by ``seed`` draws ``C(n, 2)`` colours per trial in
    lexicographic pair order.
    """
    _require_pattern(h)
    if trials < 1 or q < 1 or n < h.n:
        raise DomainError(f"need trials >= 1, q >= 1 and n >= {h.n}, got trials={trials}, q={q}, n={n}")
    rng = np.random.default_rng(seed)
    upper = np.triu_indices(n, k=1)
    denominator = copies_in_complete(h, n)
    is_triangle = h.n == 3 and h.edge_count() == 3
    matcher = PatternMatcher(h)
    universe = (1 << n) - 1
    samples = np.empty(trials, dtype=np.float64)
    for trial in range(trials):
        colors = rng.integers(q, size=len(upper[0]))
        if q == 1 or h.edge_count() == 1:
            mono = denominator
        elif is_triangle:
            mono = _triangle_counts(colors, n, q, upper)
        else:
            coloring = EdgeColoring(n, q, tuple(colors.tolist()))
            mono = sum(matcher.count(coloring.class_rows[c], universe) for c in range(q))
        samples[trial] = mono / denominator
    mean = float(samples.mean())
    std_error = float(samples.std(ddof=1) / sqrt(trials)) if trials > 1 else 0.0
    estimate = MonteCarloEstimate(n, q, trials, seed, mean, std_error, float(q) ** (1 - h.edge_count()))
    logger.debug(f"Random {q}-colourings of K_{n}: mean {mean:.6f} +- {std_error:.6f}, bound {estimate.bound:.6f}")
    return estimate


def partition_coloring_report(k: int, ell: int, n: int) -> Dict[str, Any]:
    """Red and blue copies of the pendant-clique pattern in the partition colouring with k-1 parts."""
    pattern = pendant_clique_pattern(k, ell)
    coloring = partition_coloring(n, k - 1)
    universe = (1 << n) - 1
    red = count_pendant_cliques(coloring.class_rows[0], universe, k, ell)
    blue = count_pendant_cliques(coloring.class_rows[1], universe, k, ell)
    inside = count_mono_in_parts(coloring, pattern, partition_classes(n, k - 1), 0)
    return {
        "k": k,
        "ell": ell,
        "n": n,
        "red": red,
        "blue": blue,
        "red_inside_parts": inside,
        "copies_in_complete": copies_in_complete(pattern, n),
        "limit_bound": str(partition_coloring_bound(k, pattern.n)),
    }
