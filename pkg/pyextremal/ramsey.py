"""Exact two-colour Ramsey numbers of small patterns.

r(H) is found by increasing n until no red/blue colouring of K_n avoids a
monochromatic copy of H. Isolated vertices of H are dropped for the search but
still count towards v(H): no copy fits on fewer than v(H) vertices. Edgeless
patterns get r = 1 by convention.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from math import comb, log2
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx
import numpy as np

from .coloring import EdgeColoring
from .edge_search import find_free_coloring
from .errors import DomainError, InvariantViolation
from .graph import Graph, induced_subgraph, random_graph
from .multiplicity import count_mono
from .report import SearchReport, Stopwatch

logger = logging.getLogger(__name__)

# documentation and tests only; the search never reads it
KNOWN_RAMSEY_NUMBERS: Dict[str, int] = {
    "k2": 2,
    "p3": 3,
    "p4": 5,
    "k13": 6,
    "c4": 6,
    "k3": 6,
    "paw": 7,
    "diamond": 10,
    "k4": 18,
}


def strip_isolated(h: Graph) -> Graph:
    return induced_subgraph(h, [v for v in range(h.n) if h.degree(v)])


def clique_bound(v: int) -> int:
    """Upper bound C(2v-2, v-1) >= r(K_v) >= r(H) for any H on v vertices."""
    return comb(2 * v - 2, v - 1) if v >= 1 else 1


@dataclass(frozen=True)
class RamseyResult:
    """r(H) or an interval containing it.

    ``witness`` colours K_{lower-1} with no monochromatic copy of the pattern.
    """

    pattern: Graph
    lower: int
    upper: Optional[int]
    witness: Optional[EdgeColoring]
    nodes: int = 0

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    @property
    def value(self) -> Optional[int]:
        return self.lower if self.exact else None

    def to_report(self, command: str, elapsed: float = 0.0) -> SearchReport:
        return SearchReport(
            command=command,
            status="complete" if self.exact else "interval",
            value=self.value,
            lower=self.lower,
            upper=self.upper,
            exact=self.exact,
            witness=self.witness.to_dict() if self.witness is not None else None,
            nodes=self.nodes,
            elapsed=elapsed,
            details={"pattern_vertices": self.pattern.n, "pattern_edges": self.pattern.edge_count()},
        )


def _check_witness(witness: EdgeColoring, core: Graph) -> None:
    if witness.n >= core.n and count_mono(witness, core).total != 0:
        raise InvariantViolation(f"witness on {witness.n} vertices contains a monochromatic copy")


def ramsey_exact(
    h: Graph, n_cap: int = 12, budget: int = 10**9, symmetry: bool = True, workers: int = 1
) -> RamseyResult:
    """Smallest n with a monochromatic copy of ``h`` in every red/blue colouring of K_n.

    Args:
        h: Pattern (isolated vertices allowed)
        n_cap: Largest n searched
        budget: Total search nodes over all n
        symmetry: Canonical row-0 pruning; off colours every pair freely
        workers: Processes for the row-0 branches

    Returns:
        RamseyResult, exact or an interval when the cap or the budget cut the search
    """
    core = strip_isolated(h)
    if core.edge_count() == 0:
        return RamseyResult(h, 1, 1, EdgeColoring(0, 2, ()))
    v = h.n
    upper = clique_bound(v)
    witness = EdgeColoring(v - 1, 2, (0,) * comb(v - 1, 2))
    nodes = 0
    for n in range(v, n_cap + 1):
        remaining = budget - nodes
        if remaining <= 0:
            logger.warning(f"Ramsey search out of budget before n={n}")
            return RamseyResult(h, n, upper, witness, nodes)
        result = find_free_coloring(core, n, 2, symmetry=symmetry, budget=remaining, workers=workers)
        nodes += result.nodes
        if result.coloring is not None:
            logger.debug(f"K_{n} has a colouring without a monochromatic copy ({result.nodes} nodes)")
            _check_witness(result.coloring, core)
            witness = result.coloring
            continue
        if result.complete:
            logger.debug(f"Every colouring of K_{n} has a monochromatic copy ({result.nodes} nodes)")
            return RamseyResult(h, n, n, witness, nodes)
        logger.warning(f"Ramsey search out of budget at n={n}")
        return RamseyResult(h, n, upper, witness, nodes)
    return RamseyResult(h, max(v, n_cap + 1), upper, witness, nodes)


@dataclass(frozen=True)
class SandwichReport:
    """r(H') <= r(H) <= 2 v(H') r(H') for H' = H minus one vertex."""

    full: RamseyResult
    deleted: RamseyResult
    deleted_vertex: int
    lower_inequality: Optional[bool]
    upper_inequality: Optional[bool]
    factor: int

    @property
    def status(self) -> str:
        if self.lower_inequality is False or self.upper_inequality is False:
            return "violated"
        if self.lower_inequality and self.upper_inequality:
            return "holds"
        return "inconclusive"

    @property
    def ratio(self) -> Optional[float]:
        if self.full.exact and self.deleted.exact:
            return self.full.value / self.deleted.value
        return None

    def to_dict(self) -> Dict[str, Any]:
        def interval(result: RamseyResult) -> List[Optional[int]]:
            return [result.lower, result.upper]

        return {
            "deleted_vertex": self.deleted_vertex,
            "r_full": interval(self.full),
            "r_deleted": interval(self.deleted),
            "factor": self.factor,
            "lower_inequality": self.lower_inequality,
            "upper_inequality": self.upper_inequality,
            "ratio": self.ratio,
            "status": self.status,
        }


class IsomorphismCache:
    """Ramsey results keyed by Weisfeiler-Lehman hash, confirmed by an exact isomorphism test."""

    def __init__(self, n_cap: int = 12, budget: int = 10**9, workers: int = 1):
        self.n_cap = n_cap
        self.budget = budget
        self.workers = workers
        self._table: Dict[str, List[Tuple[nx.Graph, RamseyResult]]] = {}

    def __len__(self) -> int:
        return sum(len(bucket) for bucket in self._table.values())

    def ramsey(self, h: Graph) -> RamseyResult:
        graph = h.to_networkx()
        key = nx.weisfeiler_lehman_graph_hash(graph)
        for candidate, result in self._table.get(key, []):
            if nx.is_isomorphic(candidate, graph):
                return result
        result = ramsey_exact(h, n_cap=self.n_cap, budget=self.budget, workers=self.workers)
        self._table.setdefault(key, []).append((graph, result))
        return result


def _at_most(a_low: int, a_high: Optional[int], b_low: int, b_high: Optional[int]) -> Optional[bool]:
    """Whether a <= b for a in [a_low, a_high] and b in [b_low, b_high]; None if undecided."""
    if a_high is not None and a_high <= b_low:
        return True
    if b_high is not None and a_low > b_high:
        return False
    return None


def verify_sandwich(
    h: Graph,
    deleted_vertex: int,
    n_cap: int = 12,
    budget: int = 10**9,
    workers: int = 1,
    cache: Optional[IsomorphismCache] = None,
) -> SandwichReport:
    """Check both vertex-deletion bounds on r(H), with intervals where searches were cut.

    A shared ``cache`` avoids recomputing patterns seen before; its own cap and
    budget then apply.
    """
    if not 0 <= deleted_vertex < h.n:
        raise DomainError(f"vertex {deleted_vertex} is not in the pattern on {h.n} vertices")
    cache = cache if cache is not None else IsomorphismCache(n_cap=n_cap, budget=budget, workers=workers)
    smaller = induced_subgraph(h, [v for v in range(h.n) if v != deleted_vertex])
    full = cache.ramsey(h)
    deleted = cache.ramsey(smaller)
    factor = 2 * smaller.n
    scaled_high = factor * deleted.upper if deleted.upper is not None else None
    report = SandwichReport(
        full=full,
        deleted=deleted,
        deleted_vertex=deleted_vertex,
        lower_inequality=_at_most(deleted.lower, deleted.upper, full.lower, full.upper),
        upper_inequality=_at_most(full.lower, full.upper, factor * deleted.lower, scaled_high),
        factor=factor,
    )
    logger.debug(f"Sandwich at vertex {deleted_vertex}: {report.status}")
    return report


@dataclass
class RamseySample:
    """Distribution of log2 r over random patterns; unresolved samples are censored intervals."""

    n: int
    p: float
    trials: int
    seed: Optional[int]
    values: List[int] = field(default_factory=list)
    censored: List[Tuple[int, Optional[int]]] = field(default_factory=list)
    distinct_patterns: int = 0

    @property
    def log_values(self) -> List[float]:
        return [log2(v) for v in self.values]

    @property
    def mean_log(self) -> Optional[float]:
        return float(np.mean(self.log_values)) if self.values else None

    @property
    def spread(self) -> Optional[float]:
        """Range of log2 r over resolved samples."""
        logs = self.log_values
        return max(logs) - min(logs) if logs else None

    @property
    def std_log(self) -> Optional[float]:
        return float(np.std(self.log_values)) if self.values else None

    def histogram(self) -> Dict[int, int]:
        return dict(sorted(Counter(self.values).items()))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "p": self.p,
            "trials": self.trials,
            "seed": self.seed,
            "resolved": len(self.values),
            "histogram": {str(k): v for k, v in self.histogram().items()},
            "mean_log2": self.mean_log,
            "std_log2": self.std_log,
            "spread_log2": self.spread,
            "censored": [list(c) for c in self.censored],
            "distinct_patterns": self.distinct_patterns,
        }


def sample_random_ramsey(
    n: int,
    p: float,
    trials: int,
    seed: Optional[int] = 0,
    n_cap: int = 12,
    budget: int = 10**9,
    workers: int = 1,
) -> RamseySample:
    """r of G(n, p) with isolated vertices removed, over ``trials`` seeded samples."""
    if trials < 1:
        raise DomainError(f"need at least one trial, got {trials}")
    rng = np.random.default_rng(seed)
    sample = RamseySample(n=n, p=p, trials=trials, seed=seed)
    cache = IsomorphismCache(n_cap=n_cap, budget=budget, workers=workers)
    for _ in range(trials):
        result = cache.ramsey(strip_isolated(random_graph(n, p, rng=rng)))
        if result.exact:
            sample.values.append(result.value)
        else:
            sample.censored.append((result.lower, result.upper))
    sample.distinct_patterns = len(cache)
    logger.debug(f"Sampled {trials} patterns, {sample.distinct_patterns} up to isomorphism")
    return sample


def ramsey_report(h: Graph, name: str, n_cap: int, budget: int, symmetry: bool = True, workers: int = 1) -> SearchReport:
    with Stopwatch() as watch:
        result = ramsey_exact(h, n_cap=n_cap, budget=budget, symmetry=symmetry, workers=workers)
    return result.to_report(f"ramsey exact {name} cap={n_cap}", watch.elapsed)
