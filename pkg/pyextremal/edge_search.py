"""Depth-first search over edge colourings of K_n.

Shared by the Ramsey and multiplicity searches. Pairs are coloured in a fixed
order and copies of the pattern are detected on the pair that completes them.

With symmetry on, vertex 0's row is coloured first in canonical form: colours
non-decreasing along ``(0,1), (0,2), ...``, contiguous from 0, with class sizes
non-increasing (every colouring is equivalent to one of these under vertex and
colour relabelling). The remaining pairs follow in colex order and may only use
colours already seen plus the next fresh one. Each canonical row is one branch;
branches are independent and can run in parallel.
"""

import logging
from dataclasses import dataclass
from functools import partial
from typing import Dict, Iterator, List, Optional, Tuple

from .coloring import EdgeColoring, PatternMatcher
from .errors import BudgetExceeded
from .graph import Graph
from .parallel import apply_pool

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def colex_pairs(n: int, start: int = 0) -> List[Edge]:
    """Pairs of ``start..n-1`` ordered by larger endpoint, then smaller."""
    return [(u, v) for v in range(start + 1, n) for u in range(start, v)]


def search_order(n: int, symmetry: bool = True) -> List[Edge]:
    if not symmetry:
        return colex_pairs(n)
    return [(0, v) for v in range(1, n)] + colex_pairs(n, start=1)


def _partitions(total: int, parts: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    if parts == 0:
        return
    for first in range(min(total, largest), 0, -1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def row_prefixes(n: int, q: int, symmetry: bool = True) -> List[Tuple[int, ...]]:
    """Canonical colour sequences for vertex 0's row, most balanced first."""
    if not symmetry or n < 2:
        return [()]
    shapes = sorted(_partitions(n - 1, q, n - 1), key=lambda p: (p[0], p))
    return [tuple(c for c, size in enumerate(shape) for _ in range(size)) for shape in shapes]


class ColoringSearch:
    """Mutable search state for one branch."""

    def __init__(self, h: Graph, n: int, q: int, symmetry: bool, budget: int):
        self.matcher = PatternMatcher(h)
        self.n = n
        self.q = q
        self.symmetry = symmetry
        self.budget = budget
        self.order = search_order(n, symmetry)
        self.rows = [[0] * n for _ in range(q)]
        self.colors = [0] * len(self.order)
        self.universe = (1 << n) - 1
        self.nodes = 0
        self.best: Optional[int] = None
        self.best_colors: Optional[Tuple[int, ...]] = None

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"search passed {self.budget} nodes", estimate=self.nodes, budget=self.budget)

    def _toggle(self, index: int, c: int) -> None:
        u, v = self.order[index]
        self.rows[c][u] ^= 1 << v
        self.rows[c][v] ^= 1 << u

    def _allowed(self, top: int) -> range:
        if not self.symmetry:
            return range(self.q)
        return range(min(self.q, top + 2))

    # existence -------------------------------------------------------------

    def find_free(self, prefix: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
        """A colouring extending ``prefix`` with no monochromatic copy, or None."""
        top = -1
        for index, c in enumerate(prefix):
            self._tick()
            self._toggle(index, c)
            self.colors[index] = c
            top = max(top, c)
            if self.matcher.occurs_through(self.rows[c], self.universe, *self.order[index]):
                return None
        return self._free_from(len(prefix), top)

    def _free_from(self, index: int, top: int) -> Optional[Tuple[int, ...]]:
        if index == len(self.order):
            return tuple(self.colors)
        u, v = self.order[index]
        for c in self._allowed(top):
            self._tick()
            self._toggle(index, c)
            self.colors[index] = c
            if not self.matcher.occurs_through(self.rows[c], self.universe, u, v):
                found = self._free_from(index + 1, max(top, c))
                if found is not None:
                    return found
            self._toggle(index, c)
        return None

    # minimisation ----------------------------------------------------------

    def minimise(self, prefix: Tuple[int, ...]) -> None:
        """Branch and bound for the fewest monochromatic copies; fills ``best``."""
        top = -1
        total = 0
        for index, c in enumerate(prefix):
            self._tick()
            self._toggle(index, c)
            self.colors[index] = c
            top = max(top, c)
            total += self.matcher.copies_through(self.rows[c], self.universe, *self.order[index])
        self._min_from(len(prefix), top, total)

    def _min_from(self, index: int, top: int, total: int) -> None:
        if index == len(self.order):
            self.best = total
            self.best_colors = tuple(self.colors)
            logger.debug(f"New best {total} after {self.nodes} nodes")
            return
        u, v = self.order[index]
        options = []
        for c in self._allowed(top):
            self._toggle(index, c)
            options.append((self.matcher.copies_through(self.rows[c], self.universe, u, v), c))
            self._toggle(index, c)
        options.sort()
        for gain, c in options:
            if self.best is not None and total + gain >= self.best:
                break
            self._tick()
            self._toggle(index, c)
            self.colors[index] = c
            self._min_from(index + 1, max(top, c), total + gain)
            self._toggle(index, c)

    def to_coloring(self, colors: Tuple[int, ...]) -> EdgeColoring:
        lookup: Dict[Edge, int] = dict(zip(self.order, colors))
        return EdgeColoring.from_function(self.n, self.q, lambda u, v: lookup[(u, v)])


@dataclass(frozen=True)
class BranchOutcome:
    """Result of one row-0 branch."""

    prefix: Tuple[int, ...]
    nodes: int
    exceeded: bool
    coloring: Optional[EdgeColoring] = None
    value: Optional[int] = None


def _free_branch(h: Graph, n: int, q: int, symmetry: bool, budget: int, prefix: Tuple[int, ...]) -> BranchOutcome:
    search = ColoringSearch(h, n, q, symmetry, budget)
    try:
        found = search.find_free(prefix)
    except BudgetExceeded:
        return BranchOutcome(prefix, search.nodes, True)
    coloring = search.to_coloring(found) if found is not None else None
    return BranchOutcome(prefix, search.nodes, False, coloring)


def _min_branch(h: Graph, n: int, q: int, symmetry: bool, budget: int, prefix: Tuple[int, ...]) -> BranchOutcome:
    search = ColoringSearch(h, n, q, symmetry, budget)
    exceeded = False
    try:
        search.minimise(prefix)
    except BudgetExceeded:
        exceeded = True
    coloring = search.to_coloring(search.best_colors) if search.best_colors is not None else None
    return BranchOutcome(prefix, search.nodes, exceeded, coloring, search.best)


@dataclass(frozen=True)
class FreeSearch:
    """Outcome of :func:`find_free_coloring`.

    ``coloring`` is set when a colouring without monochromatic copies was
    found. Otherwise ``complete`` tells whether the absence is proven.
    """

    coloring: Optional[EdgeColoring]
    nodes: int
    complete: bool


def find_free_coloring(
    h: Graph, n: int, q: int = 2, symmetry: bool = True, budget: int = 10**9, workers: int = 1
) -> FreeSearch:
    """Search for a q-colouring of K_n without a monochromatic copy of ``h``.

    The node budget is split evenly over the row-0 branches so the outcome
    does not depend on ``workers``.
    """
    prefixes = row_prefixes(n, q, symmetry)
    share = max(1, budget // len(prefixes))
    run = partial(_free_branch, h, n, q, symmetry, share)
    if workers <= 1:
        outcomes = []
        for prefix in prefixes:
            outcomes.append(run(prefix))
            if outcomes[-1].coloring is not None:
                break
    else:
        outcomes = apply_pool(run, [(p,) for p in prefixes], workers)
    nodes = 0
    exceeded = False
    for outcome in outcomes:
        nodes += outcome.nodes
        exceeded = exceeded or outcome.exceeded
        if outcome.coloring is not None:
            return FreeSearch(outcome.coloring, nodes, True)
    logger.debug(f"No free colouring of K_{n}: {nodes} nodes, complete={not exceeded}")
    return FreeSearch(None, nodes, not exceeded)


@dataclass(frozen=True)
class MinSearch:
    """Outcome of :func:`minimise_mono`; ``value`` is exact only when ``complete``."""

    value: Optional[int]
    coloring: Optional[EdgeColoring]
    nodes: int
    complete: bool


def minimise_mono(
    h: Graph, n: int, q: int, symmetry: bool = True, budget: int = 10**7, workers: int = 1
) -> MinSearch:
    """Fewest monochromatic copies of ``h`` over q-colourings of K_n.

    Ties between branches go to the earliest branch.
    """
    prefixes = row_prefixes(n, q, symmetry)
    share = max(1, budget // len(prefixes))
    outcomes = apply_pool(partial(_min_branch, h, n, q, symmetry, share), [(p,) for p in prefixes], workers)
    best: Optional[BranchOutcome] = None
    for outcome in outcomes:
        if outcome.value is not None and (best is None or outcome.value < best.value):
            best = outcome
    nodes = sum(outcome.nodes for outcome in outcomes)
    complete = not any(outcome.exceeded for outcome in outcomes)
    if best is None:
        return MinSearch(None, None, nodes, complete)
    return MinSearch(best.value, best.coloring, nodes, complete)
