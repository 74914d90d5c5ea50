"""Graph representation and exact counting kernels.

Graphs are immutable and store one adjacency bitset (a Python ``int``) per
vertex. Vertices are the dense labels ``0..n-1``; every generator documents
its labelling so witnesses can be reproduced.
"""

import logging
from dataclasses import dataclass
from functools import partial
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .errors import CountOverflowError, DomainError
from .parallel import apply_pool

logger = logging.getLogger(__name__)

UINT64_MAX = (1 << 64) - 1

Edge = Tuple[int, int]


def popcount(x: int) -> int:
    return x.bit_count()


def iter_bits(x: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def checked_count(value: int, what: str = "count") -> int:
    """Return ``value`` unchanged if it fits an unsigned 64-bit word."""
    if value > UINT64_MAX:
        raise CountOverflowError(f"{what} {value} exceeds the unsigned 64-bit range")
    return value


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1`` with bitset rows."""

    n: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"vertex count must be non-negative, got {self.n}")
        if len(self.rows) != self.n:
            raise DomainError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise DomainError(f"row {v} references a vertex outside 0..{self.n - 1}")
            if row >> v & 1:
                raise DomainError(f"vertex {v} is adjacent to itself")
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise DomainError(f"adjacency is not symmetric between {v} and {u}")

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a graph from an edge list.

        Args:
            n: Number of vertices
            edges: Pairs of distinct vertices in ``0..n-1``; duplicates are merged

        Returns:
            Graph instance

        Raises:
            DomainError: If an edge is a loop or leaves the vertex range
        """
        rows = [0] * n
        for edge in edges:
            u, v = int(edge[0]), int(edge[1])
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) is outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Convert a networkx graph, relabelling its nodes in iteration order."""
        relabelled = nx.convert_node_labels_to_integers(graph, ordering="default")
        return cls.from_edges(relabelled.number_of_nodes(), relabelled.edges())

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return popcount(self.rows[v])

    def degrees(self) -> List[int]:
        return [popcount(row) for row in self.rows]

    def edges(self) -> List[Edge]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.edge_count()})"


@dataclass(frozen=True)
class CliqueCount:
    r: int
    total: int


@dataclass(frozen=True)
class JointReport:
    r: int
    best_edge: Optional[Edge]
    size: int


@dataclass(frozen=True)
class KstCheck:
    """Outcome of a K_{s,t}-freeness test; ``witness`` is (s-set, t-set) when not free."""

    free: bool
    witness: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None

    def __bool__(self) -> bool:
        return self.free


def edge_count(g: Graph) -> int:
    return g.edge_count()


def min_degree(g: Graph) -> int:
    return min(g.degrees(), default=0)


def max_degree(g: Graph) -> int:
    return max(g.degrees(), default=0)


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows)))


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Subgraph induced on ``vertices``; vertex ``vertices[i]`` becomes ``i``."""
    if len(set(vertices)) != len(vertices):
        raise DomainError("induced_subgraph needs distinct vertices")
    index = {v: i for i, v in enumerate(vertices)}
    edges = [(index[u], index[v]) for u in vertices for v in iter_bits(g.rows[u]) if v in index and index[u] < index[v]]
    return Graph.from_edges(len(vertices), edges)


def degeneracy_order(g: Graph) -> List[int]:
    """Repeatedly remove a minimum-degree vertex (smallest label on ties)."""
    remaining = g.vertex_mask
    order = []
    while remaining:
        v = min(iter_bits(remaining), key=lambda x: (popcount(g.rows[x] & remaining), x))
        order.append(v)
        remaining &= ~(1 << v)
    return order


def count_cliques_within(rows: Sequence[int], candidates: int, k: int) -> int:
    """Number of k-cliques inside the vertex set ``candidates``."""
    if k == 0:
        return 1
    if k == 1:
        return popcount(candidates)
    total = 0
    for v in iter_bits(candidates):
        higher = candidates >> (v + 1) << (v + 1)
        rest = higher & rows[v]
        if popcount(rest) >= k - 1:
            total += count_cliques_within(rows, rest, k - 1)
    return total


def _forward_count(forward: Sequence[int], candidates: int, depth: int) -> int:
    if depth == 1:
        return popcount(candidates)
    total = 0
    for v in iter_bits(candidates):
        rest = candidates & forward[v]
        if popcount(rest) >= depth - 1:
            total += _forward_count(forward, rest, depth - 1)
    return total


def _count_from_root(forward: Tuple[int, ...], r: int, root: int) -> int:
    return _forward_count(forward, forward[root], r - 1)


def count_cliques(g: Graph, r: int, workers: int = 1) -> CliqueCount:
    """Count the r-vertex cliques of ``g``.

    Vertices are ordered by degeneracy and every clique is counted once from its
    earliest vertex, recursing on intersections of forward neighbourhoods.

    Args:
        g: Graph to count in
        r: Clique order, ``1 <= r <= n``
        workers: Processes used for the top-level branches

    Returns:
        CliqueCount with the exact total

    Raises:
        DomainError: If r is outside ``1..n``
        CountOverflowError: If the total exceeds the unsigned 64-bit range
    """
    if r < 1 or r > g.n:
        raise DomainError(f"clique order r={r} must satisfy 1 <= r <= n={g.n}")
    if r == 1:
        return CliqueCount(r, g.n)
    if r == 2:
        return CliqueCount(r, g.edge_count())
    order = degeneracy_order(g)
    position = {v: i for i, v in enumerate(order)}
    forward = tuple(
        mask_of(u for u in iter_bits(g.rows[v]) if position[u] > position[v]) for v in range(g.n)
    )
    roots = [v for v in order if popcount(forward[v]) >= r - 1]
    per_root = apply_pool(partial(_count_from_root, forward, r), roots, workers)
    total = 0
    for value in per_root:
        total = checked_count(total + value, f"K_{r} count")
    return CliqueCount(r, total)


def edge_clique_counts(g: Graph, r: int) -> Dict[Edge, int]:
    """For every edge, the number of r-cliques that contain it."""
    if r < 2:
        raise DomainError(f"joint order r={r} must be at least 2")
    return {
        (u, v): checked_count(count_cliques_within(g.rows, g.rows[u] & g.rows[v], r - 2))
        for u, v in g.edges()
    }


def joint_number(g: Graph, r: int) -> JointReport:
    """Largest number of r-cliques sharing one edge.

    Ties go to the lexicographically smallest edge. When no edge lies in an
    r-clique the report has size 0 and no edge.
    """
    best_edge: Optional[Edge] = None
    best = 0
    for edge, count in edge_clique_counts(g, r).items():
        if count > best:
            best, best_edge = count, edge
    return JointReport(r=r, best_edge=best_edge, size=best)


def _greedy_color_order(rows: Sequence[int], candidates: int) -> Tuple[List[int], List[int]]:
    order: List[int] = []
    bounds: List[int] = []
    uncolored = candidates
    color = 0
    while uncolored:
        color += 1
        available = uncolored
        while available:
            v = (available & -available).bit_length() - 1
            available &= ~rows[v] & ~(1 << v)
            uncolored &= ~(1 << v)
            order.append(v)
            bounds.append(color)
    return order, bounds


def max_clique(g: Graph) -> List[int]:
    """A maximum clique (sorted), by branch and bound with a greedy colouring bound."""
    best: List[int] = []
    current: List[int] = []

    def expand(candidates: int) -> None:
        nonlocal best
        order, bounds = _greedy_color_order(g.rows, candidates)
        for i in range(len(order) - 1, -1, -1):
            if len(current) + bounds[i] <= len(best):
                return
            v = order[i]
            current.append(v)
            rest = candidates & g.rows[v]
            if rest:
                expand(rest)
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            candidates &= ~(1 << v)

    expand(g.vertex_mask)
    return sorted(best)


def clique_number(g: Graph) -> int:
    return len(max_clique(g))


def independence_number(g: Graph) -> int:
    return clique_number(complement(g))


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    return all(g.has_edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1:])


def is_independent(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    return not any(g.has_edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1:])


def is_kst_free(g: Graph, s: int, t: int) -> KstCheck:
    """Test whether no s vertices have t common neighbours.

    Raises:
        DomainError: Unless ``1 <= s <= t``
    """
    if not 1 <= s <= t:
        raise DomainError(f"K_(s,t) needs 1 <= s <= t, got s={s}, t={t}")

    chosen: List[int] = []

    def search(start: int, common: int) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        if len(chosen) == s:
            return tuple(chosen), tuple(list(iter_bits(common))[:t])
        for v in range(start, g.n):
            narrowed = common & g.rows[v]
            if popcount(narrowed) < t:
                continue
            chosen.append(v)
            found = search(v + 1, narrowed)
            chosen.pop()
            if found:
                return found
        return None

    witness = search(0, g.vertex_mask)
    return KstCheck(free=witness is None, witness=witness)


def blow_up(g: Graph, sizes: Sequence[int]) -> Graph:
    """Replace vertex i by an independent set of ``sizes[i]`` vertices.

    Blocks are consecutive: vertex i occupies labels ``sum(sizes[:i])`` onwards.
    A size of 0 deletes the vertex.
    """
    if len(sizes) != g.n:
        raise DomainError(f"blow_up needs {g.n} part sizes, got {len(sizes)}")
    if any(size < 0 for size in sizes):
        raise DomainError("part sizes must be non-negative")
    offsets = np.concatenate(([0], np.cumsum(sizes))).astype(int).tolist()
    blocks = [((1 << sizes[i]) - 1) << offsets[i] for i in range(g.n)]
    rows: List[int] = []
    for i in range(g.n):
        row = 0
        for j in iter_bits(g.rows[i]):
            row |= blocks[j]
        rows.extend([row] * sizes[i])
    return Graph(offsets[-1], tuple(rows))


def part_blocks(sizes: Sequence[int]) -> List[List[int]]:
    """Consecutive vertex blocks for the given part sizes."""
    blocks, start = [], 0
    for size in sizes:
        blocks.append(list(range(start, start + size)))
        start += size
    return blocks


def complete_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.complete_graph(n))


def empty_graph(n: int) -> Graph:
    return Graph.empty(n)


def cycle_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.cycle_graph(n))


def path_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.path_graph(n))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph.from_networkx(nx.star_graph(leaves))


def complete_multipartite(*sizes: int) -> Graph:
    """Complete multipartite graph with consecutive parts."""
    return Graph.from_networkx(nx.complete_multipartite_graph(*sizes))


def petersen_graph() -> Graph:
    return Graph.from_networkx(nx.petersen_graph())


def fano_incidence_graph() -> Graph:
    """Point-line incidence graph of the Fano plane (the Heawood graph)."""
    return Graph.from_networkx(nx.heawood_graph())


def prism_graph() -> Graph:
    """3-prism: triangles {0,1,2} and {3,4,5}, matching i--i+3."""
    return Graph.from_networkx(nx.circular_ladder_graph(3))


def perfect_matching_graph(pairs: int) -> Graph:
    return Graph.from_edges(2 * pairs, [(2 * i, 2 * i + 1) for i in range(pairs)])


NAMED_GRAPHS: Dict[str, Callable[[], Graph]] = {
    "k1": partial(complete_graph, 1),
    "k2": partial(complete_graph, 2),
    "k3": partial(complete_graph, 3),
    "k4": partial(complete_graph, 4),
    "k5": partial(complete_graph, 5),
    "k6": partial(complete_graph, 6),
    "p3": partial(path_graph, 3),
    "p4": partial(path_graph, 4),
    "c4": partial(cycle_graph, 4),
    "c5": partial(cycle_graph, 5),
    "k13": partial(star_graph, 3),
    "star3": partial(star_graph, 3),
    "paw": lambda: Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)]),
    "diamond": lambda: Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]),
    "k22": partial(complete_multipartite, 2, 2),
    "petersen": petersen_graph,
    "fano": fano_incidence_graph,
    "prism": prism_graph,
}


def named_graph(name: str) -> Graph:
    """Look up a graph in :data:`NAMED_GRAPHS` (case-insensitive)."""
    key = name.lower()
    if key not in NAMED_GRAPHS:
        raise DomainError(f"unknown graph name {name!r}; known: {', '.join(sorted(NAMED_GRAPHS))}")
    return NAMED_GRAPHS[key]()


def random_graph(n: int, p: float, seed: Optional[int] = None, rng: Optional[np.random.Generator] = None) -> Graph:
    """Binomial random graph G(n, p).

    One uniform draw per pair, pairs in lexicographic order, from a PCG64
    ``numpy.random.Generator``; the same seed gives the same graph everywhere.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"edge probability must lie in [0, 1], got {p}")
    rng = rng if rng is not None else np.random.default_rng(seed)
    upper = np.triu_indices(n, k=1)
    keep = rng.random(len(upper[0])) < p
    return Graph.from_edges(n, zip(upper[0][keep].tolist(), upper[1][keep].tolist()))


def random_graph_with_edges(n: int, m: int, seed: Optional[int] = None, rng: Optional[np.random.Generator] = None) -> Graph:
    """Uniform random graph with exactly ``m`` edges."""
    total = n * (n - 1) // 2
    if not 0 <= m <= total:
        raise DomainError(f"cannot place {m} edges on {n} vertices")
    rng = rng if rng is not None else np.random.default_rng(seed)
    upper = np.triu_indices(n, k=1)
    chosen = np.sort(rng.choice(total, size=m, replace=False))
    return Graph.from_edges(n, zip(upper[0][chosen].tolist(), upper[1][chosen].tolist()))
