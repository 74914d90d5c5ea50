"""Connected matchings in graphs with independence number at most two.

An s-connected matching is a set of disjoint edges such that every two of them
are joined by at least s edges of the graph. Maximum ones are maximum cliques
of the compatibility graph on the edges (disjoint and at least s connections),
so the exact search reuses the bitset clique search.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, InvariantViolation
from .graph import Graph, complement, count_cliques_within, iter_bits, max_clique, min_degree, popcount

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

MODES = ("greedy", "exact")


def alpha_at_most_2(g: Graph) -> bool:
    """True iff the complement of ``g`` is triangle-free."""
    if g.n < 3:
        return True
    return count_cliques_within(complement(g).rows, g.vertex_mask, 3) == 0


def connections(g: Graph, e: Edge, f: Edge) -> int:
    """Edges of ``g`` between the endpoints of ``e`` and those of ``f``."""
    ends = (1 << f[0]) | (1 << f[1])
    return popcount(g.rows[e[0]] & ends) + popcount(g.rows[e[1]] & ends)


def _disjoint(e: Edge, f: Edge) -> bool:
    return not set(e) & set(f)


@dataclass(frozen=True)
class MatchingCert:
    """Disjoint edges with their pairwise connection counts."""

    edges: Tuple[Edge, ...]
    s: int
    pairwise_counts: Tuple[Tuple[int, ...], ...]

    @classmethod
    def build(cls, g: Graph, edges: Sequence[Edge], s: int) -> "MatchingCert":
        edges = tuple(sorted(tuple(sorted(e)) for e in edges))
        counts = tuple(
            tuple(connections(g, e, f) if i != j else 0 for j, f in enumerate(edges)) for i, e in enumerate(edges)
        )
        return cls(edges, s, counts)

    @property
    def size(self) -> int:
        return len(self.edges)

    def validate(self, g: Graph) -> None:
        """Recompute everything from ``g``.

        Raises:
            InvariantViolation: On a non-edge, shared endpoint, wrong count or a pair below s
        """
        for e in self.edges:
            if not g.has_edge(*e):
                raise InvariantViolation(f"{e} is not an edge")
        for i, e in enumerate(self.edges):
            for j, f in enumerate(self.edges):
                if i == j:
                    continue
                if not _disjoint(e, f):
                    raise InvariantViolation(f"edges {e} and {f} share a vertex")
                count = connections(g, e, f)
                if count != self.pairwise_counts[i][j]:
                    raise InvariantViolation(f"stored count {self.pairwise_counts[i][j]} for {e}, {f} is really {count}")
                if count < self.s or count > 4:
                    raise InvariantViolation(f"edges {e} and {f} have {count} connections, need {self.s}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "s": self.s,
            "size": self.size,
            "edges": [list(e) for e in self.edges],
            "pairwise_counts": [list(row) for row in self.pairwise_counts],
        }


def _check_s(s: int, allowed: Sequence[int]) -> None:
    if s not in allowed:
        raise DomainError(f"connectivity s={s} must be one of {list(allowed)}")


def candidate_edges(g: Graph) -> List[Edge]:
    """Edges by degree sum, largest first; ties lexicographic."""
    degrees = g.degrees()
    return sorted(g.edges(), key=lambda e: (-(degrees[e[0]] + degrees[e[1]]), e))


def max_s_connected_matching(g: Graph, s: int) -> MatchingCert:
    """A maximum s-connected matching, found exactly."""
    _check_s(s, (1, 2, 3, 4))
    edges = candidate_edges(g)
    compatible = Graph.from_edges(
        len(edges),
        [
            (i, j)
            for i in range(len(edges))
            for j in range(i + 1, len(edges))
            if _disjoint(edges[i], edges[j]) and connections(g, edges[i], edges[j]) >= s
        ],
    )
    chosen = max_clique(compatible) if edges else []
    cert = MatchingCert.build(g, [edges[i] for i in chosen], s)
    cert.validate(g)
    logger.debug(f"Maximum {s}-connected matching has {cert.size} edges")
    return cert


@dataclass(frozen=True)
class PairNeighborhoods:
    """Vertices other than u, v adjacent to neither (A) or to at most one (B) of them."""

    u: int
    v: int
    A: int
    B: int

    @property
    def a_size(self) -> int:
        return popcount(self.A)

    @property
    def b_size(self) -> int:
        return popcount(self.B)

    def to_dict(self) -> Dict[str, Any]:
        return {"u": self.u, "v": self.v, "A": list(iter_bits(self.A)), "B": list(iter_bits(self.B))}


def pair_neighborhoods(g: Graph, u: int, v: int) -> PairNeighborhoods:
    if u == v:
        raise DomainError(f"need two distinct vertices, got {u} twice")
    others = g.vertex_mask & ~((1 << u) | (1 << v))
    a = others & ~(g.rows[u] | g.rows[v])
    b = others & ~(g.rows[u] & g.rows[v])
    return PairNeighborhoods(u, v, a, b)


def default_threshold(n: int, t: int) -> int:
    """ceil(10 t^2 / n): the bound on |A_{u,v}| kept by the candidate filter."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    return ceil(10 * t * t / n)


@dataclass(frozen=True)
class AuxiliaryGraph:
    """Conflict graph on candidate edges: adjacent when sharing a vertex or joined by fewer than s edges."""

    graph: Graph
    pairs: Tuple[Edge, ...]
    s: int


def auxiliary_graph(g: Graph, s: int, threshold: Optional[int] = None) -> AuxiliaryGraph:
    """Independent sets of the result are s-connected matchings of ``g``.

    With ``threshold`` only edges whose |A_{u,v}| is at most it become vertices.
    """
    _check_s(s, (2, 3))
    pairs = [
        e for e in g.edges() if threshold is None or pair_neighborhoods(g, *e).a_size <= threshold
    ]
    conflicts = [
        (i, j)
        for i in range(len(pairs))
        for j in range(i + 1, len(pairs))
        if not _disjoint(pairs[i], pairs[j]) or connections(g, pairs[i], pairs[j]) < s
    ]
    return AuxiliaryGraph(Graph.from_edges(len(pairs), conflicts), tuple(pairs), s)


def aux_degree_bound(aux: Graph) -> Fraction:
    """|V| / (max degree + 1), the size guaranteed by greedy independent sets."""
    if aux.n == 0:
        return Fraction(0)
    return Fraction(aux.n, max(aux.degrees()) + 1)


def greedy_independent_set(g: Graph) -> List[int]:
    """Repeatedly take a minimum-degree vertex of what remains (lowest label on ties)."""
    remaining = g.vertex_mask
    chosen = []
    while remaining:
        v = min(iter_bits(remaining), key=lambda x: (popcount(g.rows[x] & remaining), x))
        chosen.append(v)
        remaining &= ~(g.rows[v] | (1 << v))
    return chosen


def matching_via_aux(g: Graph, s: int, mode: str = "greedy", threshold: Optional[int] = None) -> MatchingCert:
    """An s-connected matching read off an independent set of the auxiliary graph."""
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}, got {mode!r}")
    aux = auxiliary_graph(g, s, threshold)
    if mode == "greedy":
        chosen = greedy_independent_set(aux.graph)
    else:
        chosen = max_clique(complement(aux.graph)) if aux.graph.n else []
    cert = MatchingCert.build(g, [aux.pairs[i] for i in chosen], s)
    cert.validate(g)
    return cert


@dataclass(frozen=True)
class TriangleStructure:
    """Triangles of the s=2 auxiliary graph split by whether some two of their pairs meet."""

    triangles: int
    with_intersection: int
    disjoint_examples: Tuple[Tuple[Edge, Edge, Edge], ...]

    @property
    def holds(self) -> bool:
        return not self.disjoint_examples

    def to_dict(self) -> Dict[str, Any]:
        return {
            "triangles": self.triangles,
            "with_intersection": self.with_intersection,
            "holds": self.holds,
            "disjoint_examples": [[list(e) for e in t] for t in self.disjoint_examples],
        }


def check_hprime_triangle_structure(g: Graph, max_examples: int = 5) -> TriangleStructure:
    """Enumerate the triangles of the s=2 auxiliary graph.

    Raises:
        DomainError: If ``g`` has an independent set of size three
    """
    if not alpha_at_most_2(g):
        raise DomainError("graph has an independent set of size 3")
    aux = auxiliary_graph(g, 2)
    rows, pairs = aux.graph.rows, aux.pairs
    triangles = meeting = 0
    examples: List[Tuple[Edge, Edge, Edge]] = []
    for a in range(aux.graph.n):
        for b in iter_bits(rows[a] >> (a + 1) << (a + 1)):
            for c in iter_bits(rows[a] & rows[b] >> (b + 1) << (b + 1)):
                triangles += 1
                x, y, z = pairs[a], pairs[b], pairs[c]
                if _disjoint(x, y) and _disjoint(x, z) and _disjoint(y, z):
                    if len(examples) < max_examples:
                        examples.append((x, y, z))
                else:
                    meeting += 1
    return TriangleStructure(triangles, meeting, tuple(examples))


@dataclass(frozen=True)
class PairBounds:
    """|A_{u,v}| and |B_{u,v}| over all edges against 2(n - min degree)."""

    bound: int
    max_a: int
    max_b: int
    edges: int

    def to_dict(self) -> Dict[str, Any]:
        return {"bound": self.bound, "max_a": self.max_a, "max_b": self.max_b, "edges": self.edges}


def check_pair_bounds(g: Graph) -> PairBounds:
    """Raises InvariantViolation if some edge has |B_{u,v}| > 2(n - min degree)."""
    bound = 2 * (g.n - min_degree(g)) if g.n else 0
    max_a = max_b = 0
    for u, v in g.edges():
        sets = pair_neighborhoods(g, u, v)
        if sets.b_size > bound:
            raise InvariantViolation(f"|B| = {sets.b_size} exceeds {bound} at edge ({u}, {v})")
        max_a = max(max_a, sets.a_size)
        max_b = max(max_b, sets.b_size)
    return PairBounds(bound, max_a, max_b, g.edge_count())


def random_alpha2_graph(n: int, seed: Optional[int] = None, rng: Optional[np.random.Generator] = None) -> Graph:
    """Complement of a random maximal triangle-free graph.

    Pairs are offered in a random order and kept unless they close a triangle.
    """
    rng = rng if rng is not None else np.random.default_rng(seed)
    upper = np.triu_indices(n, k=1)
    rows = [0] * n
    for index in rng.permutation(len(upper[0])).tolist():
        u, v = int(upper[0][index]), int(upper[1][index])
        if rows[u] & rows[v]:
            continue
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return complement(Graph(n, tuple(rows)))
