"""Edge colourings of complete graphs and exact pattern-copy counting.

Copies are unlabelled: the number of embeddings (injective edge-preserving
maps) of the pattern divided by its automorphism count. Colour ``c`` of an
:class:`EdgeColoring` is read as the graph of all pairs carrying ``c``.
"""

import json
import logging
from dataclasses import dataclass
from functools import cached_property, partial
from math import comb, factorial, perm
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .constructions import equitable_sizes
from .errors import DomainError, GraphFormatError
from .graph import (
    Graph,
    count_cliques_within,
    cycle_graph,
    induced_subgraph,
    iter_bits,
    mask_of,
    part_blocks,
    popcount,
)
from .parallel import apply_pool

logger = logging.getLogger(__name__)

RED = 0
BLUE = 1

# automorphisms are listed explicitly only up to this order
ORBIT_LISTING_LIMIT = 7


@dataclass(frozen=True)
class EdgeColoring:
    """A q-colouring of the edges of K_n.

    ``colors`` holds one colour per pair in lexicographic order
    ``(0,1), (0,2), ..., (0,n-1), (1,2), ...``.
    """

    n: int
    q: int
    colors: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"vertex count must be non-negative, got {self.n}")
        if self.q < 1:
            raise DomainError(f"need at least one colour, got q={self.q}")
        if len(self.colors) != comb(self.n, 2):
            raise DomainError(f"expected {comb(self.n, 2)} pair colours for n={self.n}, got {len(self.colors)}")
        for i, c in enumerate(self.colors):
            if not 0 <= c < self.q:
                raise DomainError(f"colour {c} at pair index {i} is outside 0..{self.q - 1}")

    @classmethod
    def from_function(cls, n: int, q: int, color: Callable[[int, int], int]) -> "EdgeColoring":
        return cls(n, q, tuple(color(u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def from_graph(cls, g: Graph) -> "EdgeColoring":
        """Edges of ``g`` red, non-edges blue."""
        return cls.from_function(g.n, 2, lambda u, v: RED if g.has_edge(u, v) else BLUE)

    @classmethod
    def from_rows(cls, n: int, q: int, class_rows: Sequence[Sequence[int]]) -> "EdgeColoring":
        """Build from one bitset row list per colour; every pair must be covered once."""

        def color(u: int, v: int) -> int:
            owners = [c for c in range(q) if class_rows[c][u] >> v & 1]
            if len(owners) != 1:
                raise DomainError(f"pair ({u}, {v}) carries {len(owners)} colours")
            return owners[0]

        return cls.from_function(n, q, color)

    def pair_index(self, u: int, v: int) -> int:
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise DomainError(f"({u}, {v}) is not a pair of distinct vertices below {self.n}")
        if u > v:
            u, v = v, u
        return u * (2 * self.n - u - 1) // 2 + (v - u - 1)

    def color(self, u: int, v: int) -> int:
        return self.colors[self.pair_index(u, v)]

    @cached_property
    def class_rows(self) -> Tuple[Tuple[int, ...], ...]:
        rows = [[0] * self.n for _ in range(self.q)]
        i = 0
        for u in range(self.n):
            for v in range(u + 1, self.n):
                c = self.colors[i]
                rows[c][u] |= 1 << v
                rows[c][v] |= 1 << u
                i += 1
        return tuple(tuple(r) for r in rows)

    def color_graph(self, c: int) -> Graph:
        if not 0 <= c < self.q:
            raise DomainError(f"colour {c} is outside 0..{self.q - 1}")
        return Graph(self.n, self.class_rows[c])

    def class_sizes(self) -> List[int]:
        return np.bincount(np.asarray(self.colors, dtype=np.int64), minlength=self.q).tolist()

    def relabel_colors(self, mapping: Sequence[int]) -> "EdgeColoring":
        if sorted(mapping) != list(range(self.q)):
            raise DomainError(f"{list(mapping)} is not a permutation of the {self.q} colours")
        return EdgeColoring(self.n, self.q, tuple(mapping[c] for c in self.colors))

    def permute_vertices(self, mapping: Sequence[int]) -> "EdgeColoring":
        """Colouring whose pair ``(mapping[u], mapping[v])`` has the colour of ``(u, v)``."""
        if sorted(mapping) != list(range(self.n)):
            raise DomainError(f"{list(mapping)} is not a permutation of 0..{self.n - 1}")
        inverse = [0] * self.n
        for u, image in enumerate(mapping):
            inverse[image] = u
        return EdgeColoring.from_function(self.n, self.q, lambda u, v: self.color(inverse[u], inverse[v]))

    def to_dict(self) -> Dict[str, Any]:
        edges = []
        i = 0
        for u in range(self.n):
            for v in range(u + 1, self.n):
                edges.append([u, v, self.colors[i]])
                i += 1
        return {"n": self.n, "q": self.q, "edges": edges}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EdgeColoring":
        """Inverse of :meth:`to_dict`; every pair must appear exactly once."""
        try:
            n, q = int(data["n"]), int(data["q"])
            entries = data["edges"]
        except (KeyError, TypeError, ValueError) as e:
            raise GraphFormatError(f"colouring JSON needs integer 'n', 'q' and an 'edges' list: {e}")
        colors: Dict[Tuple[int, int], int] = {}
        for entry in entries:
            if len(entry) != 3:
                raise GraphFormatError(f"edge entry {entry!r} is not [u, v, colour]")
            u, v, c = (int(x) for x in entry)
            key = (min(u, v), max(u, v))
            if key in colors:
                raise GraphFormatError(f"pair {key} coloured twice")
            colors[key] = c
        missing = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in colors]
        if missing:
            raise GraphFormatError(f"{len(missing)} pairs uncoloured, first {missing[0]}")
        return cls(n, q, tuple(colors[(u, v)] for u in range(n) for v in range(u + 1, n)))

    def __repr__(self) -> str:
        return f"EdgeColoring(n={self.n}, q={self.q})"


def format_coloring_text(c: EdgeColoring) -> str:
    """Row-major text: ``n q`` then, for ``u = 0..n-2``, the colours of ``(u, u+1..n-1)``."""
    lines = [f"{c.n} {c.q}"]
    for u in range(c.n - 1):
        lines.append(" ".join(str(c.color(u, v)) for v in range(u + 1, c.n)))
    return "\n".join(lines) + "\n"


def parse_coloring_text(text: str) -> EdgeColoring:
    lines = [(no, raw.split("#", 1)[0].split()) for no, raw in enumerate(text.splitlines(), start=1)]
    lines = [(no, tokens) for no, tokens in lines if tokens]
    if not lines or len(lines[0][1]) != 2:
        raise GraphFormatError("expected a header 'n q'", lines[0][0] if lines else 1)
    header_no, header = lines[0]
    try:
        n, q = int(header[0]), int(header[1])
    except ValueError:
        raise GraphFormatError(f"non-integer header {' '.join(header)!r}", header_no)
    rows = lines[1:]
    if len(rows) != max(n - 1, 0):
        raise GraphFormatError(f"expected {max(n - 1, 0)} colour rows, got {len(rows)}", header_no)
    colors: List[int] = []
    for u, (line_no, tokens) in enumerate(rows):
        if len(tokens) != n - 1 - u:
            raise GraphFormatError(f"row {u} needs {n - 1 - u} colours, got {len(tokens)}", line_no)
        try:
            colors.extend(int(t) for t in tokens)
        except ValueError:
            raise GraphFormatError(f"non-integer colour in row {u}", line_no)
    return EdgeColoring(n, q, tuple(colors))


def load_coloring(path: Union[str, Path]) -> EdgeColoring:
    """Read a colouring; ``.json`` files use the JSON form, anything else the text form."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as e:
            raise GraphFormatError(f"invalid JSON: {e.msg}", e.lineno)
        return EdgeColoring.from_dict(data)
    return parse_coloring_text(path.read_text())


def dump_coloring(c: EdgeColoring, path: Union[str, Path]) -> None:
    path = Path(path)
    if path.suffix.lower() == ".json":
        path.write_text(json.dumps(c.to_dict()) + "\n")
    else:
        path.write_text(format_coloring_text(c))
    logger.info(f"Wrote {c!r} to {path}")


# --- colourings -------------------------------------------------------------

def partition_classes(n: int, parts: int) -> List[List[int]]:
    """Consecutive vertex classes, sizes as equal as possible, larger first."""
    if not 1 <= parts <= n:
        raise DomainError(f"need 1 <= parts <= n, got parts={parts}, n={n}")
    return part_blocks(equitable_sizes(n, parts))


def partition_coloring(n: int, parts: int) -> EdgeColoring:
    """Edges inside a class red, edges across classes blue."""
    block = [0] * n
    for i, members in enumerate(partition_classes(n, parts)):
        for v in members:
            block[v] = i
    return EdgeColoring.from_function(n, 2, lambda u, v: RED if block[u] == block[v] else BLUE)


def blowup_coloring(base: EdgeColoring, n: int, inner_color: Optional[int] = None) -> EdgeColoring:
    """Replace each base vertex by a block coloured ``inner_color``.

    Cross-block pairs keep the base colour of their block pair. Block sizes
    are as equal as possible with larger blocks on lower base labels;
    ``inner_color`` defaults to the fresh colour ``base.q``.
    """
    r = base.n
    if r < 1 or n < r:
        raise DomainError(f"cannot blow {r} base vertices up to {n} vertices")
    inner = base.q if inner_color is None else inner_color
    if inner < base.q:
        raise DomainError(f"inner colour {inner} is already used by the base colouring")
    block = [0] * n
    for i, members in enumerate(part_blocks(equitable_sizes(n, r))):
        for v in members:
            block[v] = i
    return EdgeColoring.from_function(
        n, inner + 1, lambda u, v: inner if block[u] == block[v] else base.color(block[u], block[v])
    )


def pentagon_coloring() -> EdgeColoring:
    """The 5-cycle ``0-1-2-3-4`` red, its complement (also a 5-cycle) blue."""
    return EdgeColoring.from_graph(cycle_graph(5))


def random_coloring(n: int, q: int, seed: Optional[int] = None, rng: Optional[np.random.Generator] = None) -> EdgeColoring:
    """Uniform q-colouring, one draw per pair in lexicographic order."""
    rng = rng if rng is not None else np.random.default_rng(seed)
    return EdgeColoring(n, q, tuple(rng.integers(q, size=comb(n, 2)).tolist()))


# --- pattern counting -------------------------------------------------------

@dataclass(frozen=True)
class Plan:
    """Placement order of pattern vertices; ``back[i]`` lists earlier positions adjacent to position ``i``."""

    order: Tuple[int, ...]
    back: Tuple[Tuple[int, ...], ...]


def make_plan(h: Graph, start: Sequence[int] = ()) -> Plan:
    """Greedy order: most already-placed neighbours first, then higher degree, then label."""
    order = list(start)
    placed = mask_of(order)
    while len(order) < h.n:
        best = max(
            (v for v in range(h.n) if not placed >> v & 1),
            key=lambda v: (popcount(h.rows[v] & placed), h.degree(v), -v),
        )
        order.append(best)
        placed |= 1 << best
    position = {v: i for i, v in enumerate(order)}
    back = tuple(
        tuple(sorted(position[u] for u in iter_bits(h.rows[v]) if position[u] < i)) for i, v in enumerate(order)
    )
    return Plan(tuple(order), back)


def _extend(rows: Sequence[int], universe: int, back, images: List[int], used: int, depth: int, stop: bool) -> int:
    candidates = universe & ~used
    for j in back[depth]:
        candidates &= rows[images[j]]
    if depth == len(back) - 1:
        found = popcount(candidates)
        return min(found, 1) if stop else found
    total = 0
    for v in iter_bits(candidates):
        images[depth] = v
        total += _extend(rows, universe, back, images, used | 1 << v, depth + 1, stop)
        if stop and total:
            return total
    return total


def _anchored(rows: Sequence[int], universe: int, plan: Plan, fixed: Sequence[int], stop: bool = False) -> int:
    """Embeddings extending the images ``fixed`` of the first plan positions."""
    images = list(fixed) + [0] * (len(plan.order) - len(fixed))
    used = 0
    for depth, v in enumerate(fixed):
        if not universe >> v & 1 or used >> v & 1:
            return 0
        if any(not rows[images[j]] >> v & 1 for j in plan.back[depth]):
            return 0
        used |= 1 << v
    if len(fixed) == len(plan.order):
        return 1
    return _extend(rows, universe, plan.back, images, used, len(fixed), stop)


def _embeddings_from_root(rows: Tuple[int, ...], universe: int, plan: Plan, root: int) -> int:
    return _anchored(rows, universe, plan, (root,))


def count_embeddings(rows: Sequence[int], universe: int, h: Graph, workers: int = 1) -> int:
    """Injective edge-preserving maps of ``h`` into the graph ``rows`` restricted to ``universe``."""
    if h.n == 0:
        return 1
    if h.n > popcount(universe):
        return 0
    plan = make_plan(h)
    roots = list(iter_bits(universe))
    per_root = apply_pool(partial(_embeddings_from_root, tuple(rows), universe, plan), roots, workers)
    return sum(per_root)


def pendant_shape(h: Graph) -> Optional[Tuple[int, int]]:
    """``(k, ell)`` when ``h`` is a k-clique with ``ell`` leaves on one clique vertex.

    Complete graphs give ``ell = 0``; stars K_{1,m} give ``(2, m - 1)``.
    """
    if h.n >= 1 and h.edge_count() == comb(h.n, 2):
        return h.n, 0
    degrees = h.degrees()
    leaves = [v for v in range(h.n) if degrees[v] == 1]
    if not leaves or 0 in degrees:
        return None
    roots = {h.neighbors(v)[0] for v in leaves}
    if len(roots) != 1:
        return None
    root = roots.pop()
    if root in leaves:
        return None
    core = [v for v in range(h.n) if v not in leaves]
    if len(core) == 1:
        return 2, len(leaves) - 1
    core_mask = mask_of(core)
    if any(popcount(h.rows[v] & core_mask) != len(core) - 1 for v in core):
        return None
    return len(core), len(leaves)


def count_pendant_cliques(rows: Sequence[int], universe: int, k: int, ell: int) -> int:
    """Copies of the k-clique with ``ell`` pendant leaves on one vertex.

    Stars are counted by centre degree; otherwise every vertex ``x`` roots
    ``C(deg(x) - k + 1, ell)`` copies per (k-1)-clique in its neighbourhood.
    """
    if ell == 0:
        return count_cliques_within(rows, universe, k)
    if k == 2:
        return sum(comb(popcount(rows[x] & universe), ell + 1) for x in iter_bits(universe))
    total = 0
    for x in iter_bits(universe):
        around = rows[x] & universe
        spare = popcount(around) - (k - 1)
        if spare < ell:
            continue
        total += comb(spare, ell) * count_cliques_within(rows, around, k - 1)
    return total


def automorphism_count(h: Graph) -> int:
    """|Aut(h)|; closed form for cliques with pendant leaves, brute force otherwise."""
    isolated = sum(1 for d in h.degrees() if d == 0)
    if isolated:
        core = [v for v in range(h.n) if h.degree(v)]
        return factorial(isolated) * automorphism_count(induced_subgraph(h, core))
    shape = pendant_shape(h)
    if shape is not None:
        k, ell = shape
        if ell == 0:
            return factorial(k)
        if k == 2:
            return factorial(ell + 1)
        return factorial(k - 1) * factorial(ell)
    return count_embeddings(h.rows, h.vertex_mask, h)


def copies_in_complete(h: Graph, n: int) -> int:
    """Copies of ``h`` in K_n: ``(h!/a) C(n, h)``."""
    if h.n > n:
        return 0
    return perm(n, h.n) // automorphism_count(h)


def _automorphisms(h: Graph) -> List[Tuple[int, ...]]:
    found: List[Tuple[int, ...]] = []
    plan = make_plan(h)

    def extend(depth: int, images: List[int], used: int) -> None:
        if depth == h.n:
            mapping = [0] * h.n
            for pos, v in enumerate(plan.order):
                mapping[v] = images[pos]
            found.append(tuple(mapping))
            return
        v = plan.order[depth]
        for image in range(h.n):
            if used >> image & 1 or h.degree(image) != h.degree(v):
                continue
            if all(h.rows[images[j]] >> image & 1 for j in plan.back[depth]):
                images.append(image)
                extend(depth + 1, images, used | 1 << image)
                images.pop()

    extend(0, [], 0)
    return found


class PatternMatcher:
    """Counts copies of a fixed pattern, in whole graphs or through one edge.

    The per-edge queries drive the colouring searches: when a pair is coloured,
    the copies it completes are exactly the copies through that pair in the
    graph of its colour.
    """

    def __init__(self, h: Graph):
        if h.edge_count() == 0:
            raise DomainError("pattern has no edges")
        self.pattern = h
        self.automorphisms = automorphism_count(h)
        self.shape = pendant_shape(h)
        self.is_clique = self.shape is not None and self.shape[1] == 0
        self.edge_plans = self._edge_plans(h)

    @staticmethod
    def _edge_plans(h: Graph) -> List[Tuple[int, Plan]]:
        oriented = [(a, b) for a, b in h.edges()] + [(b, a) for a, b in h.edges()]
        if h.n <= ORBIT_LISTING_LIMIT:
            autos = _automorphisms(h)
            seen = set()
            plans = []
            for a, b in sorted(oriented):
                if (a, b) in seen:
                    continue
                orbit = {(m[a], m[b]) for m in autos}
                seen |= orbit
                plans.append((len(orbit), make_plan(h, (a, b))))
            return plans
        return [(1, make_plan(h, (a, b))) for a, b in sorted(oriented)]

    def count(self, rows: Sequence[int], universe: int, workers: int = 1) -> int:
        if self.shape is not None:
            return count_pendant_cliques(rows, universe, *self.shape)
        return count_embeddings(rows, universe, self.pattern, workers) // self.automorphisms

    def copies_through(self, rows: Sequence[int], universe: int, u: int, v: int) -> int:
        """Copies using the edge ``uv``, which must be present in ``rows``."""
        if self.is_clique:
            return count_cliques_within(rows, rows[u] & rows[v] & universe, self.pattern.n - 2)
        total = sum(weight * _anchored(rows, universe, plan, (u, v)) for weight, plan in self.edge_plans)
        return total // self.automorphisms

    def occurs_through(self, rows: Sequence[int], universe: int, u: int, v: int) -> bool:
        if self.is_clique:
            k = self.pattern.n - 2
            common = rows[u] & rows[v] & universe
            return k == 0 or (popcount(common) >= k and count_cliques_within(rows, common, k) > 0)
        return any(_anchored(rows, universe, plan, (u, v), stop=True) for _, plan in self.edge_plans)
