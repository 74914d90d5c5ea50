"""Arithmetic progressions in [n], independent progressions and rainbow searches.

Integers are 1-based here (``[n] = {1..n}``); the graph on [n] is a
:class:`~pyextremal.graph.Graph` whose vertex ``i - 1`` stands for ``i``.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import partial
from math import comb, factorial
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from sympy import primerange

from .errors import DomainError, InvariantViolation
from .graph import Graph, iter_bits
from .parallel import apply_pool
from .report import SearchReport, Stopwatch

logger = logging.getLogger(__name__)

FAMILIES = ("coprime", "prime", "all")
FAMILY_ALIASES = {"a": "coprime", "coprime": "coprime", "b": "prime", "prime": "prime", "all": "all"}


@dataclass(frozen=True)
class Progression:
    """k-term progression a, a+d, ..., a+(k-1)d."""

    a: int
    d: int
    k: int

    def __post_init__(self):
        if self.a < 1 or self.d < 1 or self.k < 1:
            raise DomainError(f"progression needs a, d, k >= 1, got ({self.a}, {self.d}, {self.k})")

    @property
    def last(self) -> int:
        return self.a + (self.k - 1) * self.d

    @property
    def terms(self) -> List[int]:
        return [self.a + i * self.d for i in range(self.k)]

    def fits(self, n: int) -> bool:
        return self.last <= n

    def order_key(self) -> Tuple[int, int]:
        return (self.d, self.a)

    def to_dict(self) -> Dict[str, Any]:
        return {"a": self.a, "d": self.d, "k": self.k, "terms": self.terms}


@dataclass(frozen=True)
class IntColoring:
    """Colouring of [n]; ``colors[i]`` is the colour of ``i + 1``.

    ``m`` caps the size of every colour class when given.
    """

    colors: Tuple[int, ...]
    m: Optional[int] = None

    def __post_init__(self):
        if self.m is not None:
            if self.m < 1:
                raise DomainError(f"multiplicity bound must be positive, got {self.m}")
            worst = max(self.class_sizes().values(), default=0)
            if worst > self.m:
                raise DomainError(f"a colour is used {worst} times, above m={self.m}")

    @classmethod
    def from_sequence(cls, colors: Sequence[int], m: Optional[int] = None) -> "IntColoring":
        return cls(tuple(int(c) for c in colors), m)

    @property
    def n(self) -> int:
        return len(self.colors)

    def color(self, x: int) -> int:
        return self.colors[x - 1]

    def class_sizes(self) -> Dict[int, int]:
        return dict(Counter(self.colors))

    def is_equinumerous(self, t: int) -> bool:
        sizes = self.class_sizes()
        return len(sizes) == t and len(set(sizes.values())) == 1 and self.n % t == 0

    def is_rainbow(self, progression: Progression) -> bool:
        seen = [self.color(x) for x in progression.terms]
        return len(set(seen)) == len(seen)

    def same_color_graph(self) -> Graph:
        """Disjoint cliques on the colour classes."""
        classes: Dict[int, int] = {}
        for i, c in enumerate(self.colors):
            classes[c] = classes.get(c, 0) | (1 << i)
        rows = tuple(classes[c] & ~(1 << i) for i, c in enumerate(self.colors))
        return Graph(self.n, rows)


@dataclass(frozen=True)
class APCertificate:
    """Result of an independent-progression search with its counting comparison.

    ``edges_hit_bound`` is e(G)·k; ``edges_hit`` is the exact number of
    (progression, edge) incidences inside the family, an upper bound on the
    number of family members that are not independent.
    """

    progression: Optional[Progression]
    family: str
    n: int
    k: int
    family_size: int
    edge_count: int
    edges_hit: int

    @property
    def edges_hit_bound(self) -> int:
        return self.edge_count * self.k

    @property
    def exhausted(self) -> bool:
        return self.progression is None

    @property
    def counting_applies(self) -> bool:
        return self.family_size > self.edges_hit

    def to_dict(self) -> Dict[str, Any]:
        return {
            "progression": self.progression.to_dict() if self.progression else None,
            "family": self.family,
            "n": self.n,
            "k": self.k,
            "family_size": self.family_size,
            "edge_count": self.edge_count,
            "edges_hit_bound": self.edges_hit_bound,
            "edges_hit": self.edges_hit,
            "counting_applies": self.counting_applies,
        }


def normalize_family(family: str) -> str:
    key = family.lower()
    if key not in FAMILY_ALIASES:
        raise DomainError(f"unknown progression family {family!r}; use one of {', '.join(FAMILIES)}")
    return FAMILY_ALIASES[key]


def coprime_survivors(n: int, k: int) -> List[int]:
    """Integers in [n] with no prime factor at most k, in increasing order."""
    if n < 1 or k < 1:
        raise DomainError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    keep = np.ones(n + 1, dtype=bool)
    keep[0] = False
    for p in primerange(2, k + 1):
        keep[p::p] = False
    return np.flatnonzero(keep).tolist()


def _check_family_args(n: int, k: int) -> None:
    if k < 2 or n < k:
        raise DomainError(f"progression families need n >= k >= 2, got n={n}, k={k}")


def family_differences(n: int, k: int, family: str) -> List[int]:
    """Admissible common differences of a family, ascending."""
    family = normalize_family(family)
    if family == "coprime":
        _check_family_args(n, k)
        bound = n // (2 * k)
        return coprime_survivors(bound, k) if bound >= 1 else []
    if k == 1:
        return [1] if family == "all" and n >= 1 else []
    _check_family_args(n, k)
    top = (n - 1) // (k - 1)
    if family == "prime":
        return list(primerange(2, top + 1))
    return list(range(1, top + 1))


def _starts(n: int, k: int, d: int, family: str) -> range:
    if family == "coprime":
        return range(1, n // 2 + 1)
    return range(1, n - (k - 1) * d + 1)


def iter_family(n: int, k: int, family: str = "all") -> Iterator[Progression]:
    """Members of a family in (d, a) order."""
    family = normalize_family(family)
    for d in family_differences(n, k, family):
        for a in _starts(n, k, d, family):
            yield Progression(a, d, k)


def family_A(n: int, k: int) -> Iterator[Progression]:
    """Starts in [n/2], differences in [n/2k] free of prime factors up to k."""
    return iter_family(n, k, "coprime")


def family_B(n: int, k: int) -> Iterator[Progression]:
    """All k-term progressions in [n] with prime difference."""
    return iter_family(n, k, "prime")


def family_all(n: int, k: int) -> Iterator[Progression]:
    return iter_family(n, k, "all")


def family_size(n: int, k: int, family: str = "all") -> int:
    family = normalize_family(family)
    return sum(len(_starts(n, k, d, family)) for d in family_differences(n, k, family))


def progressions_through(x: int, y: int, n: int, k: int, family: str = "all") -> int:
    """Number of family members containing both x and y."""
    family = normalize_family(family)
    if x == y:
        raise DomainError("progressions_through needs two distinct integers")
    x, y = min(x, y), max(x, y)
    gap = y - x
    allowed = set(family_differences(n, k, family))
    total = 0
    for steps in range(1, k):
        if gap % steps:
            continue
        d = gap // steps
        if d not in allowed:
            continue
        starts = _starts(n, k, d, family)
        for offset in range(k - steps):
            a = x - offset * d
            if a in starts:
                total += 1
    return total


def pair_coverage_max(n: int, k: int) -> int:
    """Largest number of coprime-family progressions sharing a pair of integers."""
    diffs = np.array(family_differences(n, k, "coprime"), dtype=np.int64)
    if diffs.size == 0:
        return 0
    starts = np.arange(1, n // 2 + 1, dtype=np.int64)
    a, d = np.meshgrid(starts, diffs)
    terms = a.ravel()[:, None] + d.ravel()[:, None] * np.arange(k, dtype=np.int64)[None, :]
    codes = np.concatenate([terms[:, i] * (n + 1) + terms[:, j] for i in range(k) for j in range(i + 1, k)])
    return int(np.bincount(codes).max())


def turan_independence_threshold(n: int, k: int) -> float:
    """Edge count below which Turán's theorem forces an independent k-set."""
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    return n * (n - k + 1) / (2 * (k - 1))


def _first_independent_for_difference(
    rows: Tuple[int, ...], n: int, k: int, family: str, forbidden: int, d: int
) -> Optional[int]:
    for a in _starts(n, k, d, family):
        mask = 0
        for i in range(k):
            mask |= 1 << (a - 1 + i * d)
        if mask & forbidden:
            continue
        if all(not rows[v] & mask for v in iter_bits(mask)):
            return a
    return None


def count_edges_hit(g: Graph, k: int, family: str) -> int:
    return sum(progressions_through(u + 1, v + 1, g.n, k, family) for u, v in g.edges())


def find_independent_ap(
    g: Graph,
    k: int,
    family: str = "all",
    forbidden: Sequence[int] = (),
    workers: int = 1,
) -> APCertificate:
    """First family member whose terms are pairwise non-adjacent in g.

    Args:
        g: Graph on [n] (vertex ``i - 1`` is the integer ``i``)
        k: Progression length
        family: ``coprime``, ``prime`` or ``all``
        forbidden: Integers that may not appear in the progression
        workers: Processes used across differences

    Returns:
        APCertificate; ``exhausted`` when no member is independent

    Raises:
        DomainError: If k > n
        InvariantViolation: If the search exhausted a family whose size beats
            the exact edge incidence count, or a witness fails revalidation
    """
    family = normalize_family(family)
    n = g.n
    if k < 1 or k > n:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
    forbidden_mask = 0
    for x in forbidden:
        forbidden_mask |= 1 << (x - 1)
    diffs = family_differences(n, k, family)
    search = partial(_first_independent_for_difference, g.rows, n, k, family, forbidden_mask)
    found: Optional[Progression] = None
    if workers > 1:
        for d, a in zip(diffs, apply_pool(search, diffs, workers)):
            if a is not None:
                found = Progression(a, d, k)
                break
    else:
        for d in diffs:
            a = search(d)
            if a is not None:
                found = Progression(a, d, k)
                break
    certificate = APCertificate(
        progression=found,
        family=family,
        n=n,
        k=k,
        family_size=family_size(n, k, family),
        edge_count=g.edge_count(),
        edges_hit=count_edges_hit(g, k, family),
    )
    if found is not None:
        terms = found.terms
        if any(g.has_edge(x - 1, y - 1) for i, x in enumerate(terms) for y in terms[i + 1:]):
            raise InvariantViolation(f"progression {terms} is not independent")
        if any(x in set(forbidden) for x in terms):
            raise InvariantViolation(f"progression {terms} uses a forbidden integer")
    elif certificate.counting_applies and not forbidden:
        raise InvariantViolation(
            f"{family} family of size {certificate.family_size} exhausted with only "
            f"{certificate.edges_hit} edge incidences"
        )
    logger.debug(f"Independent {k}-AP search in [{n}] ({family}): {found}")
    return certificate


def rainbow_ap_witness(c: IntColoring, k: int) -> Optional[Progression]:
    """A rainbow k-term progression, found as an independent one in the same-colour graph."""
    if k > c.n:
        return None
    certificate = find_independent_ap(c.same_color_graph(), k, "all")
    progression = certificate.progression
    if progression is not None and not c.is_rainbow(progression):
        raise InvariantViolation(f"progression {progression.terms} is not rainbow")
    return progression


def set_mapping_ap(pi: Sequence[int], k: int) -> Optional[Progression]:
    """A k-term progression A with pi(i) not in A for every i in A.

    ``pi`` lists pi(1), ..., pi(n). Fixed points can never lie in A.
    """
    n = len(pi)
    if sorted(pi) != list(range(1, n + 1)):
        raise DomainError("pi must be a permutation of 1..n")
    if k > n:
        return None
    edges = [(i, pi[i] - 1) for i in range(n) if pi[i] - 1 != i]
    fixed = [i + 1 for i in range(n) if pi[i] == i + 1]
    progression = find_independent_ap(Graph.from_edges(n, edges), k, "all", forbidden=fixed).progression
    if progression is not None:
        terms = set(progression.terms)
        if any(pi[x - 1] in terms for x in terms):
            raise InvariantViolation(f"progression {sorted(terms)} maps into itself")
    return progression


def restricted_partition_count(n: int, m: int) -> int:
    """Set partitions of [n] with blocks of size at most m."""
    counts = [1] + [0] * n
    for size in range(1, n + 1):
        counts[size] = sum(comb(size - 1, j - 1) * counts[size - j] for j in range(1, min(m, size) + 1))
    return counts[n]


def sub_ramsey_projection(n: int, m: int) -> int:
    """Canonical colourings visited by an unpruned search over [1..n]."""
    return sum(restricted_partition_count(i, m) for i in range(n + 1))


def equinumerous_projection(t: int, m: int) -> int:
    """Canonical equinumerous t-colourings of [tm]."""
    return factorial(t * m) // (factorial(m) ** t * factorial(t))


@dataclass
class _ColoringSearch:
    """Depth-first search for a colouring of [n] with no rainbow k-term progression."""

    n: int
    m: int
    k: int
    max_colors: Optional[int] = None
    nodes: int = 0
    colors: List[int] = field(default_factory=list)
    sizes: List[int] = field(default_factory=list)

    def closes_rainbow(self) -> bool:
        p = len(self.colors)
        if self.k < 2:
            return True
        for d in range(1, (p - 1) // (self.k - 1) + 1):
            seen = {self.colors[p - 1 - i * d] for i in range(self.k)}
            if len(seen) == self.k:
                return True
        return False

    def run(self, prefix: Sequence[int]) -> Optional[List[int]]:
        for c in prefix:
            if not self._push(c):
                return None
        return self._extend()

    def _push(self, c: int) -> bool:
        if c == len(self.sizes):
            if self.max_colors is not None and c >= self.max_colors:
                return False
            self.sizes.append(0)
        if self.sizes[c] >= self.m:
            return False
        self.colors.append(c)
        self.sizes[c] += 1
        self.nodes += 1
        if self.closes_rainbow():
            self._pop()
            return False
        return True

    def _pop(self) -> None:
        c = self.colors.pop()
        self.sizes[c] -= 1
        if self.sizes[c] == 0 and c == len(self.sizes) - 1:
            self.sizes.pop()

    def _extend(self) -> Optional[List[int]]:
        if len(self.colors) == self.n:
            return list(self.colors)
        for c in range(len(self.sizes) + 1):
            if self._push(c):
                found = self._extend()
                self._pop()
                if found is not None:
                    return found
        return None


def _canonical_prefixes(length: int, m: int, max_colors: Optional[int]) -> List[Tuple[int, ...]]:
    prefixes: List[Tuple[int, ...]] = [()]
    for _ in range(length):
        grown = []
        for prefix in prefixes:
            used = max(prefix, default=-1) + 1
            for c in range(used + 1):
                if max_colors is not None and c >= max_colors:
                    continue
                if prefix.count(c) < m:
                    grown.append(prefix + (c,))
        prefixes = grown
    return prefixes


def _search_branch(
    n: int, m: int, k: int, max_colors: Optional[int], prefix: Tuple[int, ...]
) -> Tuple[Optional[List[int]], int]:
    search = _ColoringSearch(n=n, m=m, k=k, max_colors=max_colors)
    found = search.run(prefix)
    return found, search.nodes


def find_rainbow_free_coloring(
    n: int, m: int, k: int, max_colors: Optional[int] = None, workers: int = 1
) -> Tuple[Optional[List[int]], int]:
    """First canonical colouring of [n] (classes <= m) without a rainbow k-AP.

    Branches are the canonical prefixes of length 3, merged in order, so the
    witness and the node count do not depend on ``workers``.

    Returns:
        (colouring or None, nodes explored)
    """
    depth = min(3, n)
    prefixes = _canonical_prefixes(depth, m, max_colors)
    branch = partial(_search_branch, n, m, k, max_colors)
    results = apply_pool(branch, [(p,) for p in prefixes], workers) if workers > 1 else None
    nodes = 0
    for i, prefix in enumerate(prefixes):
        found, branch_nodes = results[i] if results is not None else branch(prefix)
        nodes += branch_nodes
        if found is not None:
            return found, nodes
    return None, nodes


def sr_exact(m: int, k: int, n_max: int, budget: int = 10**8, workers: int = 1) -> SearchReport:
    """Exact sub-Ramsey number sr(m, k), searched up to n_max.

    Colourings are canonical (colours numbered by first appearance) and a
    branch is cut as soon as it closes a rainbow k-term progression. Before
    each n the unpruned canonical count is projected; above ``budget`` the
    search refuses.

    Returns:
        SearchReport: ``complete`` with the value, ``interval`` when n_max was
        reached, ``refused`` when the projection exceeds the budget
    """
    if m < 1 or k < 1 or n_max < 1:
        raise DomainError(f"need m, k, n_max >= 1, got m={m}, k={k}, n_max={n_max}")
    command = f"ap sr-exact m={m} k={k} nmax={n_max}"
    nodes = 0
    witness: Optional[List[int]] = None
    refused: Optional[Dict[str, int]] = None
    n = k
    with Stopwatch() as watch:
        while n <= n_max:
            estimate = sub_ramsey_projection(n, m)
            if estimate > budget:
                logger.warning(f"sr({m},{k}): projected {estimate} colourings of [{n}] exceed budget {budget}")
                refused = {"estimate": estimate, "budget": budget, "refused_at": n}
                break
            found, used = find_rainbow_free_coloring(n, m, k, workers=workers)
            nodes += used
            logger.debug(f"sr({m},{k}) at n={n}: {'rainbow-free colouring' if found else 'none'} after {used} nodes")
            if found is None:
                break
            witness = found
            n += 1
    common = {"command": command, "nodes": nodes, "witness": _coloring_witness(witness), "elapsed": watch.elapsed}
    if refused is not None:
        return SearchReport(status="refused", lower=n, exact=False, details=refused, **common)
    if n > n_max:
        return SearchReport(status="interval", lower=n_max + 1, exact=False, details={"undecided_above": n_max}, **common)
    return SearchReport(value=n, lower=n, upper=n, details={"m": m, "k": k}, **common)


def _coloring_witness(colors: Optional[List[int]]) -> Optional[Dict[str, Any]]:
    if colors is None:
        return None
    return {"n": len(colors), "colors": [c + 1 for c in colors]}


def tk_check(t: int, m: int, k: int, budget: int = 10**8, workers: int = 1) -> SearchReport:
    """Whether every equinumerous t-colouring of [tm] has a rainbow k-AP.

    Returns:
        SearchReport: ``complete`` with value True, or ``violated`` with a
        counterexample colouring, or ``refused`` above the budget
    """
    if t < 1 or m < 1 or k < 1:
        raise DomainError(f"need t, m, k >= 1, got t={t}, m={m}, k={k}")
    command = f"ap tk t={t} m={m} k={k}"
    n = t * m
    estimate = equinumerous_projection(t, m)
    if estimate > budget:
        return SearchReport(
            command=command, status="refused", exact=False,
            details={"estimate": estimate, "budget": budget},
        )
    with Stopwatch() as watch:
        found, nodes = find_rainbow_free_coloring(n, m, k, max_colors=t, workers=workers)
    if found is not None:
        coloring = IntColoring.from_sequence(found, m)
        if not coloring.is_equinumerous(t) or rainbow_ap_witness(coloring, k) is not None:
            raise InvariantViolation(f"counterexample {found} does not revalidate")
        return SearchReport(
            command=command, status="violated", value=False, nodes=nodes,
            witness=_coloring_witness(found), elapsed=watch.elapsed,
            details={"estimate": estimate},
        )
    return SearchReport(command=command, value=True, nodes=nodes, elapsed=watch.elapsed, details={"estimate": estimate})
