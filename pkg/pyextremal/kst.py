"""Finite checks on K_{s,t}-free graphs given as growing vertex sequences.

An infinite graph is modelled by a :class:`PrefixStream`: vertex ``i`` arrives
with its edges back to ``0..i-1`` and ``G_n`` is the graph on the first ``n``
vertices. Block ``I_l`` holds vertices ``(l-1)n .. ln-1`` and ``J_l`` the first
``ln``. All logarithms in this module are natural.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, log, prod
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DomainError, GraphFormatError, InvariantViolation
from .graph import Graph, is_kst_free, iter_bits, mask_of, popcount

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrefixStream:
    """Vertices in arrival order; ``back_edges[i]`` lists the earlier neighbours of vertex ``i``."""

    back_edges: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        for i, back in enumerate(self.back_edges):
            for j in back:
                if not 0 <= j < i:
                    raise DomainError(f"vertex {i} lists {j}, which is not an earlier vertex")

    @property
    def horizon(self) -> int:
        return len(self.back_edges)

    def prefix(self, n: int) -> Graph:
        """G_n, the graph on the first ``n`` vertices."""
        if not 0 <= n <= self.horizon:
            raise DomainError(f"stream holds {self.horizon} vertices, asked for {n}")
        return Graph.from_edges(n, [(j, i) for i in range(n) for j in self.back_edges[i]])

    @classmethod
    def from_graph(cls, g: Graph) -> "PrefixStream":
        return cls(tuple(tuple(iter_bits(g.rows[i] & ((1 << i) - 1))) for i in range(g.n)))

    @classmethod
    def from_back_edges(cls, back_edges: Iterable[Iterable[int]]) -> "PrefixStream":
        return cls(tuple(tuple(sorted(set(back))) for back in back_edges))

    @classmethod
    def parse(cls, text: str) -> "PrefixStream":
        """One line per vertex listing its earlier neighbours; ``-`` or an empty line means none.

        Lines starting with ``#`` are comments.
        """
        back_edges = []
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if line.startswith("#"):
                continue
            if line in ("", "-"):
                back_edges.append(())
                continue
            try:
                back = sorted({int(token) for token in line.split()})
            except ValueError:
                raise GraphFormatError(f"non-integer neighbour in {line!r}", line_no)
            vertex = len(back_edges)
            if back and (back[0] < 0 or back[-1] >= vertex):
                raise GraphFormatError(f"vertex {vertex} may only list 0..{vertex - 1}", line_no)
            back_edges.append(tuple(back))
        return cls(tuple(back_edges))

    def format(self) -> str:
        return "".join((" ".join(map(str, back)) if back else "-") + "\n" for back in self.back_edges)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "PrefixStream":
        return cls.parse(Path(path).read_text())

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.format())
        logger.info(f"Wrote stream of {self.horizon} vertices to {path}")


def empty_stream(horizon: int) -> PrefixStream:
    return PrefixStream(tuple(() for _ in range(horizon)))


def complete_stream(horizon: int) -> PrefixStream:
    return PrefixStream(tuple(tuple(range(i)) for i in range(horizon)))


def matching_stream(horizon: int) -> PrefixStream:
    """Disjoint edges ``(0,1), (2,3), ...``."""
    return PrefixStream(tuple((i - 1,) if i % 2 else () for i in range(horizon)))


@dataclass(frozen=True)
class DegreeSumReport:
    """sum_v C(d_v, s) against (t-1) C(n, s), d_v counted into the block."""

    lhs: int
    rhs: int
    n: int
    kst_free: bool

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    def to_dict(self) -> Dict[str, Any]:
        return {"lhs": self.lhs, "rhs": self.rhs, "n": self.n, "kst_free": self.kst_free, "holds": self.holds}


def degree_sum_check(g: Graph, s: int, t: int, block: Optional[Sequence[int]] = None) -> DegreeSumReport:
    """Compare both sides of the degree-sum inequality.

    Args:
        g: Graph whose vertices are summed over
        s, t: Forbidden K_{s,t}, ``1 <= s <= t``
        block: Vertices the degrees count into (default: all)

    Raises:
        InvariantViolation: If ``g`` is K_{s,t}-free and the inequality fails
    """
    members = list(range(g.n)) if block is None else sorted(set(block))
    if any(not 0 <= v < g.n for v in members):
        raise DomainError(f"block {members} leaves 0..{g.n - 1}")
    free = bool(is_kst_free(g, s, t))
    mask = mask_of(members)
    lhs = sum(comb(popcount(g.rows[v] & mask), s) for v in range(g.n))
    report = DegreeSumReport(lhs=lhs, rhs=(t - 1) * comb(len(members), s), n=len(members), kst_free=free)
    if free and not report.holds:
        raise InvariantViolation(f"degree sum {lhs} exceeds {report.rhs} on a K_{{{s},{t}}}-free graph")
    return report


@dataclass(frozen=True)
class BlockStats:
    """E_l = edges between I_1 and I_l (E_1 counts edges inside I_1 twice); F = prefix sums."""

    n: int
    E: Tuple[int, ...]

    @property
    def F(self) -> Tuple[int, ...]:
        return tuple(int(x) for x in np.cumsum(self.E)) if self.E else ()

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "E": list(self.E), "F": list(self.F)}


def _block_prefix(stream: PrefixStream, n: int, blocks: int) -> Graph:
    if n < 1 or blocks < 1:
        raise DomainError(f"need block width and block count >= 1, got n={n}, L={blocks}")
    if stream.horizon < n * blocks:
        raise DomainError(f"stream holds {stream.horizon} vertices, {blocks} blocks of {n} need {n * blocks}")
    return stream.prefix(n * blocks)


def block_stats(stream: PrefixStream, n: int, blocks: int) -> BlockStats:
    g = _block_prefix(stream, n, blocks)
    first = (1 << n) - 1
    E = tuple(
        sum(popcount(g.rows[v] & first) for v in range((ell - 1) * n, ell * n)) for ell in range(1, blocks + 1)
    )
    return BlockStats(n, E)


def convexity_term(e: int, n: int, s: int) -> int:
    """[e (e - n) ... (e - (s-1) n)]_+ as an integer (divide by s! n^(s-1) for the bound)."""
    factors = [e - i * n for i in range(s)]
    if any(f <= 0 for f in factors):
        return 0
    return prod(factors)


@dataclass(frozen=True)
class DegreeChain:
    """sum_l [E_l ...]_+/(s! n^(s-1)) <= sum_{v in J_L} C(d_v, s) <= (t-1) C(n, s)."""

    convex: Fraction
    middle: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.convex <= self.middle <= self.rhs

    def to_dict(self) -> Dict[str, Any]:
        return {"convex": str(self.convex), "middle": self.middle, "rhs": self.rhs, "holds": self.holds}


def degree_chain(stream: PrefixStream, s: int, t: int, n: int, blocks: int) -> DegreeChain:
    """Both computable links of the counting chain behind the block argument."""
    stats = block_stats(stream, n, blocks)
    g = stream.prefix(n * blocks)
    first = (1 << n) - 1
    middle = sum(comb(popcount(g.rows[v] & first), s) for v in range(g.n))
    convex = Fraction(sum(convexity_term(e, n, s) for e in stats.E), factorial(s) * n ** (s - 1))
    return DegreeChain(convex, middle, (t - 1) * comb(n, s))


def witness_threshold(s: int, t: int, n: int, ell: int) -> float:
    """16 t^(1/s) s |J_l|^(1-1/s) / (ln n)^(1/s) with |J_l| = l n."""
    if n < 2:
        raise DomainError(f"block width must be at least 2 for ln n > 0, got {n}")
    return 16 * t ** (1 / s) * s * (ell * n) ** (1 - 1 / s) / log(n) ** (1 / s)


@dataclass(frozen=True)
class LowDegreeWitness:
    ell: int
    vertex: int
    degree: int
    threshold: float

    def to_dict(self) -> Dict[str, Any]:
        return {"ell": self.ell, "vertex": self.vertex, "degree": self.degree, "threshold": self.threshold}


def low_degree_witness(stream: PrefixStream, s: int, t: int, n: int, blocks: int) -> Optional[LowDegreeWitness]:
    """First (l, v) with v in I_1 whose degree into J_l is below the threshold.

    Raises:
        DomainError: If ``blocks > n`` or the prefix G_{Ln} contains K_{s,t}
    """
    if blocks > n:
        raise DomainError(f"need L <= n, got L={blocks}, n={n}")
    g = _block_prefix(stream, n, blocks)
    check = is_kst_free(g, s, t)
    if not check.free:
        raise DomainError(f"prefix of {g.n} vertices contains K_{{{s},{t}}}: {check.witness}")
    for ell in range(1, blocks + 1):
        threshold = witness_threshold(s, t, n, ell)
        window = (1 << (ell * n)) - 1
        for v in range(n):
            degree = popcount(g.rows[v] & window)
            if degree < threshold:
                return LowDegreeWitness(ell, v, degree, threshold)
    logger.debug(f"No low-degree vertex in I_1 for n={n}, L={blocks}")
    return None


@dataclass
class LiminfSeries:
    """min degree of G_m times (ln m)^(1/s) / m^(1-1/s) for m = 2..N."""

    s: int
    ns: List[int] = field(default_factory=list)
    values: List[float] = field(default_factory=list)
    running_min: List[float] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {"s": self.s, "n": self.ns, "values": self.values, "running_min": self.running_min}


def liminf_statistic(stream: PrefixStream, s: int, n_max: int) -> LiminfSeries:
    if s < 2:
        raise DomainError(f"need s >= 2, got {s}")
    if n_max > stream.horizon:
        raise DomainError(f"stream holds {stream.horizon} vertices, asked for {n_max}")
    degrees = np.zeros(max(n_max, 0), dtype=np.int64)
    series = LiminfSeries(s=s)
    lowest = float("inf")
    for m in range(1, n_max + 1):
        back = stream.back_edges[m - 1]
        degrees[m - 1] = len(back)
        if back:
            degrees[list(back)] += 1
        if m < 2:
            continue
        value = float(degrees[:m].min()) * log(m) ** (1 / s) / m ** (1 - 1 / s)
        lowest = min(lowest, value)
        series.ns.append(m)
        series.values.append(value)
        series.running_min.append(lowest)
    return series
