"""Explicit extremal constructions and their self-checks.

Every builder documents its vertex labelling:

* Turán graphs: parts are consecutive blocks, larger parts first.
* Joint-extremal graphs: ``V_0`` comes first, then ``V_1..V_r``; inside a part
  the subparts ``V_{i,1..r}`` are consecutive, larger first.
* Prism blow-ups: blocks follow the prism labels, triangles {0,1,2} and
  {3,4,5}, matching i--i+3, with 0--3 the special matching edge.
* Pendant cliques: clique on ``0..k-1``, vertex 0 joined to ``k..k+ell-1``.
"""

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Any, Callable, Dict, List, Type

from pydantic import BaseModel, Field, model_validator
from sympy import isprime

from .errors import ConstructionError, DomainError
from .graph import (
    Graph,
    blow_up,
    clique_number,
    complete_multipartite,
    count_cliques,
    is_kst_free,
    joint_number,
    mask_of,
    part_blocks,
    prism_graph,
)

logger = logging.getLogger(__name__)


class TuranSpec(BaseModel):
    """Balanced complete r-partite graph T_{n,r}."""
    n: int = Field(ge=1, description="Number of vertices")
    r: int = Field(ge=1, description="Number of parts")

    class Config:
        frozen = True
        json_schema_extra = {"example": {"n": 9, "r": 2}}

    @model_validator(mode="after")
    def _check_parts(self) -> "TuranSpec":
        if self.r > self.n:
            raise ValueError(f"r={self.r} parts do not fit on n={self.n} vertices")
        return self


class JointExtremalSpec(BaseModel):
    """G_{n,r}(s); ``s=1`` is the single-vertex case G_{n,r}."""
    n: int = Field(description="Number of vertices")
    r: int = Field(ge=2, description="Number of parts besides V_0")
    s: int = Field(default=1, ge=1, description="Size of the special part V_0")

    class Config:
        frozen = True
        json_schema_extra = {"example": {"n": 10, "r": 3, "s": 1}}

    @model_validator(mode="after")
    def _check_sizes(self) -> "JointExtremalSpec":
        if self.n <= self.s:
            raise ValueError(f"need n > s, got n={self.n}, s={self.s}")
        return self


class PrismBlowupSpec(BaseModel):
    """Blow-up S_{j,n} of the 3-prism."""
    n: int = Field(description="Number of vertices")
    j: int = Field(ge=0, description="Size of the four small parts")

    class Config:
        frozen = True
        json_schema_extra = {"example": {"n": 12, "j": 2}}

    @model_validator(mode="after")
    def _check_room(self) -> "PrismBlowupSpec":
        if self.n < 4 * self.j + 2:
            raise ValueError(f"need n >= 4j + 2 = {4 * self.j + 2}, got n={self.n}")
        return self


class PendantCliqueSpec(BaseModel):
    """T(k, ell): a K_k with ell pendant vertices on one clique vertex."""
    k: int = Field(ge=2, description="Clique order")
    ell: int = Field(default=0, ge=0, description="Number of pendant vertices")

    class Config:
        frozen = True
        json_schema_extra = {"example": {"k": 3, "ell": 6}}


class RademacherSpec(BaseModel):
    """T_{n,2} plus one edge inside a largest part."""
    n: int = Field(ge=3, description="Number of vertices")

    class Config:
        frozen = True


class PolaritySpec(BaseModel):
    """Orthogonal polarity graph of PG(2, q) with loops removed."""
    q: int = Field(ge=2, description="Prime field order")

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _check_prime(self) -> "PolaritySpec":
        if not isprime(self.q):
            raise ValueError(f"q={self.q} is not prime")
        return self


def equitable_sizes(total: int, parts: int) -> List[int]:
    """Split ``total`` into ``parts`` sizes differing by at most one, larger first."""
    if parts < 1:
        raise DomainError(f"need at least one part, got {parts}")
    q, rem = divmod(total, parts)
    return [q + 1] * rem + [q] * (parts - rem)


def turan_part_sizes(n: int, r: int) -> List[int]:
    if r < 1 or r > n:
        raise DomainError(f"Turán graph needs 1 <= r <= n, got n={n}, r={r}")
    return equitable_sizes(n, r)


def turan_number(n: int, r: int) -> int:
    """t_r(n), the number of edges of T_{n,r}."""
    sizes = turan_part_sizes(n, r)
    return (n * n - sum(size * size for size in sizes)) // 2


def turan_graph(spec: TuranSpec) -> Graph:
    return complete_multipartite(*turan_part_sizes(spec.n, spec.r))


def _joint_extremal_single(spec: JointExtremalSpec) -> Graph:
    n, r = spec.n, spec.r
    sizes = equitable_sizes(n - 1, r)
    blocks = part_blocks([1] + sizes)[1:]
    rows = [0] * n
    for i, block in enumerate(blocks):
        others = mask_of(v for j, other in enumerate(blocks) if j != i for v in other)
        for v in block:
            rows[v] = others
    extra = turan_number(n, r) - turan_number(n - 1, r)
    degrees = equitable_sizes(extra, r)
    for i, (block, d) in enumerate(zip(blocks, degrees)):
        if d > len(block):
            raise ConstructionError(
                f"vertex 0 needs {d} neighbours in part {i + 1} of size {len(block)} "
                f"to reach t_{r}({n}) = {turan_number(n, r)} edges"
            )
        for v in block[:d]:
            rows[0] |= 1 << v
            rows[v] |= 1
    return Graph(n, tuple(rows))


def _joint_extremal_general(spec: JointExtremalSpec) -> Graph:
    n, r, s = spec.n, spec.r, spec.s
    part_sizes = [s] + equitable_sizes(n - s, r)
    parts = part_blocks(part_sizes)
    # subparts[i][j] is V_{i,j+1}
    subparts = []
    for block in parts:
        subs, start = [], 0
        for size in equitable_sizes(len(block), r):
            subs.append(block[start:start + size])
            start += size
        subparts.append(subs)
    edges = []
    for i in range(1, r + 1):
        for i2 in range(i + 1, r + 1):
            edges.extend((u, v) for u in parts[i] for v in parts[i2])
    for j in range(r):
        for j2 in range(j + 1, r):
            edges.extend((u, v) for u in subparts[0][j] for v in subparts[0][j2])
        for i in range(1, r + 1):
            for j2 in range(r):
                if j2 != j:
                    edges.extend((u, v) for u in subparts[0][j] for v in subparts[i][j2])
    return Graph.from_edges(n, edges)


def joint_extremal(spec: JointExtremalSpec) -> Graph:
    """Build G_{n,r} (``s=1``) or G_{n,r}(s).

    For ``s=1`` the special vertex 0 gets exactly enough neighbours for
    t_r(n) edges, spread evenly over the parts with earlier parts taking the
    ceiling, and each part contributing its lowest labels. For ``s >= 2`` the
    edge count is whatever the recipe gives.

    Raises:
        ConstructionError: If a part is too small for its share of neighbours
    """
    if spec.s == 1:
        return _joint_extremal_single(spec)
    return _joint_extremal_general(spec)


def prism_part_sizes(n: int, j: int) -> List[int]:
    rest = n - 4 * j
    return [rest // 2, j, j, rest - rest // 2, j, j]


def prism_blowup(spec: PrismBlowupSpec) -> Graph:
    return blow_up(prism_graph(), prism_part_sizes(spec.n, spec.j))


def pendant_clique(spec: PendantCliqueSpec) -> Graph:
    k, ell = spec.k, spec.ell
    edges = [(u, v) for u in range(k) for v in range(u + 1, k)]
    edges.extend((0, k + i) for i in range(ell))
    return Graph.from_edges(k + ell, edges)


def rademacher_graph(spec: RademacherSpec) -> Graph:
    """T_{n,2} with the edge 0--1 added inside the larger part."""
    g = turan_graph(TuranSpec(n=spec.n, r=2))
    rows = list(g.rows)
    rows[0] |= 1 << 1
    rows[1] |= 1
    return Graph(g.n, tuple(rows))


def projective_points(q: int) -> List[tuple]:
    """Normalised points of PG(2, q): (1,a,b), then (0,1,b), then (0,0,1)."""
    points = [(1, a, b) for a in range(q) for b in range(q)]
    points += [(0, 1, b) for b in range(q)]
    points.append((0, 0, 1))
    return points


def polarity_graph(spec: PolaritySpec) -> Graph:
    """x ~ y iff their dot product vanishes mod q; absolute points lose their loop."""
    q = spec.q
    points = projective_points(q)
    edges = [
        (i, j)
        for i, x in enumerate(points)
        for j in range(i + 1, len(points))
        if sum(a * b for a, b in zip(x, points[j])) % q == 0
    ]
    return Graph.from_edges(len(points), edges)


@dataclass
class ConstructionCheck:
    """One expected-vs-computed comparison.

    ``relation`` is ``eq``, ``ge`` (computed >= expected), ``le`` or ``info``
    (reported only).
    """

    name: str
    computed: Any
    expected: Any = None
    relation: str = "eq"

    @property
    def passed(self) -> bool:
        if self.relation == "info" or self.expected is None:
            return True
        if self.relation == "ge":
            return self.computed >= self.expected
        if self.relation == "le":
            return self.computed <= self.expected
        return self.computed == self.expected

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "computed": self.computed,
            "expected": self.expected,
            "relation": self.relation,
            "passed": self.passed,
        }


@dataclass
class ConstructionReport:
    name: str
    params: Dict[str, Any]
    graph: Graph
    checks: List[ConstructionCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> List[ConstructionCheck]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "construction": self.name,
            "params": self.params,
            "n": self.graph.n,
            "edges": self.graph.edge_count(),
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
        }


def _clique_total(g: Graph, r: int) -> int:
    return count_cliques(g, r).total if r <= g.n else 0


def _turan_checks(spec: TuranSpec, g: Graph) -> List[ConstructionCheck]:
    sizes = turan_part_sizes(spec.n, spec.r)
    return [
        ConstructionCheck("edges", g.edge_count(), turan_number(spec.n, spec.r)),
        ConstructionCheck("part_spread", max(sizes) - min(sizes), 1, "le"),
        ConstructionCheck("clique_number", clique_number(g), spec.r, "le"),
    ]


def _joint_checks(spec: JointExtremalSpec, g: Graph) -> List[ConstructionCheck]:
    n, r = spec.n, spec.r
    turan = turan_number(n, r)
    cliques = _clique_total(g, r + 1)
    joint = joint_number(g, r + 1).size
    if spec.s > 1:
        return [
            ConstructionCheck("edges", g.edge_count(), turan, "info"),
            ConstructionCheck("edge_surplus", g.edge_count() - turan, None, "info"),
            ConstructionCheck(f"k{r + 1}_count", cliques, None, "info"),
            ConstructionCheck(f"joint_{r + 1}", joint, None, "info"),
        ]
    checks = [ConstructionCheck("edges", g.edge_count(), turan)]
    if (n - 1) % (r * r) == 0:
        d = (r - 1) * (n - 1) // (r * r)
        checks.append(ConstructionCheck(f"k{r + 1}_count", cliques, d ** r))
        checks.append(ConstructionCheck(f"joint_{r + 1}", joint, d ** (r - 1)))
    else:
        checks.append(ConstructionCheck(f"k{r + 1}_count", cliques, None, "info"))
        checks.append(ConstructionCheck(f"joint_{r + 1}", joint, None, "info"))
    return checks


def _prism_checks(spec: PrismBlowupSpec, g: Graph) -> List[ConstructionCheck]:
    n, j = spec.n, spec.j
    return [
        ConstructionCheck("edges", g.edge_count(), n * n // 4, "ge"),
        ConstructionCheck("triangles", _clique_total(g, 3), j * j * (n - 4 * j)),
        ConstructionCheck("max_triangles_per_edge", joint_number(g, 3).size, j, "le"),
    ]


def _pendant_checks(spec: PendantCliqueSpec, g: Graph) -> List[ConstructionCheck]:
    k, ell = spec.k, spec.ell
    checks = [
        ConstructionCheck("vertices", g.n, k + ell),
        ConstructionCheck("edges", g.edge_count(), comb(k, 2) + ell),
    ]
    if 2 * ell == k * k + k:
        checks.append(ConstructionCheck("vertices_closed_form", g.n, (k * k + 3 * k) // 2))
        checks.append(ConstructionCheck("edges_closed_form", g.edge_count(), k * k))
    return checks


def _rademacher_checks(spec: RademacherSpec, g: Graph) -> List[ConstructionCheck]:
    return [
        ConstructionCheck("edges", g.edge_count(), turan_number(spec.n, 2) + 1),
        ConstructionCheck("triangles", _clique_total(g, 3), spec.n // 2),
    ]


def _polarity_checks(spec: PolaritySpec, g: Graph) -> List[ConstructionCheck]:
    q = spec.q
    return [
        ConstructionCheck("vertices", g.n, q * q + q + 1),
        ConstructionCheck("edges", g.edge_count(), q * (q + 1) ** 2 // 2),
        ConstructionCheck("c4_free", bool(is_kst_free(g, 2, 2)), True),
    ]


CONSTRUCTIONS: Dict[str, Dict[str, Any]] = {
    "turan": {"spec": TuranSpec, "build": turan_graph, "checks": _turan_checks},
    "joint": {"spec": JointExtremalSpec, "build": joint_extremal, "checks": _joint_checks},
    "prism": {"spec": PrismBlowupSpec, "build": prism_blowup, "checks": _prism_checks},
    "pendant": {"spec": PendantCliqueSpec, "build": pendant_clique, "checks": _pendant_checks},
    "rademacher": {"spec": RademacherSpec, "build": rademacher_graph, "checks": _rademacher_checks},
    "polarity": {"spec": PolaritySpec, "build": polarity_graph, "checks": _polarity_checks},
}


def get_construction_names() -> List[str]:
    return list(CONSTRUCTIONS.keys())


def get_construction_spec(name: str) -> Type[BaseModel]:
    return _lookup(name)["spec"]


def _lookup(name: str) -> Dict[str, Any]:
    if name not in CONSTRUCTIONS:
        raise DomainError(f"unknown construction {name!r}; known: {', '.join(CONSTRUCTIONS)}")
    return CONSTRUCTIONS[name]


def build_construction(name: str, params: Dict[str, Any]) -> Graph:
    entry = _lookup(name)
    spec = entry["spec"](**params)
    builder: Callable[[Any], Graph] = entry["build"]
    return builder(spec)


def construction_report(name: str, params: Dict[str, Any]) -> ConstructionReport:
    """Build a construction and compare its computed counts with the stated ones.

    Args:
        name: Key of :data:`CONSTRUCTIONS`
        params: Keyword arguments for the construction's spec model

    Returns:
        ConstructionReport holding the graph and its checks
    """
    entry = _lookup(name)
    spec = entry["spec"](**params)
    graph = entry["build"](spec)
    report = ConstructionReport(name=name, params=spec.model_dump(), graph=graph, checks=entry["checks"](spec, graph))
    if report.passed:
        logger.debug(f"Construction {name} {report.params} passed {len(report.checks)} checks")
    else:
        logger.warning(f"Construction {name} {report.params} failed: {[c.name for c in report.failures()]}")
    return report


def joint_dichotomy_report(g: Graph, r: int) -> Dict[str, Any]:
    """Where a graph with at least t_r(n) edges sits between the two extremes.

    Either the graph is T_{n,r} itself, or it has K_{r+1} copies; the joint
    number is reported next to the size it reaches on G_{n,r}.
    """
    n = g.n
    turan = turan_number(n, r)
    if g.edge_count() < turan:
        raise DomainError(f"graph has {g.edge_count()} < t_{r}({n}) = {turan} edges")
    cliques = _clique_total(g, r + 1)
    joint = joint_number(g, r + 1).size if r + 1 <= n else 0
    scale = ((r - 1) / (r * r)) ** (r - 1) * n ** (r - 1)
    return {
        "n": n,
        "r": r,
        "edges": g.edge_count(),
        "turan_edges": turan,
        "is_turan": g.edge_count() == turan and cliques == 0,
        "cliques": cliques,
        "joint": joint,
        "joint_ratio": joint / scale if scale else None,
    }


def joint_part_layout(spec: JointExtremalSpec) -> List[int]:
    """Part sizes of V_0..V_r in label order."""
    return [spec.s] + equitable_sizes(spec.n - spec.s, spec.r)
