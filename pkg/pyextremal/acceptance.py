"""Acceptance criteria run by ``pyextremal verify-paper``.

Each criterion is a function from the active configuration to ``(passed,
message)``. They are grouped in suites named after the modules they exercise.
"""

import logging
import time
from dataclasses import dataclass
from itertools import combinations, product
from typing import Any, Callable, Dict, List, Optional, Tuple

import networkx as nx
import numpy as np
from jinja2 import Template

from .coloring import partition_coloring, pentagon_coloring
from .config import ToolkitConfig
from .constructions import construction_report
from .errors import DomainError, PyExtremalError
from .graph import (
    Graph,
    clique_number,
    complement,
    complete_graph,
    cycle_graph,
    is_kst_free,
    random_graph,
    random_graph_with_edges,
)
from .graph_io import resolve_pattern
from .kst import degree_sum_check
from .matching import check_hprime_triangle_structure, check_pair_bounds, max_s_connected_matching, random_alpha2_graph
from .multiplicity import count_mono, multiplicity_exact, multiplicity_upper_estimate, partition_coloring_report
from .progressions import family_size, find_independent_ap, pair_coverage_max, sr_exact
from .ramsey import IsomorphismCache, verify_sandwich
from .report import TEMPLATE_DIR

logger = logging.getLogger(__name__)

SUITES = ("joints", "ap", "mult", "ramsey", "match", "kst")

# per-pattern node budget of the sandwich criterion
SANDWICH_BUDGET = 5_000_000

Outcome = Tuple[bool, str]


@dataclass(frozen=True)
class Criterion:
    number: int
    suite: str
    name: str
    run: Callable[[ToolkitConfig], Outcome]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    suite: str
    name: str
    passed: bool
    message: str
    elapsed: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "number": self.number,
            "suite": self.suite,
            "name": self.name,
            "passed": self.passed,
            "message": self.message,
            "elapsed": self.elapsed,
        }


def _joint_identities(config: ToolkitConfig) -> Outcome:
    checked = 0
    for r in (2, 3, 4):
        for n in range(r * r + 1, 38, r * r):
            report = construction_report("joint", {"n": n, "r": r})
            if not report.passed:
                return False, f"G_{{{n},{r}}} failed {[c.name for c in report.failures()]}"
            checked += 1
    return True, f"{checked} joint-extremal graphs match edge, clique and joint counts"


def _prism_blowups(config: ToolkitConfig) -> Outcome:
    for n, j in ((12, 2), (18, 3), (16, 3)):
        report = construction_report("prism", {"n": n, "j": j})
        if not report.passed:
            return False, f"prism blow-up n={n}, j={j} failed {[c.name for c in report.failures()]}"
    return True, "3 prism blow-ups have the stated edge and triangle counts"


def _independent_ap_certificates(config: ToolkitConfig) -> Outcome:
    rng = np.random.default_rng(config.sampling.seed)
    n = 300
    for trial in range(200):
        k = (3, 4, 5)[trial % 3]
        family = ("coprime", "prime")[trial // 3 % 2]
        edges = (family_size(n, k, family) - 1) // k
        g = random_graph_with_edges(n, min(edges, n * (n - 1) // 2), rng=rng)
        certificate = find_independent_ap(g, k, family, workers=config.search.workers)
        if certificate.exhausted:
            return False, f"trial {trial}: {family} family exhausted with e(G)k < |family|"
    return True, "200 sparse random graphs on [300] all have an independent progression"


def _pair_coverage(config: ToolkitConfig) -> Outcome:
    checked = 0
    for k in range(2, 7):
        for n in range(2 * k, 501):
            worst = pair_coverage_max(n, k)
            if worst > k - 1:
                return False, f"n={n}, k={k}: a pair lies in {worst} progressions"
            checked += 1
    return True, f"{checked} (n, k) pairs cover every pair at most k-1 times"


def _has_rainbow_ap(colors: Tuple[int, ...], k: int) -> bool:
    n = len(colors)
    for d in range(1, n):
        for a in range(n - (k - 1) * d):
            if len({colors[a + i * d] for i in range(k)}) == k:
                return True
    return False


def naive_sub_ramsey(m: int, k: int, n_max: int) -> Optional[int]:
    """sr(m, k) by listing every colouring of [n] with colours 0..n-1, no pruning."""
    for n in range(1, n_max + 1):
        good = True
        for colors in product(range(n), repeat=n):
            if max(colors.count(c) for c in set(colors)) > m:
                continue
            if not _has_rainbow_ap(colors, k):
                good = False
                break
        if good and n >= k:
            return n
    return None


def _sub_ramsey(config: ToolkitConfig) -> Outcome:
    for k in range(1, 9):
        report = sr_exact(1, k, k + 1, budget=config.search.node_budget)
        if report.value != k:
            return False, f"sr(1,{k}) = {report.value}, expected {k}"
    report = sr_exact(2, 3, 8, budget=config.search.node_budget)
    oracle = naive_sub_ramsey(2, 3, 7)
    if report.value != oracle:
        return False, f"sr(2,3): search gives {report.value}, enumeration {oracle}"
    return True, f"sr(1,k) = k for k <= 8 and sr(2,3) = {oracle} by both methods"


def naive_triangle_minimum(n: int) -> int:
    """Fewest monochromatic triangles over all 2^C(n,2) colourings, by enumeration."""
    pairs = list(combinations(range(n), 2))
    index = {pair: i for i, pair in enumerate(pairs)}
    triples = [(index[(a, b)], index[(a, c)], index[(b, c)]) for a, b, c in combinations(range(n), 3)]
    best = len(triples)
    for mask in range(1 << len(pairs)):
        mono = sum(1 for x, y, z in triples if (mask >> x & 1) == (mask >> y & 1) == (mask >> z & 1))
        best = min(best, mono)
    return best


def _multiplicity_ground_truth(config: ToolkitConfig) -> Outcome:
    triangle = complete_graph(3)
    budget = config.search.multiplicity_budget
    five = multiplicity_exact(triangle, 5, 2, budget=budget, workers=config.search.workers)
    six = multiplicity_exact(triangle, 6, 2, budget=budget, workers=config.search.workers)
    oracle = naive_triangle_minimum(6)
    if five.value != 0:
        return False, f"M_2(K_3; 5) = {five.value}, expected 0"
    if six.value != oracle:
        return False, f"M_2(K_3; 6): search gives {six.value}, enumeration {oracle}"
    if count_mono(pentagon_coloring(), triangle).total != 0:
        return False, "pentagon colouring has a monochromatic triangle"
    return True, f"M_2(K_3; 5) = 0, M_2(K_3; 6) = {oracle}, pentagon witness valid"


def _random_coloring_bound(config: ToolkitConfig) -> Outcome:
    estimate = multiplicity_upper_estimate(complete_graph(3), 30, 2, config.sampling.trials, config.sampling.seed)
    message = f"mean {estimate.mean:.5f} +- {estimate.std_error:.5f} vs 0.25 ({estimate.deviation:.2f} SE)"
    return estimate.within_three_se, message


def _partition_coloring(config: ToolkitConfig) -> Outcome:
    for k in (3, 4):
        ell = (k * k + k) // 2
        n = 6 * (k - 1)
        report = partition_coloring_report(k, ell, n)
        if report["blue"] != 0:
            return False, f"k={k}: {report['blue']} blue copies"
        if report["red"] != report["red_inside_parts"]:
            return False, f"k={k}: red copies leave the parts"
        if clique_number(partition_coloring(n, k - 1).color_graph(1)) >= k:
            return False, f"k={k}: blue graph contains K_{k}"
    return True, "no blue copies and red copies confined to parts for k = 3, 4"


def _connected_patterns(max_vertices: int) -> List[Graph]:
    patterns = []
    for graph in nx.graph_atlas_g()[1:]:
        if graph.number_of_nodes() > max_vertices:
            break
        if graph.number_of_nodes() >= 2 and nx.is_connected(graph):
            patterns.append(Graph.from_networkx(graph))
    return patterns


def _sandwich(config: ToolkitConfig) -> Outcome:
    budget = min(config.search.ramsey_budget, SANDWICH_BUDGET)
    cache = IsomorphismCache(n_cap=config.search.ramsey_cap, budget=budget, workers=config.search.workers)
    k4 = resolve_pattern("k4")
    checked = 0
    for h in _connected_patterns(4):
        for v in range(h.n):
            report = verify_sandwich(h, v, cache=cache)
            if report.status == "violated":
                return False, f"bound violated for {h!r} minus vertex {v}: {report.to_dict()}"
            truncated = not (report.full.exact and report.deleted.exact)
            if truncated and not nx.is_isomorphic(h.to_networkx(), k4.to_networkx()):
                return False, f"r of {h!r} or its vertex-deleted subgraph unresolved"
            checked += 1
    return True, f"{checked} (pattern, vertex) pairs consistent with the sandwich bound"


def _four_connected_matchings(config: ToolkitConfig) -> Outcome:
    rng = np.random.default_rng(config.sampling.seed)
    graphs = [random_graph(int(rng.integers(2, 13)), 0.5, rng=rng) for _ in range(100)]
    for n in range(3, 13):
        graphs += [complete_graph(n), cycle_graph(n), complement(cycle_graph(n))]
    for g in graphs:
        size = max_s_connected_matching(g, 4).size
        expected = clique_number(g) // 2 if g.n else 0
        if size != expected:
            return False, f"{g!r}: 4-connected matching {size}, half clique number {expected}"
    return True, f"{len(graphs)} graphs: 4-connected matchings are half cliques"


def _triangle_structure(config: ToolkitConfig) -> Outcome:
    rng = np.random.default_rng(config.sampling.seed)
    triangles = 0
    for _ in range(100):
        g = random_alpha2_graph(int(rng.integers(5, 15)), rng=rng)
        structure = check_hprime_triangle_structure(g)
        if not structure.holds:
            return False, f"{g!r}: triangle on disjoint pairs {structure.disjoint_examples[0]}"
        check_pair_bounds(g)
        triangles += structure.triangles
    return True, f"100 graphs with independence number 2, {triangles} auxiliary triangles checked"


def _degree_sums(config: ToolkitConfig) -> Outcome:
    checked = 0
    for graph in nx.graph_atlas_g():
        g = Graph.from_networkx(graph)
        for s, t in ((2, 2), (2, 3), (3, 3)):
            if is_kst_free(g, s, t):
                degree_sum_check(g, s, t)
                checked += 1
    return True, f"degree-sum inequality holds in {checked} K_(s,t)-free cases on <= 7 vertices"


CRITERIA: List[Criterion] = [
    Criterion(1, "joints", "joint-extremal identities", _joint_identities),
    Criterion(2, "joints", "prism blow-up", _prism_blowups),
    Criterion(3, "ap", "independent progression certificates", _independent_ap_certificates),
    Criterion(4, "ap", "pair coverage", _pair_coverage),
    Criterion(5, "ap", "sub-Ramsey exactness", _sub_ramsey),
    Criterion(6, "mult", "multiplicity ground truth", _multiplicity_ground_truth),
    Criterion(7, "mult", "random colouring bound", _random_coloring_bound),
    Criterion(8, "mult", "partition colouring", _partition_coloring),
    Criterion(9, "ramsey", "vertex-deletion sandwich", _sandwich),
    Criterion(10, "match", "4-connected matchings", _four_connected_matchings),
    Criterion(11, "match", "auxiliary triangle structure", _triangle_structure),
    Criterion(12, "kst", "degree-sum inequality", _degree_sums),
]


def get_criteria(suite: Optional[str] = None) -> List[Criterion]:
    if suite is None or suite == "all":
        return list(CRITERIA)
    if suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    return [c for c in CRITERIA if c.suite == suite]


def run_criteria(suite: Optional[str] = None, config: Optional[ToolkitConfig] = None) -> List[CriterionResult]:
    """Run the criteria of one suite (all by default); failures never stop the run."""
    config = config if config is not None else ToolkitConfig()
    results = []
    for criterion in get_criteria(suite):
        start = time.perf_counter()
        try:
            passed, message = criterion.run(config)
        except PyExtremalError as e:
            passed, message = False, f"{type(e).__name__}: {e}"
        elapsed = time.perf_counter() - start
        logger.info(f"Criterion {criterion.number} ({criterion.name}): {'pass' if passed else 'FAIL'}")
        results.append(CriterionResult(criterion.number, criterion.suite, criterion.name, passed, message, elapsed))
    return results


def render_criteria(results: List[CriterionResult]) -> str:
    template = Template((TEMPLATE_DIR / "criteria.txt.tpl").read_text())
    return template.render(results=results, passed=sum(r.passed for r in results))
