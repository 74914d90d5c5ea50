"""CLI for the pyextremal verification toolkit."""

import functools
import json
import logging
import re
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import click
from pydantic import ValidationError

from . import __version__
from .acceptance import SUITES, render_criteria, run_criteria
from .coloring import (
    EdgeColoring,
    blowup_coloring,
    dump_coloring,
    load_coloring,
    partition_coloring,
    pentagon_coloring,
    random_coloring,
)
from .config import ToolkitConfig, load_config
from .constructions import (
    build_construction,
    construction_report,
    get_construction_names,
    get_construction_spec,
    joint_dichotomy_report,
    PolaritySpec,
    polarity_graph,
)
from .errors import BudgetExceeded, DomainError, InvariantViolation
from .graph_io import dump_graph, format_edgelist, format_graph6, resolve_pattern
from .kst import (
    PrefixStream,
    block_stats,
    complete_stream,
    degree_chain,
    degree_sum_check,
    empty_stream,
    liminf_statistic,
    low_degree_witness,
    matching_stream,
)
from .matching import (
    MODES,
    aux_degree_bound,
    auxiliary_graph,
    check_hprime_triangle_structure,
    check_pair_bounds,
    default_threshold,
    matching_via_aux,
    max_s_connected_matching,
)
from .multiplicity import (
    count_mono,
    goodman_minimum,
    multiplicity_exact,
    multiplicity_upper_estimate,
    partition_coloring_report,
)
from .progressions import (
    FAMILIES,
    IntColoring,
    coprime_survivors,
    family_size,
    find_independent_ap,
    pair_coverage_max,
    rainbow_ap_witness,
    set_mapping_ap,
    sr_exact,
    tk_check,
    turan_independence_threshold,
)
from .ramsey import ramsey_report, sample_random_ramsey, verify_sandwich
from .report import SearchReport, Stopwatch

# Setup logging
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)

STREAM_BUILDERS: Dict[str, Callable[[int], PrefixStream]] = {
    "empty": empty_stream,
    "complete": complete_stream,
    "matching": matching_stream,
}


def _fail(message: str, code: int) -> None:
    click.echo(click.style(f"Error: {message}", fg="red"), err=True)
    sys.exit(code)


def guarded(func: Callable) -> Callable:
    """Map toolkit exceptions to exit codes: 1 violated, 2 bad input, 3 budget."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except click.ClickException:
            raise
        except InvariantViolation as e:
            _fail(f"invariant violated: {e}", 1)
        except BudgetExceeded as e:
            _fail(str(e), 3)
        except (DomainError, ValidationError, OSError) as e:
            _fail(str(e), 2)
        except Exception as e:
            _fail(str(e), 1)

    return wrapper


def _emit(obj: Dict[str, Any], report: SearchReport, output: Optional[str] = None) -> None:
    """Print a report as a table or JSON, save it when asked, exit with its code."""
    config: ToolkitConfig = obj["config"]
    comparable = obj["comparable"]
    if config.output.json_output:
        click.echo(report.to_json(comparable=comparable, indent=config.output.indent or None))
    else:
        click.echo(report.render_table())
    if output:
        report.save(output, comparable=comparable)
    if report.exit_code:
        sys.exit(report.exit_code)


def _int_list(text: str) -> List[int]:
    try:
        return [int(token) for token in re.split(r"[\s,]+", text.strip()) if token]
    except ValueError:
        raise DomainError(f"expected integers separated by spaces or commas, got {text!r}")


def _load_stream(spec: str) -> PrefixStream:
    """A stream file, ``polarity:q`` or ``empty|complete|matching:horizon``."""
    if Path(spec).exists():
        return PrefixStream.load(spec)
    kind, _, size = spec.partition(":")
    if not size.isdigit():
        raise DomainError(f"{spec!r} is neither a stream file nor kind:size")
    if kind == "polarity":
        return PrefixStream.from_graph(polarity_graph(PolaritySpec(q=int(size))))
    if kind not in STREAM_BUILDERS:
        raise DomainError(f"unknown stream kind {kind!r}; use polarity or {', '.join(STREAM_BUILDERS)}")
    return STREAM_BUILDERS[kind](int(size))


def _resolve_coloring(spec: str) -> EdgeColoring:
    if spec == "pentagon":
        return pentagon_coloring()
    return load_coloring(spec)


@click.group()
@click.version_option(version=__version__)
@click.option("--config", "config_path", type=click.Path(exists=True), help="YAML configuration file")
@click.option("--json", "json_output", is_flag=True, help="Emit JSON reports instead of tables")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Processes for independent branches")
@click.option("--comparable", is_flag=True, help="Leave timestamp and wall time out of JSON reports")
@click.option("--verbose", "-v", is_flag=True, help="Log search progress")
@click.option("--quiet", "-q", is_flag=True, help="Only log warnings and errors")
@click.pass_context
def main(ctx, config_path, json_output, workers, comparable, verbose, quiet):
    """pyextremal - exact checks for small extremal and Ramsey-type problems."""
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    elif quiet:
        logging.getLogger().setLevel(logging.WARNING)
    try:
        config = load_config(config_path)
    except Exception as e:
        _fail(f"cannot load configuration: {e}", 2)
    if json_output:
        config.output.json_output = True
    if workers is not None:
        config.search.workers = workers
    ctx.obj = {"config": config, "comparable": comparable}


# ---------------------------------------------------------------- constructions


@main.group()
def construct():
    """Build extremal constructions and check their stated counts."""
    pass


@construct.command("list")
def construct_list():
    """List constructions and their parameters."""
    for name in get_construction_names():
        spec = get_construction_spec(name)
        params = ", ".join(
            f"--{field}" + ("" if info.is_required() else f" [{info.default}]")
            for field, info in spec.model_fields.items()
        )
        click.echo(f"{click.style(name, fg='green')}: {(spec.__doc__ or '').strip()}  ({params})")


def _construction_command(name: str) -> click.Command:
    spec = get_construction_spec(name)

    @click.pass_obj
    @guarded
    def command(obj, emit, output, **params):
        params = {key: value for key, value in params.items() if value is not None}
        if emit == "json":
            report = construction_report(name, params)
            data = report.to_dict()
            data["graph6"] = format_graph6(report.graph).strip()
            text = json.dumps(data, indent=obj["config"].output.indent, sort_keys=True) + "\n"
            if output:
                Path(output).write_text(text)
                logger.info(f"Saved construction report to {output}")
            else:
                click.echo(text, nl=False)
            if not report.passed:
                sys.exit(1)
            return
        graph = build_construction(name, params)
        if output:
            dump_graph(graph, output, emit)
        else:
            click.echo(format_graph6(graph) if emit == "graph6" else format_edgelist(graph), nl=False)

    for field, info in reversed(list(spec.model_fields.items())):
        command = click.option(
            f"--{field}",
            type=int,
            required=info.is_required(),
            default=None,
            help=info.description,
        )(command)
    command = click.option("--output", "-o", type=click.Path(), help="Write here instead of stdout")(command)
    command = click.option(
        "--emit", type=click.Choice(["json", "edgelist", "graph6"]), default="json", help="Output format"
    )(command)
    return click.command(name, help=(spec.__doc__ or "").strip())(command)


for _name in get_construction_names():
    construct.add_command(_construction_command(_name))


@construct.command("dichotomy")
@click.option("--graph", "graph_spec", required=True, help="Graph file or pattern name")
@click.option("--r", type=int, required=True, help="Number of Turán parts")
@click.pass_obj
@guarded
def construct_dichotomy(obj, graph_spec, r):
    """Whether a graph with t_r(n) edges is Turán or carries K_{r+1} joints."""
    details = joint_dichotomy_report(resolve_pattern(graph_spec), r)
    _emit(obj, SearchReport(command=f"construct dichotomy r={r}", value=details["joint"], details=details))


# ---------------------------------------------------------------- progressions


@main.group()
def ap():
    """Arithmetic progressions: independent ones, rainbow ones, sub-Ramsey numbers."""
    pass


@ap.command("find-independent")
@click.option("--graph", "graph_spec", required=True, help="Graph on [n] (vertex i-1 is the integer i)")
@click.option("--k", type=int, required=True, help="Progression length")
@click.option("--family", type=click.Choice(list(FAMILIES)), default="all", help="Progression family")
@click.option("--forbid", default="", help="Integers the progression must avoid")
@click.option("--output", "-o", type=click.Path(), help="Save the report as JSON")
@click.pass_obj
@guarded
def ap_find_independent(obj, graph_spec, k, family, forbid, output):
    """First family member whose terms are pairwise non-adjacent."""
    g = resolve_pattern(graph_spec)
    with Stopwatch() as watch:
        certificate = find_independent_ap(g, k, family, _int_list(forbid), obj["config"].search.workers)
    details = certificate.to_dict()
    details["turan_threshold"] = turan_independence_threshold(g.n, k) if k >= 2 else None
    witness = certificate.progression.terms if certificate.progression else None
    report = SearchReport(
        command=f"ap find-independent k={k} family={family}",
        value=certificate.progression.to_dict() if certificate.progression else None,
        witness=witness,
        elapsed=watch.elapsed,
        details=details,
    )
    _emit(obj, report, output)


@ap.command("sieve")
@click.option("--n", type=int, required=True, help="Length of the interval")
@click.option("--k", type=int, required=True, help="Progression length")
@click.pass_obj
@guarded
def ap_sieve(obj, n, k):
    """Differences free of prime factors up to k and the family sizes they give."""
    bound = n // (2 * k)
    survivors = coprime_survivors(bound, k) if bound >= 1 else []
    details = {family: family_size(n, k, family) for family in FAMILIES}
    _emit(obj, SearchReport(command=f"ap sieve n={n} k={k}", value=survivors, details=details))


@ap.command("set-mapping")
@click.option("--perm", required=True, help="pi(1) ... pi(n), separated by spaces or commas")
@click.option("--k", type=int, required=True, help="Progression length")
@click.pass_obj
@guarded
def ap_set_mapping(obj, perm, k):
    """A k-term progression A with pi(A) disjoint from A."""
    progression = set_mapping_ap(_int_list(perm), k)
    report = SearchReport(
        command=f"ap set-mapping k={k}",
        value=progression.to_dict() if progression else None,
        witness=progression.terms if progression else None,
    )
    _emit(obj, report)


@ap.command("rainbow")
@click.option("--colors", required=True, help="Colours of 1..n, separated by spaces or commas")
@click.option("--k", type=int, required=True, help="Progression length")
@click.option("--m", type=int, default=None, help="Largest allowed colour class")
@click.pass_obj
@guarded
def ap_rainbow(obj, colors, k, m):
    """A rainbow k-term progression of an integer colouring."""
    progression = rainbow_ap_witness(IntColoring.from_sequence(_int_list(colors), m), k)
    report = SearchReport(
        command=f"ap rainbow k={k}",
        value=progression.to_dict() if progression else None,
        witness=progression.terms if progression else None,
    )
    _emit(obj, report)


@ap.command("sr-exact")
@click.option("--m", type=int, required=True, help="Largest colour class")
@click.option("--k", type=int, required=True, help="Progression length")
@click.option("--nmax", type=int, required=True, help="Largest n searched")
@click.option("--budget", type=int, default=None, help="Projected-node budget")
@click.option("--output", "-o", type=click.Path(), help="Save the report as JSON")
@click.pass_obj
@guarded
def ap_sr_exact(obj, m, k, nmax, budget, output):
    """Exact sub-Ramsey number sr(m, k)."""
    search = obj["config"].search
    report = sr_exact(m, k, nmax, budget or search.node_budget, search.workers)
    _emit(obj, report, output)


@ap.command("tk")
@click.option("--t", type=int, required=True, help="Number of colours")
@click.option("--m", type=int, required=True, help="Size of every colour class")
@click.option("--k", type=int, required=True, help="Progression length")
@click.option("--budget", type=int, default=None, help="Projected-node budget")
@click.option("--output", "-o", type=click.Path(), help="Save the report as JSON")
@click.pass_obj
@guarded
def ap_tk(obj, t, m, k, budget, output):
    """Whether every equinumerous t-colouring of [tm] has a rainbow k-AP."""
    search = obj["config"].search
    _emit(obj, tk_check(t, m, k, budget or search.node_budget, search.workers), output)


@ap.command("coverage")
@click.option("--n", type=int, required=True, help="Length of the interval")
@click.option("--k", type=int, required=True, help="Progression length")
@click.pass_obj
@guarded
def ap_coverage(obj, n, k):
    """Most coprime-family progressions through one pair of integers."""
    worst = pair_coverage_max(n, k)
    report = SearchReport(
        command=f"ap coverage n={n} k={k}",
        status="complete" if worst <= k - 1 else "violated",
        value=worst,
        details={"bound": k - 1},
    )
    _emit(obj, report)


# ---------------------------------------------------------------- multiplicity


@main.group()
def mult():
    """Monochromatic copies in edge colourings of K_n."""
    pass


@mult.command("count")
@click.option("--coloring", "coloring_spec", required=True, help="Colouring file (.json or text) or 'pentagon'")
@click.option("--pattern", required=True, help="Pattern name or graph file")
@click.pass_obj
@guarded
def mult_count(obj, coloring_spec, pattern):
    """Exact monochromatic copy count of a pattern in one colouring."""
    coloring = _resolve_coloring(coloring_spec)
    with Stopwatch() as watch:
        count = count_mono(coloring, resolve_pattern(pattern), obj["config"].search.workers)
    report = SearchReport(
        command=f"mult count {pattern}",
        value=count.total,
        elapsed=watch.elapsed,
        details={"n": coloring.n, "q": coloring.q, "per_color": list(count.per_color)},
    )
    _emit(obj, report)


@mult.command("exact")
@click.option("--pattern", required=True, help="Pattern name or graph file")
@click.option("--n", type=int, required=True, help="Order of the complete graph")
@click.option("--q", type=int, default=2, help="Number of colours")
@click.option("--budget", type=int, default=None, help="Node budget")
@click.option("--no-symmetry", is_flag=True, help="Colour every pair freely")
@click.option("--witness", "witness_path", type=click.Path(), help="Write a minimising colouring here")
@click.option("--output", "-o", type=click.Path(), help="Save the report as JSON")
@click.pass_obj
@guarded
def mult_exact(obj, pattern, n, q, budget, no_symmetry, witness_path, output):
    """Minimum number of monochromatic copies over all q-colourings of K_n."""
    search = obj["config"].search
    report = multiplicity_exact(
        resolve_pattern(pattern), n, q, budget or search.multiplicity_budget, not no_symmetry, search.workers
    )
    if witness_path and report.witness is not None:
        dump_coloring(EdgeColoring.from_dict(report.witness), witness_path)
    _emit(obj, report, output)


@mult.command("estimate")
@click.option("--pattern", required=True, help="Pattern name or graph file")
@click.option("--n", type=int, required=True, help="Order of the complete graph")
@click.option("--q", type=int, default=2, help="Number of colours")
@click.option("--trials", type=int, default=None, help="Monte-Carlo trials")
@click.option("--seed", type=int, default=None, help="Generator seed")
@click.pass_obj
@guarded
def mult_estimate(obj, pattern, n, q, trials, seed):
    """Monochromatic proportion in uniform random colourings against q^(1-m)."""
    sampling = obj["config"].sampling
    seed = sampling.seed if seed is None else seed
    with Stopwatch() as watch:
        estimate = multiplicity_upper_estimate(resolve_pattern(pattern), n, q, trials or sampling.trials, seed)
    report = SearchReport(
        command=f"mult estimate {pattern} n={n} q={q}",
        value=estimate.mean,
        exact=False,
        seed=seed,
        elapsed=watch.elapsed,
        details=estimate.to_dict(),
    )
    _emit(obj, report)


@mult.command("goodman")
@click.option("--n", type=int, required=True, help="Order of the complete graph")
@click.pass_obj
@guarded
def mult_goodman(obj, n):
    """Closed-form minimum number of monochromatic triangles."""
    _emit(obj, SearchReport(command=f"mult goodman n={n}", value=goodman_minimum(n)))


@mult.command("partition")
@click.option("--k", type=int, required=True, help="Clique order of the pendant pattern")
@click.option("--ell", type=int, required=True, help="Number of pendant vertices")
@click.option("--n", type=int, required=True, help="Order of the complete graph")
@click.pass_obj
@guarded
def mult_partition(obj, k, ell, n):
    """Red and blue pendant-clique copies in the colouring by k-1 parts."""
    details = partition_coloring_report(k, ell, n)
    ok = details["blue"] == 0 and details["red"] == details["red_inside_parts"]
    report = SearchReport(
        command=f"mult partition k={k} ell={ell} n={n}",
        status="complete" if ok else "violated",
        value=details["red"] + details["blue"],
        details=details,
    )
    _emit(obj, report)


@mult.command("coloring")
@click.argument("kind", type=click.Choice(["pentagon", "partition", "blowup", "random"]))
@click.option("--n", type=int, default=None, help="Number of vertices")
@click.option("--parts", type=int, default=2, help="Classes of a partition colouring")
@click.option("--q", type=int, default=2, help="Colours of a random colouring")
@click.option("--base", default="pentagon", help="Base colouring of a blow-up")
@click.option("--seed", type=int, default=None, help="Generator seed")
@click.option("--output", "-o", type=click.Path(), required=True, help="Colouring file (.json or text)")
@click.pass_obj
@guarded
def mult_coloring(obj, kind, n, parts, q, base, seed, output):
    """Write one of the standard colourings to a file."""
    if kind != "pentagon" and n is None:
        raise DomainError(f"{kind} colouring needs --n")
    if kind == "pentagon":
        coloring = pentagon_coloring()
    elif kind == "partition":
        coloring = partition_coloring(n, parts)
    elif kind == "blowup":
        coloring = blowup_coloring(_resolve_coloring(base), n)
    else:
        coloring = random_coloring(n, q, seed=obj["config"].sampling.seed if seed is None else seed)
    dump_coloring(coloring, output)
    click.echo(click.style(f"Wrote {kind} colouring of K_{coloring.n} to {output}", fg="green"))


# ---------------------------------------------------------------- ramsey


@main.group()
def ramsey():
    """Exact two-colour Ramsey numbers of small patterns."""
    pass


@ramsey.command("exact")
@click.option("--pattern", required=True, help="Pattern name or graph file")
@click.option("--cap", type=int, default=None, help="Largest n searched")
@click.option("--budget", type=int, default=None, help="Node budget over all n")
@click.option("--no-symmetry", is_flag=True, help="Colour every pair freely")
@click.option("--witness", "witness_path", type=click.Path(), help="Write the critical colouring here")
@click.option("--output", "-o", type=click.Path(), help="Save the report as JSON")
@click.pass_obj
@guarded
def ramsey_exact_command(obj, pattern, cap, budget, no_symmetry, witness_path, output):
    """Smallest n with a monochromatic copy in every colouring of K_n."""
    search = obj["config"].search
    report = ramsey_report(
        resolve_pattern(pattern),
        pattern,
        cap or search.ramsey_cap,
        budget or search.ramsey_budget,
        not no_symmetry,
        search.workers,
    )
    if witness_path and report.witness is not None:
        dump_coloring(EdgeColoring.from_dict(report.witness), witness_path)
    _emit(obj, report, output)


@ramsey.command("sandwich")
@click.option("--pattern", required=True, help="Pattern name or graph file")
@click.option("--delete", "deleted", type=int, required=True, help="Vertex removed from the pattern")
@click.option("--cap", type=int, default=None, help="Largest n searched")
@click.option("--budget", type=int, default=None, help="Node budget per Ramsey number")
@click.pass_obj
@guarded
def ramsey_sandwich(obj, pattern, deleted, cap, budget):
    """Check r(H - v) <= r(H) <= 2 v(H - v) r(H - v)."""
    search = obj["config"].search
    with Stopwatch() as watch:
        sandwich = verify_sandwich(
            resolve_pattern(pattern), deleted, cap or search.ramsey_cap, budget or search.ramsey_budget, search.workers
        )
    status = {"holds": "complete", "violated": "violated", "inconclusive": "interval"}[sandwich.status]
    report = SearchReport(
        command=f"ramsey sandwich {pattern} delete={deleted}",
        status=status,
        value=sandwich.status,
        exact=sandwich.full.exact and sandwich.deleted.exact,
        nodes=sandwich.full.nodes + sandwich.deleted.nodes,
        elapsed=watch.elapsed,
        details=sandwich.to_dict(),
    )
    _emit(obj, report)


@ramsey.command("sample")
@click.option("--n", type=int, required=True, help="Vertices of G(n, p)")
@click.option("--p", type=float, required=True, help="Edge probability")
@click.option("--trials", type=int, default=None, help="Number of samples")
@click.option("--seed", type=int, default=None, help="Generator seed")
@click.option("--cap", type=int, default=None, help="Largest n searched")
@click.option("--budget", type=int, default=None, help="Node budget per Ramsey number")
@click.option("--output", "-o", type=click.Path(), help="Save the report as JSON")
@click.pass_obj
@guarded
def ramsey_sample(obj, n, p, trials, seed, cap, budget, output):
    """Distribution of log2 r over random patterns G(n, p)."""
    config = obj["config"]
    seed = config.sampling.seed if seed is None else seed
    with Stopwatch() as watch:
        sample = sample_random_ramsey(
            n,
            p,
            trials or config.sampling.trials,
            seed,
            cap or config.search.ramsey_cap,
            budget or config.search.ramsey_budget,
            config.search.workers,
        )
    report = SearchReport(
        command=f"ramsey sample n={n} p={p}",
        status="interval" if sample.censored else "complete",
        value=sample.mean_log,
        exact=not sample.censored,
        seed=seed,
        elapsed=watch.elapsed,
        details=sample.to_dict(),
    )
    _emit(obj, report, output)


# ---------------------------------------------------------------- matchings


@main.group()
def match():
    """Connected matchings in graphs with independence number at most two."""
    pass


@match.command("exact")
@click.option("--graph", "graph_spec", required=True, help="Graph file or pattern name")
@click.option("--s", type=int, required=True, help="Connections required between matching edges")
@click.option("--output", "-o", type=click.Path(), help="Save the report as JSON")
@click.pass_obj
@guarded
def match_exact(obj, graph_spec, s, output):
    """A maximum s-connected matching."""
    with Stopwatch() as watch:
        cert = max_s_connected_matching(resolve_pattern(graph_spec), s)
    report = SearchReport(command=f"match exact s={s}", value=cert.size, witness=cert.to_dict(), elapsed=watch.elapsed)
    _emit(obj, report, output)


@match.command("aux")
@click.option("--graph", "graph_spec", required=True, help="Graph file or pattern name")
@click.option("--s", type=int, required=True, help="2 or 3")
@click.option("--mode", type=click.Choice(list(MODES)), default="greedy", help="Independent-set method")
@click.option("--threshold", type=int, default=None, help="Keep edges with |A_uv| at most this")
@click.option("--t", "target", type=int, default=None, help="Use ceil(10 t^2 / n) as the threshold")
@click.pass_obj
@guarded
def match_aux(obj, graph_spec, s, mode, threshold, target):
    """An s-connected matching from an independent set of the auxiliary graph."""
    g = resolve_pattern(graph_spec)
    if threshold is None and target is not None:
        threshold = default_threshold(g.n, target)
    cert = matching_via_aux(g, s, mode, threshold)
    aux = auxiliary_graph(g, s, threshold)
    report = SearchReport(
        command=f"match aux s={s} mode={mode}",
        value=cert.size,
        exact=mode == "exact",
        witness=cert.to_dict(),
        details={
            "threshold": threshold,
            "aux_vertices": aux.graph.n,
            "aux_edges": aux.graph.edge_count(),
            "greedy_guarantee": str(aux_degree_bound(aux.graph)),
        },
    )
    _emit(obj, report)


@match.command("structure")
@click.option("--graph", "graph_spec", required=True, help="Graph file or pattern name")
@click.pass_obj
@guarded
def match_structure(obj, graph_spec):
    """Triangles of the 2-connection auxiliary graph and the |B_uv| bound."""
    g = resolve_pattern(graph_spec)
    structure = check_hprime_triangle_structure(g)
    bounds = check_pair_bounds(g)
    report = SearchReport(
        command="match structure",
        status="complete" if structure.holds else "violated",
        value=structure.holds,
        details={"triangles": structure.to_dict(), "pair_bounds": bounds.to_dict()},
    )
    _emit(obj, report)


# ---------------------------------------------------------------- K_{s,t}-free streams


@main.group()
def kst():
    """Degree checks on K_{s,t}-free graphs and growing vertex streams."""
    pass


@kst.command("degsum")
@click.option("--graph", "graph_spec", required=True, help="Graph file or pattern name")
@click.option("--s", type=int, required=True)
@click.option("--t", type=int, required=True)
@click.option("--block", default=None, help="Vertices the degrees count into (default all)")
@click.pass_obj
@guarded
def kst_degsum(obj, graph_spec, s, t, block):
    """sum_v C(d_v, s) against (t-1) C(n, s)."""
    check = degree_sum_check(resolve_pattern(graph_spec), s, t, _int_list(block) if block else None)
    report = SearchReport(command=f"kst degsum s={s} t={t}", value=check.holds, details=check.to_dict())
    _emit(obj, report)


@kst.command("blocks")
@click.option("--stream", "stream_spec", required=True, help="Stream file, polarity:q or empty|complete|matching:N")
@click.option("--n", type=int, required=True, help="Block width")
@click.option("--blocks", type=int, required=True, help="Number of blocks L")
@click.option("--s", type=int, default=2)
@click.option("--t", type=int, default=2)
@click.pass_obj
@guarded
def kst_blocks(obj, stream_spec, n, blocks, s, t):
    """Edge counts E_l between the first block and block l, with the degree chain."""
    stream = _load_stream(stream_spec)
    stats = block_stats(stream, n, blocks)
    chain = degree_chain(stream, s, t, n, blocks)
    report = SearchReport(
        command=f"kst blocks n={n} L={blocks}",
        value=list(stats.E),
        details={"F": list(stats.F), "chain": chain.to_dict()},
    )
    _emit(obj, report)


@kst.command("witness")
@click.option("--stream", "stream_spec", required=True, help="Stream file, polarity:q or empty|complete|matching:N")
@click.option("--s", type=int, required=True)
@click.option("--t", type=int, required=True)
@click.option("--n", type=int, required=True, help="Block width")
@click.option("--blocks", type=int, required=True, help="Number of blocks L <= n")
@click.pass_obj
@guarded
def kst_witness(obj, stream_spec, s, t, n, blocks):
    """A vertex of the first block with low degree into some J_l."""
    witness = low_degree_witness(_load_stream(stream_spec), s, t, n, blocks)
    report = SearchReport(
        command=f"kst witness s={s} t={t} n={n} L={blocks}",
        value=witness.to_dict() if witness else None,
    )
    _emit(obj, report)


@kst.command("liminf")
@click.option("--stream", "stream_spec", required=True, help="Stream file, polarity:q or empty|complete|matching:N")
@click.option("--s", type=int, required=True)
@click.option("--nmax", type=int, required=True, help="Longest prefix")
@click.option("--output", "-o", type=click.Path(), help="Save the report as JSON")
@click.pass_obj
@guarded
def kst_liminf(obj, stream_spec, s, nmax, output):
    """min degree of G_m scaled by (ln m)^(1/s) / m^(1-1/s), m = 2..nmax."""
    series = liminf_statistic(_load_stream(stream_spec), s, nmax)
    report = SearchReport(
        command=f"kst liminf s={s} nmax={nmax}",
        value=series.running_min[-1] if series.running_min else None,
        exact=False,
        details=series.to_dict(),
    )
    _emit(obj, report, output)


# ---------------------------------------------------------------- acceptance


@main.command("verify-paper")
@click.option("--suite", type=click.Choice(["all", *SUITES]), default="all", help="Criteria to run")
@click.pass_obj
@guarded
def verify_paper(obj, suite):
    """Run the acceptance criteria; one line per criterion."""
    config: ToolkitConfig = obj["config"]
    results = run_criteria(suite, config)
    if config.output.json_output:
        click.echo(json.dumps([r.to_dict() for r in results], indent=config.output.indent or None))
    else:
        click.echo(render_criteria(results), nl=False)
    if not all(r.passed for r in results):
        sys.exit(1)


main.add_command(verify_paper, name="verify")


if __name__ == "__main__":
    main()
