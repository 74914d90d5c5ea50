"""Reading and writing graphs: edge lists and graph6."""

import logging
import re
from pathlib import Path
from typing import List, Union

import networkx as nx

from .errors import DomainError, GraphFormatError
from .graph import Graph, complete_graph, cycle_graph, empty_graph, named_graph, path_graph, star_graph

logger = logging.getLogger(__name__)

GRAPH6_HEADER = b">>graph6<<"
GRAPH6_SUFFIXES = {".g6", ".graph6"}

_PATTERN_FAMILY = re.compile(r"^([kcpes])(\d+)$")


def parse_edgelist(text: str) -> Graph:
    """Parse the edge-list format.

    The first non-comment line holds the vertex count ``n``; every further line
    holds one edge ``u v`` with ``0 <= u, v < n``. ``#`` starts a comment.

    Raises:
        GraphFormatError: Naming the offending line
    """
    n = None
    edges = []
    seen = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 1 or not tokens[0].isdigit():
                raise GraphFormatError(f"expected the vertex count, got {raw.strip()!r}", line_no)
            n = int(tokens[0])
            continue
        if len(tokens) != 2:
            raise GraphFormatError(f"expected 'u v', got {raw.strip()!r}", line_no)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex in {raw.strip()!r}", line_no)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge ({u}, {v}) is outside 0..{n - 1}", line_no)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", line_no)
        key = (min(u, v), max(u, v))
        if key in seen:
            logger.debug(f"Duplicate edge {key} on line {line_no} ignored")
            continue
        seen.add(key)
        edges.append(key)
    if n is None:
        raise GraphFormatError("missing vertex count", 1)
    return Graph.from_edges(n, edges)


def format_edgelist(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_graph6(data: Union[str, bytes]) -> List[Graph]:
    """Parse one graph6 record per line (an optional ``>>graph6<<`` header is allowed)."""
    if isinstance(data, str):
        data = data.encode("ascii")
    graphs = []
    for line_no, raw in enumerate(data.splitlines(), start=1):
        line = raw.strip()
        if line.startswith(GRAPH6_HEADER):
            line = line[len(GRAPH6_HEADER):]
        if not line:
            continue
        try:
            graphs.append(Graph.from_networkx(nx.from_graph6_bytes(line)))
        except (nx.NetworkXError, ValueError, IndexError) as e:
            raise GraphFormatError(f"invalid graph6 record {line!r}: {e}", line_no)
    return graphs


def format_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii")


def is_graph6_path(path: Union[str, Path]) -> bool:
    return Path(path).suffix.lower() in GRAPH6_SUFFIXES


def load_graphs(path: Union[str, Path]) -> List[Graph]:
    """Load every graph in a file; graph6 files may hold many."""
    path = Path(path)
    if is_graph6_path(path):
        graphs = parse_graph6(path.read_bytes())
    else:
        graphs = [parse_edgelist(path.read_text())]
    logger.debug(f"Loaded {len(graphs)} graph(s) from {path}")
    return graphs


def load_graph(path: Union[str, Path]) -> Graph:
    """Load a single graph, choosing the format by file suffix.

    Raises:
        GraphFormatError: If the file is malformed or holds no single graph
    """
    graphs = load_graphs(path)
    if len(graphs) != 1:
        raise GraphFormatError(f"{path} holds {len(graphs)} graphs, expected exactly one")
    return graphs[0]


def dump_graph(g: Graph, path: Union[str, Path], fmt: str = "auto") -> None:
    """Write a graph as ``edgelist`` or ``graph6`` (``auto`` picks by suffix)."""
    path = Path(path)
    if fmt == "auto":
        fmt = "graph6" if is_graph6_path(path) else "edgelist"
    if fmt == "graph6":
        path.write_text(format_graph6(g))
    elif fmt == "edgelist":
        path.write_text(format_edgelist(g))
    else:
        raise DomainError(f"unknown graph format {fmt!r}")
    logger.info(f"Wrote {g!r} to {path}")


def resolve_pattern(spec: str) -> Graph:
    """Resolve a pattern argument: a graph name, a family shorthand or a file.

    Family shorthands are ``k<n>`` (complete), ``c<n>`` (cycle), ``p<n>``
    (path), ``e<n>`` (edgeless) and ``s<n>`` (star with n leaves).
    """
    key = spec.strip().lower()
    try:
        return named_graph(key)
    except DomainError:
        pass
    match = _PATTERN_FAMILY.match(key)
    if match:
        family, size = match.group(1), int(match.group(2))
        builders = {"k": complete_graph, "c": cycle_graph, "p": path_graph, "e": empty_graph, "s": star_graph}
        if family == "c" and size < 3:
            raise DomainError(f"cycle needs at least 3 vertices, got {spec!r}")
        return builders[family](size)
    if Path(spec).exists():
        return load_graph(spec)
    raise DomainError(f"{spec!r} is neither a known pattern nor an existing file")
