"""Graph text format, graph6 input and a shorthand for named graphs.

Text format: a line ``n m`` followed by ``m`` lines ``u v`` (0-based,
``u < v``, lexicographic). Several graphs may be concatenated; lines starting
with ``#`` carry ``key=value`` header fields and are otherwise ignored.
"""

from __future__ import annotations

import re
from pathlib import Path

import networkx as nx

from .graph import Graph, complement, complete, cycle, disjoint_union, empty, path


class GraphFormatError(ValueError):
    pass


def to_text(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.order} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def dump_graphs(graphs, header: dict | None = None) -> str:
    out = [f"# {k}={v}\n" for k, v in (header or {}).items()]
    out += [to_text(g) for g in graphs]
    return "".join(out)


def parse_graphs(text: str) -> tuple[list[Graph], dict[str, str]]:
    """Parse concatenated text-format graphs (or graph6 lines) plus header fields."""
    header: dict[str, str] = {}
    body: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith(">>graph6<<"):
            line = line[len(">>graph6<<"):]
        if not line:
            continue
        if line.startswith("#"):
            for field in line[1:].split():
                if "=" in field:
                    k, v = field.split("=", 1)
                    header[k] = v
            continue
        body.append(line)
    if body and not re.fullmatch(r"\d+\s+\d+", body[0]):
        return [from_graph6(line) for line in body], header

    graphs = []
    i = 0
    while i < len(body):
        try:
            n, m = map(int, body[i].split())
            edges = [tuple(map(int, body[i + 1 + j].split())) for j in range(m)]
        except (ValueError, IndexError) as exc:
            raise GraphFormatError(f"malformed graph block at line {i + 1}") from exc
        if any(len(e) != 2 for e in edges):
            raise GraphFormatError(f"malformed edge line in block at line {i + 1}")
        try:
            graphs.append(Graph.from_edges(n, edges))
        except ValueError as exc:
            raise GraphFormatError(str(exc)) from exc
        i += 1 + m
    return graphs, header


def from_text(text: str) -> Graph:
    graphs, _ = parse_graphs(text)
    if len(graphs) != 1:
        raise GraphFormatError(f"expected one graph, found {len(graphs)}")
    return graphs[0]


def from_graph6(line: str) -> Graph:
    try:
        nxg = nx.from_graph6_bytes(line.strip().encode("ascii"))
    except (nx.NetworkXError, ValueError) as exc:
        raise GraphFormatError(f"bad graph6 string {line!r}") from exc
    return Graph.from_edges(nxg.number_of_nodes(), nxg.edges())


def to_graph6(g: Graph) -> str:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.order))
    nxg.add_edges_from(g.edges())
    return nx.to_graph6_bytes(nxg, header=False).decode("ascii").strip()


def read_graphs(path: str | Path) -> tuple[list[Graph], dict[str, str]]:
    return parse_graphs(Path(path).read_text())


def write_graphs(path: str | Path, graphs, header: dict | None = None) -> None:
    Path(path).write_text(dump_graphs(graphs, header))


_TERM = re.compile(r"(\d*)(co)?([KPCE])(\d+)")


def named(spec: str) -> Graph:
    """Build a graph from shorthand such as ``K3``, ``coK3``, ``2K2``, ``K2+P3``, ``C5``.

    ``K`` clique, ``P`` path, ``C`` cycle, ``E`` edgeless; a leading count
    repeats the term, a ``co`` prefix complements it and ``+`` is disjoint union.
    """
    builders = {"K": complete, "P": path, "C": cycle, "E": empty}
    result = None
    for term in spec.replace(" ", "").split("+"):
        m = _TERM.fullmatch(term)
        if not m:
            raise GraphFormatError(f"cannot parse graph name {term!r}")
        times, co, kind, size = m.groups()
        g = builders[kind](int(size))
        if co:
            g = complement(g)
        for _ in range(int(times or 1)):
            result = g if result is None else disjoint_union(result, g)
    if result is None:
        raise GraphFormatError(f"empty graph name {spec!r}")
    return result


def load_family(source: str) -> list[Graph]:
    """Graphs from a file path, or a comma-separated list of shorthand names."""
    p = Path(source)
    if p.exists():
        graphs, _ = read_graphs(p)
        return graphs
    return [named(s) for s in source.split(",") if s.strip()]
