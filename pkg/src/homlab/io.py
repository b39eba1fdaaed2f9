"""Text formats: the graph file, label sidecars, H-partite JSON and DOT.

Graph file::

    p graph <n> <m>
    e <u> <v>        (m lines, 0-based, u < v, sorted)

Blank lines and lines starting with ``c`` are ignored on input.  Labels live
next to the graph in ``<path>.labels.json`` as a JSON list of strings.

H-partite JSON::

    {"graph": {"n": 4, "edges": [[0, 1], ...]},
     "pattern": {"n": 3, "edges": [[0, 1], ...]},
     "coloring": [0, 1, 2, 0]}
"""
from __future__ import annotations

import json
import os
import warnings
from pathlib import Path

from .errors import GraphInputError
from .graph import Graph, HPartiteGraph, OrderedPattern


class DuplicateEdgeWarning(UserWarning):
    pass


def format_graph(g: Graph) -> str:
    lines = [f"p graph {g.n} {g.m}"]
    lines += [f"e {u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_graph_text(text: str, source: str = "<input>") -> Graph:
    """Parse the graph format; errors name the offending line."""
    n = None
    declared_m = 0
    edge_lines = 0
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        where = f"{source}:{lineno}"
        if parts[0] == "p":
            if n is not None:
                raise GraphInputError(f"{where}: second header line")
            if len(parts) != 4 or parts[1] != "graph":
                raise GraphInputError(f"{where}: expected 'p graph <n> <m>'")
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphInputError(f"{where}: header counts must be integers") from None
            if n < 0 or declared_m < 0:
                raise GraphInputError(f"{where}: negative count in header")
        elif parts[0] == "e":
            if n is None:
                raise GraphInputError(f"{where}: edge before the 'p graph' header")
            if len(parts) != 3:
                raise GraphInputError(f"{where}: expected 'e <u> <v>'")
            edge_lines += 1
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphInputError(f"{where}: endpoints must be integers") from None
            if u == v:
                raise GraphInputError(f"{where}: loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"{where}: endpoint out of range 0..{n - 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                warnings.warn(f"{where}: duplicate edge {key} ignored", DuplicateEdgeWarning, stacklevel=2)
                continue
            seen.add(key)
            edges.append(key)
        else:
            raise GraphInputError(f"{where}: unknown line type {parts[0]!r}")
    if n is None:
        raise GraphInputError(f"{source}: missing 'p graph' header")
    # the header may count duplicate lines or not; anything else is an error
    if declared_m not in (len(edges), edge_lines):
        raise GraphInputError(f"{source}: header says {declared_m} edges, found {edge_lines}")
    return Graph(n, tuple(edges))


def labels_path(path: str | os.PathLike) -> Path:
    return Path(str(path) + ".labels.json")


def read_graph(path: str | os.PathLike) -> Graph:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise GraphInputError(f"cannot read {p}: {exc.strerror}") from None
    g = parse_graph_text(text, str(p))
    lp = labels_path(p)
    if lp.exists():
        try:
            labels = json.loads(lp.read_text())
        except json.JSONDecodeError as exc:
            raise GraphInputError(f"{lp}: invalid JSON ({exc.msg})") from None
        if not isinstance(labels, list) or len(labels) != g.n:
            raise GraphInputError(f"{lp}: expected a list of {g.n} labels")
        g = g.with_labels(str(x) for x in labels)
    return g


parse_graph_file = read_graph


def write_graph(g: Graph, path: str | os.PathLike, with_labels: bool = True) -> None:
    p = Path(path)
    p.write_text(format_graph(g))
    if with_labels and g.labels is not None:
        labels_path(p).write_text(json.dumps(list(g.labels)) + "\n")


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def graph_from_dict(d: dict) -> Graph:
    try:
        return Graph(int(d["n"]), tuple(tuple(e) for e in d["edges"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphInputError(f"malformed graph object: {exc}") from None


def hpartite_to_json(hp: HPartiteGraph) -> str:
    doc = {
        "graph": graph_to_dict(hp.graph),
        "pattern": graph_to_dict(hp.pattern.graph),
        "coloring": list(hp.coloring),
    }
    return json.dumps(doc, sort_keys=True)


def hpartite_from_json(text: str) -> HPartiteGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphInputError(f"invalid H-partite JSON: {exc.msg}") from None
    if not isinstance(doc, dict) or {"graph", "pattern", "coloring"} - doc.keys():
        raise GraphInputError("H-partite JSON needs keys graph, pattern and coloring")
    return HPartiteGraph(
        graph_from_dict(doc["graph"]),
        OrderedPattern(graph_from_dict(doc["pattern"])),
        tuple(int(c) for c in doc["coloring"]),
    )


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f'  {v} [label="{g.label(v)}"];')
    lines += [f"  {u} -- {v};" for u, v in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_graph(arg: str) -> Graph:
    """A path to a graph file, or else a catalog expression such as
    ``Mycielski(C7)``."""
    if os.path.exists(arg):
        return read_graph(arg)
    from .catalog import parse_graph_name

    return parse_graph_name(arg)


def write_catalog(directory: str | os.PathLike) -> list[Path]:
    """Persist the default catalog: one graph file and one property sidecar
    (``<name>.json``) per entry."""
    from .catalog import default_entries

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    for e in default_entries():
        stem = e.name.replace("(", "_").replace(")", "").replace(",", "_")
        gp = d / f"{stem}.graph"
        write_graph(e.graph, gp, with_labels=False)
        (d / f"{stem}.json").write_text(
            json.dumps({"name": e.name, "properties": e.properties}, sort_keys=True) + "\n"
        )
        written.append(gp)
    return written
