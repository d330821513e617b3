"""Plain-text edge-list reading and writing.

Format: a header line ``n m`` followed by ``m`` lines ``u v length`` with
0-based vertex ids.  Text after ``#`` and blank lines are ignored.
Lengths are written with ``repr`` so a write/read cycle is bit-exact.
"""
from __future__ import annotations

import math
from typing import Iterable, TextIO

from .graph import GraphError, WeightedMultigraph


class EdgeListError(GraphError):
    """Malformed edge-list input; ``lineno`` is 1-based."""

    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def _content_lines(lines: Iterable[str]):
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_edge_list(text: str | Iterable[str]) -> WeightedMultigraph:
    lines = text.splitlines() if isinstance(text, str) else text
    it = _content_lines(lines)
    try:
        lineno, header = next(it)
    except StopIteration:
        raise EdgeListError(1, "missing 'n m' header") from None
    fields = header.split()
    if len(fields) != 2:
        raise EdgeListError(lineno, f"header needs 2 fields 'n m', got {len(fields)}")
    try:
        n, m = int(fields[0]), int(fields[1])
    except ValueError:
        raise EdgeListError(lineno, f"header fields must be integers: {header!r}") from None
    if n < 1 or m < 0:
        raise EdgeListError(lineno, f"need n >= 1 and m >= 0, got n={n} m={m}")

    edges = []
    last = lineno
    for lineno, line in it:
        last = lineno
        fields = line.split()
        if len(fields) != 3:
            raise EdgeListError(lineno, f"edge needs 3 fields 'u v length', got {len(fields)}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise EdgeListError(lineno, f"vertex ids must be integers: {line!r}") from None
        try:
            d = float(fields[2])
        except ValueError:
            raise EdgeListError(lineno, f"bad length {fields[2]!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListError(lineno, f"vertex id out of range [0, {n}): {u} {v}")
        if not (d > 0 and math.isfinite(d)):
            raise EdgeListError(lineno, f"length must be positive and finite, got {fields[2]}")
        edges.append((u, v, d))
        if len(edges) > m:
            raise EdgeListError(lineno, f"more than the {m} edges declared in the header")
    if len(edges) != m:
        raise EdgeListError(last, f"header declares {m} edges, found {len(edges)}")
    return WeightedMultigraph(n, edges)


def read_edge_list(path) -> WeightedMultigraph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh)


def format_edge_list(g: WeightedMultigraph, comments: Iterable[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"{g.n} {g.m}")
    out.extend(f"{u} {v} {d!r}" for u, v, d in g.edges())
    return "\n".join(out) + "\n"


def write_edge_list(g: WeightedMultigraph, dest: str | TextIO, comments: Iterable[str] = ()) -> None:
    text = format_edge_list(g, comments)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text)


def format_tree_edges(g: WeightedMultigraph, edge_ids: Iterable[int], root: int) -> str:
    """Tree as an edge list over the host's vertices, original edge id in a comment per line."""
    ids = list(edge_ids)
    lines = [f"# root {root}", f"{g.n} {len(ids)}"]
    for eid in ids:
        u, v, d = g.edge(eid)
        lines.append(f"{u} {v} {d!r}  # edge {eid}")
    return "\n".join(lines) + "\n"
