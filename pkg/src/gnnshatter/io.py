"""Text formats for graphs, degree histograms, GNN specs and manifests.

Graph file::

    n m
    u v          (m lines, 0-based, each undirected edge once)
    label v l    (optional; missing labels are 0)

Histogram file: one ``degree count`` pair per line.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .gnn import GnnSpec
from .graph import DegreeHistogram, Graph, GraphError


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line


def _ints(parts: list[str], lineno: int, source: str | None) -> list[int]:
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(parts)!r}", lineno, source) from None
    if any(v < 0 for v in vals):
        raise ParseError("negative value", lineno, source)
    return vals


def parse_graph(text: str, source: str | None = None) -> Graph:
    lines = [(k, ln.split()) for k, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines:
        raise ParseError("empty graph file", None, source)
    lineno, head = lines[0]
    if len(head) != 2:
        raise ParseError("header must be 'n m'", lineno, source)
    n, m = _ints(head, lineno, source)
    body = lines[1:]
    if len(body) < m:
        raise ParseError(f"expected {m} edge lines, found {len(body)}", body[-1][0] if body else lineno, source)
    edges = np.empty((m, 2), dtype=np.int64)
    for k, (lineno, parts) in enumerate(body[:m]):
        if len(parts) != 2:
            raise ParseError("edge line must be 'u v'", lineno, source)
        u, v = _ints(parts, lineno, source)
        if u >= n or v >= n:
            raise ParseError(f"vertex out of range for n={n}", lineno, source)
        if u == v:
            raise ParseError("self-loop", lineno, source)
        edges[k] = (u, v)
    labels = np.zeros(n, dtype=np.int64)
    for lineno, parts in body[m:]:
        if len(parts) != 3 or parts[0] != "label":
            raise ParseError("expected 'label v l'", lineno, source)
        v, lab = _ints(parts[1:], lineno, source)
        if v >= n:
            raise ParseError(f"vertex out of range for n={n}", lineno, source)
        labels[v] = lab
    try:
        return Graph.from_edges(n, edges, labels)
    except GraphError as exc:
        raise ParseError(str(exc), None, source) from exc


def format_graph(g: Graph) -> str:
    edges = g.edge_list()
    out = [f"{g.n} {len(edges)}"]
    out.extend(f"{u} {v}" for u, v in edges.tolist())
    out.extend(f"label {v} {lab}" for v, lab in enumerate(g.labels.tolist()) if lab)
    return "\n".join(out) + "\n"


def parse_histogram(text: str, source: str | None = None) -> DegreeHistogram:
    entries = []
    for lineno, ln in enumerate(text.splitlines(), start=1):
        parts = ln.split()
        if not parts:
            continue
        if len(parts) != 2:
            raise ParseError("expected 'degree count'", lineno, source)
        entries.append(tuple(_ints(parts, lineno, source)))
    if not entries:
        raise ParseError("empty histogram file", None, source)
    try:
        return DegreeHistogram(tuple(entries))
    except GraphError as exc:
        raise ParseError(str(exc), None, source) from exc


def format_histogram(h: DegreeHistogram) -> str:
    return "".join(f"{d} {c}\n" for d, c in h.entries)


def _write(path: Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"), str(path))


def write_graph(path, g: Graph) -> None:
    _write(path, format_graph(g))


def read_histogram(path) -> DegreeHistogram:
    return parse_histogram(Path(path).read_text(encoding="utf-8"), str(path))


def write_histogram(path, h: DegreeHistogram) -> None:
    _write(path, format_histogram(h))


def read_spec(path) -> GnnSpec:
    try:
        return GnnSpec.from_json(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, str(path)) from exc
    except ValueError as exc:
        raise ParseError(str(exc), None, str(path)) from exc


def write_spec(path, spec: GnnSpec) -> None:
    _write(path, json.dumps(spec.to_dict(), indent=2, sort_keys=True) + "\n")


def write_json(path, obj) -> None:
    _write(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")
