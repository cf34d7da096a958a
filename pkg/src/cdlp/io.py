"""Edge-list and community-file reading and writing.

Edge list: one ``a b`` pair of non-negative integer ids per line; blank
lines and ``#`` comments are skipped. A ``# nodes: N`` header declares the
ids to be exactly ``0..N-1`` (so isolated nodes survive a round trip);
without it the distinct ids are mapped to dense indices in sorted order.

Community file: one ``node-id community-label`` pair per line.
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import EmptyGraphError, InputError
from .graph import Graph, Partition, build_graph

_NODES_HEADER = re.compile(r"#\s*nodes\s*:\s*(\d+)\s*$")


class LabeledGraph:
    """A graph plus the external id of each dense node index."""

    def __init__(self, graph: Graph, labels: list[int]):
        self.graph = graph
        self.labels = labels
        self.index = {lab: i for i, lab in enumerate(labels)}


def _data_lines(path):
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if line:
                yield lineno, line


def read_edge_list(path) -> LabeledGraph:
    declared = None
    pairs = []
    for lineno, line in _data_lines(path):
        if line.startswith("#"):
            hit = _NODES_HEADER.match(line)
            if hit:
                declared = int(hit.group(1))
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"{path}:{lineno}: expected two node ids, got {len(parts)} fields")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"{path}:{lineno}: node ids must be integers") from None
        if a < 0 or b < 0:
            raise InputError(f"{path}:{lineno}: node ids must be non-negative")
        if a == b:
            raise InputError(f"{path}:{lineno}: self-loop on node {a}")
        if declared is not None and max(a, b) >= declared:
            raise InputError(f"{path}:{lineno}: node id exceeds declared count {declared}")
        pairs.append((a, b))

    if declared is not None:
        labels = list(range(declared))
    else:
        labels = sorted({x for pair in pairs for x in pair})
    if not pairs:
        raise EmptyGraphError()
    index = {lab: i for i, lab in enumerate(labels)}
    g = build_graph(len(labels), ((index[a], index[b]) for a, b in pairs))
    return LabeledGraph(g, labels)


def write_edge_list(path, g: Graph, labels: list[int] | None = None) -> None:
    lines = []
    if labels is None:
        lines.append(f"# nodes: {g.node_count}")
        labels = list(range(g.node_count))
    lines.extend(f"{labels[a]} {labels[b]}" for a, b in g.edges())
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_communities(path, labeled: LabeledGraph) -> Partition:
    assign: dict[int, str] = {}
    for lineno, line in _data_lines(path):
        if line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"{path}:{lineno}: expected 'node community', got {len(parts)} fields")
        try:
            node = int(parts[0])
        except ValueError:
            raise InputError(f"{path}:{lineno}: node id must be an integer") from None
        if node not in labeled.index:
            raise InputError(f"{path}:{lineno}: node {node} is not in the graph")
        if node in assign:
            raise InputError(f"{path}:{lineno}: node {node} assigned twice")
        assign[node] = parts[1]
    missing = [lab for lab in labeled.labels if lab not in assign]
    if missing:
        raise InputError(f"{path}: {len(missing)} nodes have no community (first: {missing[0]})")
    return Partition.from_labels(assign[lab] for lab in labeled.labels)


def write_communities(path, p: Partition, labels: list[int] | None = None) -> None:
    if labels is None:
        labels = list(range(p.node_count))
    text = "".join(f"{labels[v]} {c}\n" for v, c in enumerate(p.assignment))
    Path(path).write_text(text, encoding="utf-8")
