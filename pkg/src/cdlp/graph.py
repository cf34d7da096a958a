"""Undirected simple graphs and node partitions.

Both types are value objects: every mutation returns a fresh instance, so
the pipeline can keep the raw graph and all predicted stages side by side.
"""

from __future__ import annotations

from numbers import Integral
from typing import Iterable, Iterator, Sequence

from .errors import ContractError, InputError

Edge = tuple[int, int]


def canonical(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


class Graph:
    """Undirected simple graph on dense node ids ``0..n-1``.

    Build with :func:`build_graph`; the constructor trusts its arguments.
    """

    __slots__ = ("_adj", "_m")

    def __init__(self, adjacency: Sequence[frozenset[int]], edge_count: int):
        self._adj = tuple(adjacency)
        self._m = edge_count

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._m

    def __len__(self) -> int:
        return len(self._adj)

    def neighbors(self, a: int) -> frozenset[int]:
        self._check_node(a)
        return self._adj[a]

    def degree(self, a: int) -> int:
        self._check_node(a)
        return len(self._adj[a])

    def degrees(self) -> list[int]:
        return [len(s) for s in self._adj]

    def has_edge(self, a: int, b: int) -> bool:
        self._check_node(a)
        self._check_node(b)
        return b in self._adj[a]

    def edges(self) -> Iterator[Edge]:
        """Edges as canonical ``(a, b)`` pairs with ``a < b``, sorted."""
        for a, nbrs in enumerate(self._adj):
            for b in sorted(nbrs):
                if a < b:
                    yield (a, b)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, m={self.edge_count})"

    def _check_node(self, a: int) -> None:
        if not (isinstance(a, Integral) and 0 <= a < len(self._adj)):
            raise InputError(f"node id {a!r} out of range [0, {len(self._adj)})")

    def check_invariants(self) -> None:
        """Raise AssertionError if symmetry, loop-freeness or degree sum fail."""
        total = 0
        for a, nbrs in enumerate(self._adj):
            assert a not in nbrs, f"self-loop at {a}"
            for b in nbrs:
                assert a in self._adj[b], f"asymmetric edge ({a}, {b})"
            total += len(nbrs)
        assert total == 2 * self._m, "degree sum differs from 2M"

    def with_edges_added(self, edges: Iterable[Edge]) -> Graph:
        adj = [set(s) for s in self._adj]
        m = self._m
        for a, b in edges:
            self._check_node(a)
            self._check_node(b)
            if a == b:
                raise ContractError(f"cannot add self-loop ({a}, {a})")
            if b in adj[a]:
                raise ContractError(f"edge ({a}, {b}) already present")
            adj[a].add(b)
            adj[b].add(a)
            m += 1
        g = Graph([frozenset(s) for s in adj], m)
        g.check_invariants()
        return g

    def with_edges_removed(self, edges: Iterable[Edge]) -> Graph:
        adj = [set(s) for s in self._adj]
        m = self._m
        for a, b in edges:
            self._check_node(a)
            self._check_node(b)
            if b not in adj[a]:
                raise ContractError(f"edge ({a}, {b}) not present")
            adj[a].discard(b)
            adj[b].discard(a)
            m -= 1
        g = Graph([frozenset(s) for s in adj], m)
        g.check_invariants()
        return g


def build_graph(n: int, edges: Iterable[Edge]) -> Graph:
    """Build a graph on ``n`` nodes; duplicate and reversed pairs collapse."""
    if n < 1:
        raise InputError(f"node count must be >= 1, got {n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    m = 0
    for a, b in edges:
        for x in (a, b):
            if not (0 <= x < n):
                raise InputError(f"node id {x} out of range [0, {n})")
        if a == b:
            raise InputError(f"self-loop ({a}, {a}) not allowed")
        if b not in adj[a]:
            adj[a].add(b)
            adj[b].add(a)
            m += 1
    g = Graph([frozenset(s) for s in adj], m)
    g.check_invariants()
    return g


def common_neighbors(g: Graph, a: int, b: int) -> frozenset[int]:
    if a == b:
        raise InputError("common_neighbors needs two distinct nodes")
    return g.neighbors(a) & g.neighbors(b)


class Partition:
    """Assignment of every node to exactly one community ``0..k-1``.

    Use :meth:`from_labels` for arbitrary labels; it renumbers communities
    in order of first appearance so equal set-partitions compare equal.
    """

    __slots__ = ("_assign", "_sizes")

    def __init__(self, assignment: Sequence[int]):
        assign = tuple(int(c) for c in assignment)
        if not assign:
            raise InputError("partition must cover at least one node")
        k = max(assign) + 1
        sizes = [0] * k
        for c in assign:
            if c < 0:
                raise InputError(f"negative community id {c}")
            sizes[c] += 1
        if 0 in sizes:
            raise InputError("community ids must be dense with no empty community")
        self._assign = assign
        self._sizes = tuple(sizes)

    @classmethod
    def from_labels(cls, labels: Iterable) -> Partition:
        remap: dict = {}
        return cls([remap.setdefault(x, len(remap)) for x in labels])

    @classmethod
    def from_communities(cls, communities: Iterable[Iterable[int]], n: int) -> Partition:
        labels = [-1] * n
        for c, members in enumerate(communities):
            for v in members:
                if labels[v] != -1:
                    raise InputError(f"node {v} listed in two communities")
                labels[v] = c
        if -1 in labels:
            raise InputError(f"node {labels.index(-1)} not assigned")
        return cls.from_labels(labels)

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls(range(n))

    @property
    def assignment(self) -> tuple[int, ...]:
        return self._assign

    @property
    def community_count(self) -> int:
        return len(self._sizes)

    @property
    def community_sizes(self) -> tuple[int, ...]:
        return self._sizes

    @property
    def node_count(self) -> int:
        return len(self._assign)

    def __len__(self) -> int:
        return len(self._assign)

    def __getitem__(self, a: int) -> int:
        return self._assign[a]

    def same(self, a: int, b: int) -> bool:
        return self._assign[a] == self._assign[b]

    def communities(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self._sizes]
        for v, c in enumerate(self._assign):
            out[c].append(v)
        return out

    def canonical(self) -> Partition:
        """Same set-partition, relabeled by first appearance."""
        return Partition.from_labels(self._assign)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self._assign == other._assign

    def __hash__(self) -> int:
        return hash(self._assign)

    def __repr__(self) -> str:
        return f"Partition(n={self.node_count}, k={self.community_count})"
