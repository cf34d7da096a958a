"""Similarity indices for predicting missing and spurious links.

``CN`` counts common neighbours. The community-aware indices use a
partition:

* ``A`` scores a non-linked pair inside one community by twice the number
  of common neighbours that share the pair's community, over ``d(a)+d(b)``.
  High scores are added first.
* ``D`` scores a linked pair spanning two communities by the larger count
  of common neighbours sharing either endpoint's community, over the number
  of common neighbours. Low scores are removed first.

Every ranking breaks ties by canonical ``(min, max)`` pair order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .errors import ContractError, InputError
from .graph import Edge, Graph, Partition, canonical, common_neighbors

ADDITION_INDICES = ("A", "CN")
REMOVAL_INDICES = ("D", "CN")


@dataclass(frozen=True)
class ScoredPair:
    a: int
    b: int
    score: float

    @property
    def edge(self) -> Edge:
        return (self.a, self.b)


@dataclass(frozen=True)
class MutationPlan:
    additions: tuple[ScoredPair, ...] = ()
    removals: tuple[ScoredPair, ...] = ()

    def edges_to_add(self) -> list[Edge]:
        return [s.edge for s in self.additions]

    def edges_to_remove(self) -> list[Edge]:
        return [s.edge for s in self.removals]


def cn_score(g: Graph, a: int, b: int) -> int:
    return len(common_neighbors(g, a, b))


def a_index(g: Graph, p: Partition, a: int, b: int) -> float:
    shared = common_neighbors(g, a, b)
    if not p.same(a, b):
        raise ContractError(f"A index needs a same-community pair, got ({a}, {b})")
    if g.has_edge(a, b):
        raise ContractError(f"A index needs a non-edge, ({a}, {b}) is linked")
    c = p[a]
    inside = sum(1 for i in shared if p[i] == c)
    denom = g.degree(a) + g.degree(b)
    if denom == 0:
        return 0.0
    return 2 * inside / denom


def d_index(g: Graph, p: Partition, a: int, b: int) -> float:
    shared = common_neighbors(g, a, b)
    if not g.has_edge(a, b):
        raise ContractError(f"D index needs an existing edge, ({a}, {b}) is not one")
    if p.same(a, b):
        raise ContractError(f"D index needs a cross-community edge, got ({a}, {b})")
    if not shared:
        return 0.0
    ca, cb = p[a], p[b]
    with_a = sum(1 for i in shared if p[i] == ca)
    with_b = sum(1 for i in shared if p[i] == cb)
    return max(with_a, with_b) / len(shared)


def _check_inputs(g: Graph, p: Partition, count: int) -> None:
    if count < 0:
        raise InputError(f"count must be >= 0, got {count}")
    if p.node_count != g.node_count:
        raise InputError(
            f"partition covers {p.node_count} nodes, graph has {g.node_count}"
        )


def _two_hop_counts(g: Graph, p: Partition | None) -> Counter:
    """Common-neighbour counts for every non-linked pair with at least one.

    With a partition, only pairs inside one community are counted, and only
    common neighbours from that same community contribute.
    """
    counts: Counter = Counter()
    for i in range(g.node_count):
        nbrs = g.neighbors(i)
        if p is not None:
            ci = p[i]
            nbrs = [x for x in nbrs if p[x] == ci]
        for x, y in combinations(sorted(nbrs), 2):
            if y not in g.neighbors(x):
                counts[(x, y)] += 1
    return counts


def plan_additions(g: Graph, p: Partition, index: str, count: int) -> MutationPlan:
    """Top-``count`` non-edges by decreasing score.

    ``A`` considers same-community non-edges only; ``CN`` considers every
    non-edge. Fewer than ``count`` candidates means all of them are returned.
    """
    _check_inputs(g, p, count)
    if index not in ADDITION_INDICES:
        raise InputError(f"unknown addition index {index!r}")
    if count == 0:
        return MutationPlan()

    deg = g.degrees()
    if index == "A":
        counts = _two_hop_counts(g, p)
        scored = [
            ScoredPair(a, b, 2 * c / (deg[a] + deg[b])) for (a, b), c in counts.items()
        ]
    else:
        counts = _two_hop_counts(g, None)
        scored = [ScoredPair(a, b, float(c)) for (a, b), c in counts.items()]
    scored.sort(key=lambda s: (-s.score, s.a, s.b))
    chosen = scored[:count]

    # zero-score candidates follow all positive ones, in canonical order
    n = g.node_count
    a = 0
    while len(chosen) < count and a < n:
        nbrs = g.neighbors(a)
        for b in range(a + 1, n):
            if b in nbrs or (a, b) in counts:
                continue
            if index == "A" and not p.same(a, b):
                continue
            chosen.append(ScoredPair(a, b, 0.0))
            if len(chosen) == count:
                break
        a += 1
    return MutationPlan(additions=tuple(chosen))


def plan_removals(g: Graph, p: Partition, index: str, count: int) -> MutationPlan:
    """Bottom-``count`` edges by increasing score.

    ``D`` considers cross-community edges only; ``CN`` considers every edge.
    """
    _check_inputs(g, p, count)
    if index not in REMOVAL_INDICES:
        raise InputError(f"unknown removal index {index!r}")
    if count == 0:
        return MutationPlan()

    if index == "D":
        scored = [
            ScoredPair(a, b, d_index(g, p, a, b))
            for a, b in g.edges()
            if not p.same(a, b)
        ]
    else:
        scored = [ScoredPair(a, b, float(cn_score(g, a, b))) for a, b in g.edges()]
    scored.sort(key=lambda s: (s.score, s.a, s.b))
    return MutationPlan(removals=tuple(scored[:count]))


def score_pair(g: Graph, p: Partition, index: str, a: int, b: int) -> float:
    """Dispatch helper used by reporting and the brute-force tests."""
    a, b = canonical(a, b)
    if index == "A":
        return a_index(g, p, a, b)
    if index == "D":
        return d_index(g, p, a, b)
    if index == "CN":
        return float(cn_score(g, a, b))
    raise InputError(f"unknown index {index!r}")
