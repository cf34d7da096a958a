"""Planted-partition benchmark graphs (GN and LFR) and a mixing audit.

Randomness comes from numpy's PCG64 bit generator seeded directly with the
caller's integer, so a ``(config, seed)`` pair always yields the same graph.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import ConfigError, EmptyGraphError, GenerationError
from .graph import Graph, Partition, build_graph, canonical

RNG_ALGORITHM = "numpy.random.PCG64"


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def realized_mixing(g: Graph, p: Partition) -> float:
    """Fraction of edge endpoints whose edge leaves their community."""
    if g.edge_count == 0:
        raise EmptyGraphError()
    cross = sum(1 for a, b in g.edges() if not p.same(a, b))
    return cross / g.edge_count


def node_mixing(g: Graph, p: Partition) -> np.ndarray:
    """Per-node external-degree fraction (0 for isolated nodes)."""
    out = np.zeros(g.node_count)
    for v in range(g.node_count):
        nbrs = g.neighbors(v)
        if nbrs:
            out[v] = sum(1 for x in nbrs if not p.same(v, x)) / len(nbrs)
    return out


# --------------------------------------------------------------------------
# GN
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class GnConfig:
    z_out: float
    n: int = 128
    groups: int = 4
    group_size: int = 32
    avg_degree: float = 16.0

    def __post_init__(self):
        if self.groups * self.group_size != self.n:
            raise ConfigError(
                f"groups * group_size = {self.groups * self.group_size} != n = {self.n}"
            )
        if self.groups < 2 or self.group_size < 2:
            raise ConfigError("need at least 2 groups of at least 2 nodes")
        if not (0 <= self.z_out <= self.avg_degree):
            raise ConfigError(f"z_out must lie in [0, {self.avg_degree}], got {self.z_out}")
        for name, prob in (("p_in", self.p_in), ("p_out", self.p_out)):
            if not (0.0 <= prob <= 1.0):
                raise ConfigError(f"{name} = {prob:.4g} outside [0, 1]")

    @property
    def z_in(self) -> float:
        return self.avg_degree - self.z_out

    @property
    def p_in(self) -> float:
        return self.z_in / (self.group_size - 1)

    @property
    def p_out(self) -> float:
        return self.z_out / (self.n - self.group_size)


def generate_gn(cfg: GnConfig, seed: int) -> tuple[Graph, Partition]:
    """Four-block (by default) planted partition with independent edges."""
    rng = make_rng(seed)
    rows, cols = np.triu_indices(cfg.n, 1)
    same = (rows // cfg.group_size) == (cols // cfg.group_size)
    prob = np.where(same, cfg.p_in, cfg.p_out)
    keep = rng.random(rows.size) < prob
    g = build_graph(cfg.n, zip(rows[keep].tolist(), cols[keep].tolist()))
    truth = Partition([v // cfg.group_size for v in range(cfg.n)])
    return g, truth


# --------------------------------------------------------------------------
# LFR
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LfrConfig:
    mu: float = 0.1
    n: int = 1000
    k_avg: float = 20.0
    k_max: int = 50
    gamma: float = 2.0
    beta: float = 1.0
    tolerance: float = 0.05
    max_sweeps: int = 1000

    def __post_init__(self):
        if not (0.0 <= self.mu < 1.0):
            raise ConfigError(f"mu must lie in [0, 1), got {self.mu}")
        if not (1 <= self.k_avg <= self.k_max < self.n):
            raise ConfigError("need 1 <= k_avg <= k_max < n")
        if self.gamma <= 1.0:
            raise ConfigError(f"gamma must exceed 1, got {self.gamma}")
        if self.beta < 1.0:
            raise ConfigError(f"beta must be >= 1, got {self.beta}")


@dataclass
class LfrInfo:
    """Derived quantities and audit figures for one LFR instance."""

    k_min: float
    min_community: int
    max_community: int
    community_sizes: list[int] = field(default_factory=list)
    rewiring_sweeps: int = 0
    dropped_edges: int = 0
    nodes_outside_tolerance: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def powerlaw_mean(lo: float, hi: float, exponent: float) -> float:
    """Mean of the density proportional to ``x**-exponent`` on ``[lo, hi]``."""
    e = exponent
    if math.isclose(e, 1.0):
        return (hi - lo) / math.log(hi / lo)
    if math.isclose(e, 2.0):
        return math.log(hi / lo) / (1 / lo - 1 / hi)
    return ((1 - e) / (2 - e)) * (hi ** (2 - e) - lo ** (2 - e)) / (hi ** (1 - e) - lo ** (1 - e))


def sample_powerlaw(rng: np.random.Generator, lo: float, hi: float,
                    exponent: float, size: int) -> np.ndarray:
    u = rng.random(size)
    e = exponent
    if math.isclose(e, 1.0):
        return lo * (hi / lo) ** u
    a, b = lo ** (1 - e), hi ** (1 - e)
    return (a + u * (b - a)) ** (1 / (1 - e))


def solve_k_min(k_avg: float, k_max: float, gamma: float) -> float:
    """Lower cut-off making the truncated power law average ``k_avg``."""
    f = lambda lo: powerlaw_mean(lo, k_max, gamma) - k_avg
    if k_avg >= k_max:
        return float(k_max)
    if f(1.0) > 0:
        raise GenerationError("degrees", f"no k_min >= 1 gives mean degree {k_avg}")
    return brentq(f, 1.0, k_avg, xtol=1e-12)


def _degree_sequence(cfg: LfrConfig, rng, k_min: float) -> np.ndarray:
    lo = math.ceil(k_min)
    raw = sample_powerlaw(rng, k_min, cfg.k_max, cfg.gamma, cfg.n)
    deg = np.clip(np.floor(raw + 0.5), lo, cfg.k_max).astype(np.int64)
    if deg.sum() % 2:
        order = rng.permutation(cfg.n)
        for v in order:
            if deg[v] < cfg.k_max:
                deg[v] += 1
                break
        else:
            deg[order[0]] -= 1
    return deg


def _community_sizes(cfg: LfrConfig, rng, s_min: int, s_max: int) -> list[int]:
    sizes: list[int] = []
    total = 0
    while total < cfg.n:
        s = int(math.floor(sample_powerlaw(rng, s_min, s_max + 1, cfg.beta, 1)[0]))
        s = min(s, s_max)
        if total + s > cfg.n:
            rest = cfg.n - total
            if rest >= s_min:
                sizes.append(rest)
            else:
                # spread the remainder over random communities that have room
                for _ in range(rest):
                    room = [i for i, x in enumerate(sizes) if x < s_max]
                    if not room:
                        room = list(range(len(sizes)))
                    sizes[room[int(rng.integers(len(room)))]] += 1
            total = cfg.n
            break
        sizes.append(s)
        total += s
    return sizes


def _assign(internal: np.ndarray, sizes: list[int], rng) -> list[int] | None:
    """Place nodes, largest internal degree first, into communities that fit.

    Returns ``None`` when some node finds no community with room.
    """
    n = internal.size
    order = rng.permutation(n)
    order = order[np.argsort(-internal[order], kind="stable")]
    room = list(sizes)
    comm = [-1] * n
    for v in order:
        need = internal[v]
        fits = [c for c, s in enumerate(sizes) if s - 1 >= need and room[c] > 0]
        if not fits:
            return None
        c = fits[int(rng.integers(len(fits)))]
        comm[v] = c
        room[c] -= 1
    return comm


def _fix_parity(members: list[int], internal: np.ndarray, deg: np.ndarray,
                size: int, mu: float, lo: int, hi: int) -> None:
    """Make the community's internal stub total even with a one-stub edit.

    Either one stub moves between internal and external, or a node gains or
    loses one internal stub (and one unit of degree). The edit that keeps
    that node's mixing closest to mu wins; degree-preserving edits win ties.
    """
    best = None
    for v in members:
        for step in (-1, 1):
            new = internal[v] + step
            for dstep in (0, step):
                d = deg[v] + dstep
                if not (lo <= d <= hi and 0 <= new <= min(size - 1, d)):
                    continue
                key = (abs((d - new) / d - mu), dstep != 0, v)
                if best is None or key < best[0]:
                    best = (key, v, step, dstep)
    if best is None:
        raise GenerationError("wiring", "cannot balance internal stub parity")
    _, v, step, dstep = best
    internal[v] += step
    deg[v] += dstep


def _fix_external_parity(internal: np.ndarray, deg: np.ndarray, mu: float,
                         lo: int, hi: int) -> None:
    """Give or take one external stub so the external total is even."""
    best = None
    for v in range(deg.size):
        for dstep in (-1, 1):
            d = deg[v] + dstep
            if lo <= d <= hi and d - internal[v] >= 0:
                key = (abs((d - internal[v]) / d - mu), v, dstep)
                if best is None or key < best[0]:
                    best = (key, v, dstep)
    if best is None:
        raise GenerationError("wiring", "cannot balance external stub parity")
    deg[best[1]] += best[2]


def _match_stubs(stubs: list[int], rng, allowed, max_sweeps: int, tries: int = 64,
                 stall: int = 25):
    """Configuration-model matching followed by edge-swap rewiring.

    ``allowed(a, b)`` rejects pairs that may never become edges. Each
    offending edge ``(a, b)`` is swapped with some edge ``(c, d)`` into
    ``(a, c), (b, d)``, where ``c`` is drawn at random from the stub owners
    and both new edges are fresh. Stops after ``max_sweeps`` passes, or
    after ``stall`` passes without progress; leftovers are dropped.
    Returns ``(edge set, sweeps used, dropped)``.
    """
    arr = np.asarray(stubs, dtype=np.int64)
    rng.shuffle(arr)
    pairs = arr.reshape(-1, 2).tolist()
    mult = Counter(canonical(a, b) for a, b in pairs)
    incident: dict[int, set[int]] = {}
    for idx, (a, b) in enumerate(pairs):
        incident.setdefault(a, set()).add(idx)
        incident.setdefault(b, set()).add(idx)
    owners = np.asarray(sorted(incident))

    def bad(idx):
        a, b = pairs[idx]
        return not allowed(a, b) or mult[canonical(a, b)] > 1

    def fresh(x, y):
        return x != y and allowed(x, y) and not mult[canonical(x, y)]

    def repair(i):
        a, b = pairs[i]
        if rng.random() < 0.5:
            a, b = b, a
        for c in rng.permutation(owners)[:tries].tolist():
            if not fresh(a, c):
                continue
            for j in sorted(incident[c]):
                if j == i:
                    continue
                x, y = pairs[j]
                d = y if x == c else x
                if not fresh(b, d) or canonical(a, c) == canonical(b, d):
                    continue
                for idx, (u, v) in ((i, pairs[i]), (j, pairs[j])):
                    mult[canonical(u, v)] -= 1
                    incident[u].discard(idx)
                    incident[v].discard(idx)
                pairs[i], pairs[j] = [a, c], [b, d]
                for idx, (u, v) in ((i, pairs[i]), (j, pairs[j])):
                    mult[canonical(u, v)] += 1
                    incident[u].add(idx)
                    incident[v].add(idx)
                return

    sweeps = since_best = 0
    todo = [i for i in range(len(pairs)) if bad(i)]
    best = len(todo)
    while todo and sweeps < max_sweeps and since_best < stall:
        sweeps += 1
        for i in todo:
            if bad(i):
                repair(i)
        todo = [i for i in range(len(pairs)) if bad(i)]
        if len(todo) < best:
            best, since_best = len(todo), 0
        else:
            since_best += 1

    edges = set()
    dropped = 0
    for a, b in pairs:
        e = canonical(a, b)
        if not allowed(a, b) or e in edges:
            dropped += 1
        else:
            edges.add(e)
    return edges, sweeps, dropped


def havel_hakimi(degree: dict[int, int]) -> set | None:
    """Deterministic simple graph with the given degrees, or None if none exists."""
    left = dict(degree)
    edges = set()
    while True:
        order = sorted((v for v in left if left[v] > 0), key=lambda v: (-left[v], v))
        if not order:
            return edges
        v, rest = order[0], order[1:]
        need = left[v]
        if need > len(rest):
            return None
        left[v] = 0
        for u in rest[:need]:
            left[u] -= 1
            edges.add(canonical(u, v))


def shuffle_edges(edges: set, rng, attempts: int) -> set:
    """Degree-preserving random double-edge swaps."""
    pairs = sorted(edges)
    present = set(pairs)
    if len(pairs) < 2:
        return present
    for _ in range(attempts):
        i, j = rng.integers(len(pairs), size=2)
        if i == j:
            continue
        a, b = pairs[i]
        c, d = pairs[j]
        if rng.random() < 0.5:
            c, d = d, c
        e1, e2 = canonical(a, c), canonical(b, d)
        if a == c or b == d or e1 == e2 or e1 in present or e2 in present:
            continue
        present -= {pairs[i], pairs[j]}
        present |= {e1, e2}
        pairs[i], pairs[j] = e1, e2
    return present


def generate_lfr_with_info(cfg: LfrConfig, seed: int) -> tuple[Graph, Partition, LfrInfo]:
    """LFR construction with power-law degrees and community sizes.

    Phases: degree sampling, community-size sampling, node placement,
    internal and external stub matching with rewiring, and a per-node
    mixing audit against ``cfg.tolerance``.
    """
    rng = make_rng(seed)
    k_min = solve_k_min(cfg.k_avg, cfg.k_max, cfg.gamma)
    deg = _degree_sequence(cfg, rng, k_min)
    lo = math.ceil(k_min)
    internal = np.floor((1 - cfg.mu) * deg + 0.5).astype(np.int64)

    s_min = max(math.ceil(k_min * (1 - cfg.mu)) + 1, math.ceil(k_min))
    s_max = max(cfg.k_max, int(internal.max()) + 1)
    if s_min > cfg.n:
        raise GenerationError("communities", f"minimum community size {s_min} exceeds n")

    comm = None
    for _ in range(100):
        sizes = _community_sizes(cfg, rng, s_min, s_max)
        comm = _assign(internal, sizes, rng)
        if comm is not None:
            break
    if comm is None:
        raise GenerationError("assignment", "community sizes cannot host internal degrees")

    members: list[list[int]] = [[] for _ in sizes]
    for v, c in enumerate(comm):
        members[c].append(v)

    edges: set = set()
    sweeps = dropped = 0
    for c, group in enumerate(members):
        if internal[group].sum() % 2:
            _fix_parity(group, internal, deg, sizes[c], cfg.mu, lo, cfg.k_max)
        stubs = [v for v in group for _ in range(internal[v])]
        if not stubs:
            continue
        got, used, lost = _match_stubs(stubs, rng, lambda a, b: a != b, cfg.max_sweeps)
        if lost:
            # swaps stalled on a dense community: realise it directly, then shuffle
            exact = havel_hakimi({v: int(internal[v]) for v in group})
            if exact is not None:
                got, lost = shuffle_edges(exact, rng, 10 * len(exact)), 0
        edges |= got
        sweeps = max(sweeps, used)
        dropped += lost

    if (deg - internal).sum() % 2:
        _fix_external_parity(internal, deg, cfg.mu, lo, cfg.k_max)
    external = deg - internal
    stubs = [v for v in range(cfg.n) for _ in range(external[v])]
    if stubs:
        got, used, lost = _match_stubs(
            stubs, rng, lambda a, b: comm[a] != comm[b], cfg.max_sweeps
        )
        edges |= got
        sweeps = max(sweeps, used)
        dropped += lost

    g = build_graph(cfg.n, sorted(edges))
    part = Partition.from_labels(comm)
    mixing = node_mixing(g, part)
    has_edges = np.asarray(g.degrees()) > 0
    outside = int(np.sum(has_edges & (np.abs(mixing - cfg.mu) > cfg.tolerance + 1e-12)))
    info = LfrInfo(
        k_min=k_min,
        min_community=s_min,
        max_community=s_max,
        community_sizes=sorted(sizes, reverse=True),
        rewiring_sweeps=sweeps,
        dropped_edges=dropped,
        nodes_outside_tolerance=outside,
    )
    return g, part, info


def generate_lfr(cfg: LfrConfig, seed: int) -> tuple[Graph, Partition]:
    g, part, _ = generate_lfr_with_info(cfg, seed)
    return g, part
