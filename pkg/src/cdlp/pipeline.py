"""The remove/add/remove link-prediction pipeline and its baselines.

Each stage detects communities on the current graph with fast-greedy,
edits the graph with a link-prediction index driven by that partition,
and the next stage starts from the edited graph:

    G --remove(D)--> G1 --add(A)--> G2 --remove(D)--> G3

The returned partition is the fast-greedy partition of the stage with the
highest modularity (or NMI against a known truth, when requested).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .community import fast_greedy
from .errors import ConfigError, DegenerateStageError, EmptyGraphError
from .evaluation import nmi
from .graph import Edge, Graph, Partition
from .linkpred import plan_additions, plan_removals

SELECTIONS = ("modularity", "nmi")
STAGES = ("G", "G1", "G2", "G3")


@dataclass(frozen=True)
class PipelineConfig:
    p_d: float = 0.05
    p_a: float = 0.05
    include_raw: bool = False
    selection: str = "modularity"

    def __post_init__(self):
        for name in ("p_d", "p_a"):
            value = getattr(self, name)
            if not (0.0 <= value < 1.0):
                raise ConfigError(f"{name} must lie in [0, 1), got {value}")
        if self.selection not in SELECTIONS:
            raise ConfigError(f"selection must be one of {SELECTIONS}, got {self.selection!r}")


@dataclass(frozen=True)
class StageRecord:
    stage: str
    graph: Graph
    partition: Partition
    q: float
    nmi: float | None = None
    added: tuple[Edge, ...] = ()
    removed: tuple[Edge, ...] = ()


@dataclass(frozen=True)
class PipelineResult:
    stages: tuple[StageRecord, ...]
    chosen_stage: str
    competing: tuple[str, ...] = field(default=())

    def stage(self, name: str) -> StageRecord:
        for rec in self.stages:
            if rec.stage == name:
                return rec
        raise KeyError(name)

    @property
    def chosen(self) -> StageRecord:
        return self.stage(self.chosen_stage)

    @property
    def chosen_partition(self) -> Partition:
        return self.chosen.partition

    @property
    def chosen_q(self) -> float:
        return self.chosen.q


def edit_count(fraction: float, edges: int) -> int:
    """Number of edges to edit: ``fraction * edges`` rounded half up."""
    return math.floor(fraction * edges + 0.5)


def _detect(stage: str, g: Graph, truth: Partition | None, **edits) -> StageRecord:
    if g.edge_count == 0:
        raise DegenerateStageError(stage)
    part, q, _ = fast_greedy(g)
    score = nmi(truth, part) if truth is not None else None
    return StageRecord(stage, g, part, q, score, **edits)


def _select(records: list[StageRecord], cfg: PipelineConfig) -> PipelineResult:
    competing = records if cfg.include_raw or len(records) == 1 else records[1:]
    metric = (lambda r: r.nmi) if cfg.selection == "nmi" else (lambda r: r.q)
    best = competing[0]
    for rec in competing[1:]:
        if metric(rec) > metric(best):
            best = rec
    return PipelineResult(tuple(records), best.stage, tuple(r.stage for r in competing))


def _run_staged(g: Graph, cfg: PipelineConfig, truth: Partition | None,
                removal_index: str, addition_index: str) -> PipelineResult:
    if g.edge_count == 0:
        raise EmptyGraphError()
    if cfg.selection == "nmi" and truth is None:
        raise ConfigError("nmi selection requires a ground-truth partition")

    records = [_detect("G", g, truth)]
    schedule = (
        ("G1", "remove", cfg.p_d, removal_index),
        ("G2", "add", cfg.p_a, addition_index),
        ("G3", "remove", cfg.p_d, removal_index),
    )
    for stage, kind, fraction, index in schedule:
        prev = records[-1]
        current = prev.graph
        count = edit_count(fraction, current.edge_count)
        if kind == "remove":
            if count >= current.edge_count:
                raise DegenerateStageError(stage)
            plan = plan_removals(current, prev.partition, index, count)
            edges = tuple(plan.edges_to_remove())
            nxt = current.with_edges_removed(edges) if edges else current
            records.append(_detect(stage, nxt, truth, removed=edges))
        else:
            plan = plan_additions(current, prev.partition, index, count)
            edges = tuple(plan.edges_to_add())
            nxt = current.with_edges_added(edges) if edges else current
            records.append(_detect(stage, nxt, truth, added=edges))
    return _select(records, cfg)


def run_cdlp(g: Graph, cfg: PipelineConfig = PipelineConfig(),
             truth: Partition | None = None) -> PipelineResult:
    """Community-aware pipeline: D-index removals around an A-index addition."""
    return _run_staged(g, cfg, truth, "D", "A")


def run_baseline2_cn(g: Graph, cfg: PipelineConfig = PipelineConfig(),
                     truth: Partition | None = None) -> PipelineResult:
    """Same staging as :func:`run_cdlp`, ranking every pair by common neighbours."""
    return _run_staged(g, cfg, truth, "CN", "CN")


def run_baseline1(g: Graph, truth: Partition | None = None) -> PipelineResult:
    """Plain fast-greedy on the unedited graph."""
    if g.edge_count == 0:
        raise EmptyGraphError()
    return _select([_detect("G", g, truth)], PipelineConfig())
