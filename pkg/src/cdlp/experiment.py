"""Benchmark sweeps: generate instances, run every method, tabulate NMI.

An experiment is described by a JSON object whose keys mirror
:class:`ExperimentSpec`. Each ``(sweep value, instance)`` cell generates
one graph, shared by every method, from a seed that depends only on the
master seed, the family, the sweep value and the instance index::

    SeedSequence(master, spawn_key=(family code, round(value * 1e6), instance))
        .generate_state(1, uint64)[0]

so cells can run in any order, or in parallel, without changing a row.
"""

from __future__ import annotations

import csv
import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from .benchmarks import GnConfig, LfrConfig, generate_gn, generate_lfr
from .errors import CdlpError, ConfigError
from .evaluation import aggregate, nmi
from .pipeline import PipelineConfig, run_baseline1, run_baseline2_cn, run_cdlp

METHODS = ("baseline1", "baseline2-cn", "cdlp")
FAMILIES = {"GN": 1, "LFR": 2}
RESULTS_VERSION = "# cdlp-results v1"
SUMMARY_VERSION = "# cdlp-summary v1"
TIMINGS_VERSION = "# cdlp-timings v1"

_GN_KEYS = {"n", "groups", "group_size", "avg_degree"}
_LFR_KEYS = {"n", "k_avg", "k_max", "gamma", "beta", "tolerance", "max_sweeps"}


def _as_tuple(value, name) -> tuple:
    if isinstance(value, (list, tuple)):
        if not value:
            raise ConfigError(f"{name} must not be empty")
        return tuple(value)
    return (value,)


@dataclass(frozen=True)
class ExperimentSpec:
    family: str
    sweep: tuple[float, ...]
    instances: int = 10
    methods: tuple[str, ...] = METHODS
    p_d: tuple[float, ...] = (0.05,)
    p_a: tuple[float, ...] = (0.05,)
    selection: str = "modularity"
    include_raw: bool = False
    seed: int = 0
    workers: int = 1
    generator: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"family must be one of {sorted(FAMILIES)}, got {self.family!r}")
        if self.instances < 1:
            raise ConfigError("instances must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        for m in self.methods:
            if m not in METHODS:
                raise ConfigError(f"unknown method {m!r}; choose from {METHODS}")
        allowed = _GN_KEYS if self.family == "GN" else _LFR_KEYS
        unknown = set(self.generator) - allowed
        if unknown:
            raise ConfigError(f"unknown generator keys for {self.family}: {sorted(unknown)}")
        # validate every sweep point and pipeline setting up front
        for value in self.sweep:
            self.generator_config(value)
        for cfg in self.pipeline_configs():
            PipelineConfig(cfg[0], cfg[1], self.include_raw, self.selection)
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError("seed must be a non-negative integer")

    @classmethod
    def from_dict(cls, data: dict) -> ExperimentSpec:
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ConfigError(f"unknown experiment keys: {sorted(unknown)}")
        for key in ("family", "sweep"):
            if key not in data:
                raise ConfigError(f"experiment spec is missing {key!r}")
        kwargs = dict(data)
        kwargs["sweep"] = tuple(float(v) for v in _as_tuple(data["sweep"], "sweep"))
        for key in ("p_d", "p_a"):
            if key in data:
                kwargs[key] = tuple(float(v) for v in _as_tuple(data[key], key))
        if "methods" in data:
            kwargs["methods"] = _as_tuple(data["methods"], "methods")
        return cls(**kwargs)

    @classmethod
    def load(cls, path) -> ExperimentSpec:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from None
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: top level must be an object")
        return cls.from_dict(data)

    def generator_config(self, value: float):
        if self.family == "GN":
            return GnConfig(z_out=value, **self.generator)
        return LfrConfig(mu=value, **self.generator)

    def pipeline_configs(self) -> list[tuple[float, float]]:
        return list(itertools.product(self.p_d, self.p_a))


def instance_seed(master: int, family: str, value: float, instance: int) -> int:
    seq = np.random.SeedSequence(
        master, spawn_key=(FAMILIES[family], int(round(value * 1_000_000)), instance)
    )
    return int(seq.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class ResultRow:
    family: str
    value: float
    method: str
    p_d: float | None
    p_a: float | None
    instance: int
    seed: int
    status: str
    nmi: float | None = None
    q: float | None = None
    stage: str = ""
    error: str = ""
    wall_time: float = 0.0

    def sort_key(self):
        return (self.value, METHODS.index(self.method),
                -1.0 if self.p_d is None else self.p_d,
                -1.0 if self.p_a is None else self.p_a,
                self.instance)


def _run_method(method, g, truth, cfg: PipelineConfig | None):
    if method == "baseline1":
        return run_baseline1(g, truth)
    if method == "baseline2-cn":
        return run_baseline2_cn(g, cfg, truth)
    return run_cdlp(g, cfg, truth)


def run_cell(spec: ExperimentSpec, value: float, instance: int) -> list[ResultRow]:
    """All method rows for one generated instance."""
    seed = instance_seed(spec.seed, spec.family, value, instance)
    jobs = []
    for method in spec.methods:
        if method == "baseline1":
            jobs.append((method, None, None))
        else:
            jobs.extend((method, pd, pa) for pd, pa in spec.pipeline_configs())
    base = dict(family=spec.family, value=value, instance=instance, seed=seed)

    try:
        cfg = spec.generator_config(value)
        if spec.family == "GN":
            g, truth = generate_gn(cfg, seed)
        else:
            g, truth = generate_lfr(cfg, seed)
    except CdlpError as exc:
        return [ResultRow(method=m, p_d=pd, p_a=pa, status="failed",
                          error=f"generate: {exc}", **base) for m, pd, pa in jobs]

    rows = []
    for method, pd, pa in jobs:
        pcfg = None if pd is None else PipelineConfig(pd, pa, spec.include_raw, spec.selection)
        start = time.perf_counter()
        try:
            result = _run_method(method, g, truth, pcfg)
        except CdlpError as exc:
            rows.append(ResultRow(method=method, p_d=pd, p_a=pa, status="failed",
                                  error=str(exc), **base))
            continue
        elapsed = time.perf_counter() - start
        rows.append(ResultRow(
            method=method, p_d=pd, p_a=pa, status="ok",
            nmi=nmi(truth, result.chosen_partition), q=result.chosen_q,
            stage=result.chosen_stage, wall_time=elapsed, **base,
        ))
    return rows


def _cell(args):
    return run_cell(*args)


def run_experiment(spec: ExperimentSpec, workers: int | None = None) -> list[ResultRow]:
    cells = [(spec, v, i) for v in spec.sweep for i in range(spec.instances)]
    workers = spec.workers if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_cell, cells))
    else:
        chunks = [_cell(c) for c in cells]
    rows = [row for chunk in chunks for row in chunk]
    return sorted(rows, key=ResultRow.sort_key)


@dataclass(frozen=True)
class SummaryRow:
    family: str
    value: float
    method: str
    p_d: float | None
    p_a: float | None
    count: int
    failed: int
    nmi_mean: float | None
    nmi_std: float | None
    q_mean: float | None
    q_std: float | None


def summarize(rows: list[ResultRow]) -> list[SummaryRow]:
    groups: dict = {}
    for row in sorted(rows, key=ResultRow.sort_key):
        key = (row.family, row.value, row.method, row.p_d, row.p_a)
        groups.setdefault(key, []).append(row)
    out = []
    for (family, value, method, pd, pa), members in groups.items():
        ok = [r for r in members if r.status == "ok"]
        failed = len(members) - len(ok)
        if ok:
            n_agg = aggregate([r.nmi for r in ok])
            q_agg = aggregate([r.q for r in ok])
            out.append(SummaryRow(family, value, method, pd, pa, len(ok), failed,
                                  n_agg.mean, n_agg.std, q_agg.mean, q_agg.std))
        else:
            out.append(SummaryRow(family, value, method, pd, pa, 0, failed,
                                  None, None, None, None))
    return out


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def _write_csv(path, version: str, header: list[str], records) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(version + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for rec in records:
            writer.writerow([_fmt(getattr(rec, h)) for h in header])


RESULT_COLUMNS = ["family", "value", "method", "p_d", "p_a", "instance", "seed",
                  "status", "nmi", "q", "stage", "error"]
SUMMARY_COLUMNS = ["family", "value", "method", "p_d", "p_a", "count", "failed",
                   "nmi_mean", "nmi_std", "q_mean", "q_std"]
TIMING_COLUMNS = ["family", "value", "method", "p_d", "p_a", "instance", "wall_time"]


def write_outputs(out_dir, rows: list[ResultRow]) -> dict[str, Path]:
    """Write results.csv, summary.csv and timings.csv into ``out_dir``.

    Wall times live only in timings.csv so the other two files are
    byte-identical across reruns.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "results": out / "results.csv",
        "summary": out / "summary.csv",
        "timings": out / "timings.csv",
    }
    _write_csv(paths["results"], RESULTS_VERSION, RESULT_COLUMNS, rows)
    _write_csv(paths["summary"], SUMMARY_VERSION, SUMMARY_COLUMNS, summarize(rows))
    _write_csv(paths["timings"], TIMINGS_VERSION, TIMING_COLUMNS, rows)
    return paths
