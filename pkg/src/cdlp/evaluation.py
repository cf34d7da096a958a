"""Partition comparison (NMI) and aggregation over repeated runs."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import InputError
from .graph import Partition


@dataclass(frozen=True)
class ConfusionTable:
    """Overlap counts: rows are true communities, columns computed ones."""

    counts: np.ndarray
    row_sums: np.ndarray
    col_sums: np.ndarray
    total: int


def confusion_table(truth: Partition, computed: Partition) -> ConfusionTable:
    if truth.node_count != computed.node_count:
        raise InputError(
            f"partitions cover different node sets ({truth.node_count} vs "
            f"{computed.node_count} nodes)"
        )
    counts = np.zeros((truth.community_count, computed.community_count), dtype=np.int64)
    np.add.at(counts, (np.asarray(truth.assignment), np.asarray(computed.assignment)), 1)
    return ConfusionTable(counts, counts.sum(axis=1), counts.sum(axis=0), truth.node_count)


def nmi(truth: Partition, computed: Partition) -> float:
    """Normalised mutual information with geometric-mean normalisation.

    If either side is a single community the entropy term vanishes; the
    score is then 1 for identical set-partitions and 0 otherwise.
    """
    table = confusion_table(truth, computed)
    if truth.community_count == 1 or computed.community_count == 1:
        return 1.0 if truth.canonical() == computed.canonical() else 0.0

    n = table.total
    rows, cols = np.nonzero(table.counts)
    nij = table.counts[rows, cols].astype(float)
    ni = table.row_sums[rows].astype(float)
    nj = table.col_sums[cols].astype(float)
    num = float(np.sum(nij * np.log(nij * n / (ni * nj))))

    h1 = float(np.sum(table.row_sums * np.log(table.row_sums / n)))
    h2 = float(np.sum(table.col_sums * np.log(table.col_sums / n)))
    return num / math.sqrt(h1 * h2)


class Aggregate(NamedTuple):
    mean: float
    std: float
    count: int


def aggregate(values: Sequence[float]) -> Aggregate:
    """Mean and sample standard deviation (0 for a single value)."""
    values = list(values)
    if not values:
        raise InputError("cannot aggregate an empty list")
    std = statistics.stdev(values) if len(values) > 1 else 0.0
    return Aggregate(statistics.fmean(values), std, len(values))
