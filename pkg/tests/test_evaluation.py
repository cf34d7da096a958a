import math
import random
import statistics

import pytest
from hypothesis import given, strategies as st

from cdlp.benchmarks import GnConfig, generate_gn
from cdlp.community import fast_greedy
from cdlp.errors import InputError
from cdlp.evaluation import aggregate, confusion_table, nmi
from cdlp.graph import Partition


def brute_nmi(x, y):
    """Direct double sum over label pairs, plain Python floats."""
    n = len(x)
    lx, ly = sorted(set(x)), sorted(set(y))
    ni = {a: x.count(a) for a in lx}
    nj = {b: y.count(b) for b in ly}
    num = 0.0
    for a in lx:
        for b in ly:
            nab = sum(1 for u, v in zip(x, y) if u == a and v == b)
            if nab:
                num += nab * math.log(nab * n / (ni[a] * nj[b]))
    h1 = sum(c * math.log(c / n) for c in ni.values())
    h2 = sum(c * math.log(c / n) for c in nj.values())
    return num / math.sqrt(h1 * h2)


labelings = st.integers(4, 30).flatmap(
    lambda n: st.tuples(st.lists(st.integers(0, 4), min_size=n, max_size=n),
                        st.lists(st.integers(0, 4), min_size=n, max_size=n))
)


def test_identity_and_relabel():
    p = Partition([0, 0, 1, 1, 2])
    assert nmi(p, p) == pytest.approx(1.0, abs=1e-12)
    assert nmi(p, Partition.from_labels([7, 7, 3, 3, 9])) == pytest.approx(1.0, abs=1e-12)


def test_crossed_halves_are_independent():
    assert nmi(Partition([0, 0, 1, 1]), Partition([0, 1, 0, 1])) == pytest.approx(0.0, abs=1e-12)


def test_single_community_convention():
    one = Partition([0, 0, 0])
    assert nmi(one, Partition.from_labels([5, 5, 5])) == 1.0
    assert nmi(one, Partition([0, 1, 1])) == 0.0
    assert nmi(Partition([0, 1, 1]), one) == 0.0


def test_node_set_mismatch():
    with pytest.raises(InputError):
        nmi(Partition([0, 1]), Partition([0, 1, 1]))


def test_confusion_table_marginals():
    t = confusion_table(Partition([0, 0, 1, 1, 1]), Partition([0, 1, 1, 2, 2]))
    assert t.counts.sum() == t.total == 5
    assert t.row_sums.tolist() == [2, 3]
    assert t.col_sums.tolist() == [1, 2, 2]


@given(labelings)
def test_properties(pair):
    x, y = pair
    px, py = Partition.from_labels(x), Partition.from_labels(y)
    value = nmi(px, py)
    assert -1e-12 <= value <= 1 + 1e-12
    assert value == pytest.approx(nmi(py, px), abs=1e-12)
    shuffled = [(c * 3 + 1) % 7 for c in x]
    assert value == pytest.approx(nmi(Partition.from_labels(shuffled), py), abs=1e-12)
    if px.community_count > 1 and py.community_count > 1:
        assert value == pytest.approx(brute_nmi(x, y), abs=1e-12)
        assert nmi(px, px) == pytest.approx(1.0, abs=1e-12)


def test_aggregate_examples():
    assert aggregate([1, 1, 1]) == (1.0, 0.0, 3)
    mean, std, count = aggregate([0, 1])
    assert (mean, count) == (0.5, 2)
    assert std == pytest.approx(math.sqrt(0.5), abs=1e-12)
    assert aggregate([0.3]).std == 0.0
    with pytest.raises(InputError):
        aggregate([])


def test_aggregate_matches_manual_recompute():
    values = []
    for seed in range(10):
        g, truth = generate_gn(GnConfig(z_out=5), seed)
        part, _, _ = fast_greedy(g)
        values.append(nmi(truth, part))
    mean = sum(values) / len(values)
    var = sum((v - mean) ** 2 for v in values) / (len(values) - 1)
    agg = aggregate(values)
    assert agg.mean == pytest.approx(mean, abs=1e-12)
    assert agg.std == pytest.approx(math.sqrt(var), abs=1e-12)
    assert agg.std == pytest.approx(statistics.stdev(values), abs=1e-12)
