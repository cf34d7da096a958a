import pytest

from cdlp.graph import Partition, build_graph

# Worked example with nodes 1..7 shifted to 0..6.
WORKED_EDGES = [(1, 2), (1, 3), (2, 4), (2, 5), (3, 4), (2, 7), (5, 6), (5, 7), (6, 7)]
WORKED_COMMUNITIES = [[1, 2, 3, 4, 5], [6, 7]]


def shift(pair):
    return (pair[0] - 1, pair[1] - 1)


@pytest.fixture
def worked():
    g = build_graph(7, [shift(e) for e in WORKED_EDGES])
    p = Partition.from_communities([[v - 1 for v in c] for c in WORKED_COMMUNITIES], 7)
    return g, p


@pytest.fixture
def triangle():
    return build_graph(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def two_triangles():
    g = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    return g, Partition([0, 0, 0, 1, 1, 1])


@pytest.fixture
def bridged_triangles():
    g = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
    return g, Partition([0, 0, 0, 1, 1, 1])


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line for the acceptance summary, then assert."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(label, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
