import networkx as nx
import pytest

from lap2.families import BrokenSun, Cycle, Sun, generate
from lap2.graph import Graph, build_graph, one_edge_connect

# lines collected by test_acceptance and echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    idx = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return build_graph(len(idx), [(idx[a], idx[b]) for a, b in h.edges()])


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def join(a, b, u=0, v=0) -> Graph:
    return one_edge_connect(a, b, u, v)


@pytest.fixture
def c3():
    return generate(Cycle(3))


@pytest.fixture
def c4():
    return generate(Cycle(4))


@pytest.fixture
def sun3():
    return generate(Sun(3))


@pytest.fixture
def sun4():
    return generate(Sun(4))


@pytest.fixture
def bs4_02():
    return generate(BrokenSun(4, (0, 2)))
