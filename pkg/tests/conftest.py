import math
import random

import pytest

from fourecc.graph import Multigraph, generate_3ec_graph, generate_random_graph, parse_graph

G_A_TEXT = "p 4 6\ne 1 2\ne 2 3\ne 3 4\ne 4 1\ne 4 2\ne 3 1\n"


def make_ga() -> Multigraph:
    return parse_graph(G_A_TEXT)


def make_k4() -> Multigraph:
    return Multigraph(4, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3), (2, 4)])


def make_par(k: int) -> Multigraph:
    return Multigraph(2, [(1, 2)] * k)


def make_prism() -> Multigraph:
    return Multigraph(6, [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4), (1, 4), (2, 5), (3, 6)])


def make_theta() -> Multigraph:
    # hubs 1 and 2, middles 3, 4, 5
    return Multigraph(5, [(1, 3), (3, 2), (1, 4), (4, 2), (1, 5), (5, 2)])


def make_lowm_chain() -> Multigraph:
    """Vertices are already in DFS preorder.  4 and 3 are consecutive members
    of the chain for M = 7, and back-edge (11, 3) lies in B(4) but not B(3)."""
    return Multigraph(
        12,
        [
            (10, 9), (12, 9), (6, 12), (8, 1), (12, 2), (4, 5), (3, 4), (10, 11), (5, 6),
            (1, 2), (4, 11), (1, 7), (9, 8), (2, 3), (3, 11), (6, 7), (7, 8), (10, 5),
        ],
    )


def make_gadget() -> Multigraph:
    """3EC graph where every edge lies in some 3-cut but vertices 1 and 2 are
    still 4-edge-connected: each of 3..6 hangs off 1 by two edges, 2 by one."""
    edges = []
    for g in (3, 4, 5, 6):
        edges += [(1, g), (1, g), (2, g)]
    return Multigraph(6, edges)


@pytest.fixture
def ga():
    return make_ga()


@pytest.fixture
def k4():
    return make_k4()


@pytest.fixture
def par3():
    return make_par(3)


@pytest.fixture
def par4():
    return make_par(4)


@pytest.fixture
def prism():
    return make_prism()


@pytest.fixture
def theta():
    return make_theta()


def corpus_3ec(count: int, seed: int = 0, n_range=(4, 10), m_max: int = 24):
    """Seeded 3EC multigraphs with n in n_range and m in [ceil(3n/2), m_max]."""
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(*n_range)
        m = rng.randint(math.ceil(3 * n / 2), max(m_max, math.ceil(3 * n / 2)))
        yield generate_3ec_graph(n, m, rng.getrandbits(32))


def corpus_general(count: int, seed: int = 0, n_max: int = 10, m_max: int = 22, connected: bool = False):
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(1, n_max)
        lo = n - 1 if connected else 0
        m = rng.randint(lo, max(lo, m_max))
        yield generate_random_graph(n, m, rng.getrandbits(32), connected=connected)


_acceptance_results: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record_criterion():
    def record(number: int, passed: bool, detail: str = ""):
        _acceptance_results[number] = (passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance_results):
        passed, detail = _acceptance_results[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
