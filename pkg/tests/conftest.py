import itertools
import random

import pytest

from ssemod.generators import clique_union, cycle, petersen
from ssemod.graph import Graph

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def complete(n):
    return Graph(n, itertools.combinations(range(n), 2))


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def random_graph(n, p, rng):
    return Graph(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


def random_labels(n, rng, kmax=None):
    kmax = kmax or n
    k = rng.randint(1, kmax)
    labels = [rng.randrange(k) for _ in range(n)]
    return labels


# -- brute-force oracles, deliberately independent of the package internals --


def brute_phi(g, s):
    s = set(s)
    cut = sum(1 for u, v in g.edges if (u in s) != (v in s))
    vol = sum(g.degrees[v] for v in s)
    return cut / vol


def brute_min_phi(g, lo, hi):
    return min(brute_phi(g, c) for k in range(lo, hi + 1) for c in itertools.combinations(range(g.n), k))


def brute_modularity(g, parts):
    """Definitional double sum over ordered pairs, straight from the adjacency test."""
    two_m = 2 * g.m
    total = 0.0
    for part in parts:
        for u in part:
            for v in part:
                a = 1 if g.has_edge(u, v) else 0
                total += a - g.degrees[u] * g.degrees[v] / two_m
    return total / two_m


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in set_partitions(rest):
        for i in range(len(sub)):
            yield sub[:i] + [[first] + sub[i]] + sub[i + 1 :]
        yield [[first]] + sub


def brute_opt(g):
    return max(brute_modularity(g, p) for p in set_partitions(list(range(g.n))))


def brute_opt2(g):
    best = 0.0
    nodes = list(range(g.n))
    for k in range(1, g.n):
        for s in itertools.combinations(nodes, k):
            rest = [v for v in nodes if v not in s]
            best = max(best, brute_modularity(g, [list(s), rest]))
    return best


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def k4():
    return complete(4)


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def two_k4():
    return clique_union(2, 4)


@pytest.fixture
def pet():
    return petersen()
