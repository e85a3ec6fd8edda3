import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import complete, path
from ssemod.errors import NotRegularError
from ssemod.generators import clique_union, cycle, random_regular
from ssemod.graph import Graph
from ssemod.spectral import (
    ResidualView,
    eigenvalues,
    spectral_summary,
    threshold_rank,
    walk_matrix,
)


def disjoint_union(a, b):
    return Graph(a.n + b.n, list(a.edges) + [(u + a.n, v + a.n) for u, v in b.edges])


def test_walk_matrix_k4(k4):
    w = walk_matrix(ResidualView(k4))
    exact = w.exact_entries()
    for i in range(4):
        for j in range(4):
            assert exact[i][j] == (0 if i == j else Fraction(1, 3))


def test_walk_matrix_removed_block(two_k4, k4):
    w = walk_matrix(ResidualView(two_k4, frozenset(range(4))))
    assert w.nodes == (4, 5, 6, 7)
    assert np.array_equal(w.entries, walk_matrix(k4).entries)


def test_walk_matrix_reregularised(c4):
    w = walk_matrix(ResidualView(c4, frozenset({0})))
    assert w.nodes == (1, 2, 3)
    h = Fraction(1, 2)
    assert w.exact_entries() == [[h, h, 0], [h, 0, h], [0, h, h]]


def test_walk_matrix_invariants():
    g = random_regular(30, 5, seed=3)
    view = ResidualView(g, frozenset(range(0, 30, 4)))
    w = walk_matrix(view)
    assert np.array_equal(w.entries, w.entries.T)
    assert np.allclose(w.entries.sum(axis=1), 1, atol=1e-12)
    for row in w.exact_entries():
        assert sum(row) == 1
    off = w.entries[~np.eye(w.order, dtype=bool)]
    assert set(np.unique(off)) <= {0.0, 1 / 5}


def test_walk_matrix_needs_regular():
    with pytest.raises(NotRegularError):
        walk_matrix(path(3))


def test_eigenvalues_k4(k4):
    assert np.allclose(eigenvalues(walk_matrix(k4)), [1, -1 / 3, -1 / 3, -1 / 3], atol=1e-9)


def test_eigenvalues_two_k4(two_k4):
    assert np.allclose(eigenvalues(walk_matrix(two_k4)), [1, 1] + [-1 / 3] * 6, atol=1e-9)


def test_eigenvalues_petersen(pet):
    # adjacency spectrum {3, 1^5, -2^4} scaled by 1/3
    assert np.allclose(eigenvalues(walk_matrix(pet)), [1] + [1 / 3] * 5 + [-2 / 3] * 4, atol=1e-9)


@pytest.mark.parametrize("n", [5, 8, 11])
def test_eigenvalues_cycle(n):
    expected = sorted((math.cos(2 * math.pi * j / n) for j in range(n)), reverse=True)
    assert np.allclose(eigenvalues(walk_matrix(cycle(n))), expected, atol=1e-9)


def test_threshold_rank_goldens(k4, two_k4, pet):
    assert threshold_rank(k4, 0.5) == 1
    assert threshold_rank(two_k4, 0.5) == 2
    assert threshold_rank(pet, 0.5) == 5


def test_threshold_rank_boundary(pet):
    # |lambda| = 1/3 sits on the threshold and is not counted
    assert threshold_rank(pet, 1 / 3) == 5
    assert threshold_rank(pet, 1 / 3 - 1e-6) == 10


def test_threshold_rank_tau_range(k4):
    with pytest.raises(ValueError):
        threshold_rank(k4, 1.0)


@pytest.mark.parametrize("g", [complete(6), clique_union(3, 4), cycle(9), random_regular(40, 3, seed=1)])
def test_threshold_rank_monotone(g):
    taus = np.linspace(0, 1 - 1e-9, 40)
    ranks = [threshold_rank(g, t) for t in taus]
    assert all(a >= b for a, b in zip(ranks, ranks[1:]))
    assert ranks[-1] >= 1


def test_components_give_unit_eigenvalues():
    g = clique_union(5, 4)
    assert threshold_rank(g, 1 - 1e-9) >= 5
    vals = np.abs(eigenvalues(walk_matrix(g)))
    assert threshold_rank(g, float(vals.min()) / 2) == int(np.sum(vals > 1e-9))


def test_disjoint_union_spectrum(pet):
    g = random_regular(8, 3, seed=5)
    u = disjoint_union(pet, g)
    union = np.sort(np.concatenate([eigenvalues(walk_matrix(pet)), eigenvalues(walk_matrix(g))]))
    assert np.allclose(np.sort(eigenvalues(walk_matrix(u))), union, atol=1e-9)


def test_summary(pet):
    s = spectral_summary(pet, 0.5)
    assert s.rank == 5 and len(s.eigenvalues) == 10
    assert abs(s.eigenvalues[0] - 1) <= 1e-9
    assert all(-1 - 1e-9 <= x <= 1 + 1e-9 for x in s.eigenvalues)


def test_view_expansion_ignores_loops(c4):
    view = ResidualView(c4, frozenset({0}))
    # node 1 loses its edge to 0 as a loop; only the edge 1-2 is cut
    assert view.expansion({1}) == 0.5
    assert view.expansion({1, 2, 3}) == 0.0
    with pytest.raises(ValueError):
        view.expansion({0})


def test_residual_view_validation(c4):
    with pytest.raises(NotRegularError):
        ResidualView(path(4))
    with pytest.raises(ValueError):
        ResidualView(c4, frozenset(range(4)))
