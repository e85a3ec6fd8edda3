import pytest

from ssemod.generators import (
    FamilySpec,
    clique_union,
    complement_3regular,
    generate,
    matched_clique_union,
    random_regular,
)
from ssemod.graph import is_regular
from ssemod.oracle import opt_exact


def test_clique_union_shape():
    g = clique_union(2, 4)
    assert g.n == 8 and is_regular(g) == 3
    assert clique_union(21, 4).n == 84


@pytest.mark.parametrize("k,s", [(1, 4), (2, 3)])
def test_clique_union_preconditions(k, s):
    with pytest.raises(ValueError):
        clique_union(k, s)


@pytest.mark.parametrize("k,s", [(2, 4), (3, 4), (2, 5), (2, 6)])
def test_clique_union_optimum(k, s):
    assert opt_exact(clique_union(k, s)).value == pytest.approx(1 - 1 / k, abs=1e-12)


def _cross_edges(g, k, s):
    return sum(1 for u, v in g.edges if u // s != v // s)


def test_matched_clique_union_counts():
    g = matched_clique_union(2, 4, seed=0)
    assert is_regular(g) == 3 and _cross_edges(g, 2, 4) == 2
    g = matched_clique_union(10, 8, seed=0)
    assert g.n == 80 and is_regular(g) == 7 and _cross_edges(g, 10, 8) == 10


@pytest.mark.parametrize("k", [2, 3, 5, 9])
@pytest.mark.parametrize("s", [4, 5, 7])
@pytest.mark.parametrize("seed", range(4))
def test_matched_clique_union_regular(k, s, seed):
    g = matched_clique_union(k, s, seed)
    assert is_regular(g) == s - 1
    for b in range(k):
        assert not g.has_edge(b * s, b * s + 1)


def test_random_regular_contract():
    g = random_regular(10, 3, seed=1)
    assert is_regular(g) == 3
    assert random_regular(4, 3, seed=7).m == 6
    for seed in range(5):
        assert is_regular(random_regular(50, 6, seed)) == 6


def test_random_regular_deterministic():
    assert random_regular(30, 3, seed=9) == random_regular(30, 3, seed=9)
    assert random_regular(30, 3, seed=9) != random_regular(30, 3, seed=10)


@pytest.mark.parametrize("n,d", [(5, 3), (4, 4), (3, -1)])
def test_random_regular_infeasible(n, d):
    with pytest.raises(ValueError):
        random_regular(n, d)


def test_complement_3regular():
    assert is_regular(complement_3regular(24, 0)) == 20
    assert is_regular(complement_3regular(8, 0)) == 4
    with pytest.raises(ValueError):
        complement_3regular(9)
    with pytest.raises(ValueError):
        complement_3regular(6)


def test_family_spec_roundtrip():
    spec = FamilySpec("matched_clique_union", {"k": 3, "s": 5}, seed=2)
    assert spec.build() == matched_clique_union(3, 5, 2)
    assert spec.header() == ["family=matched_clique_union k=3 s=5 seed=2"]
    with pytest.raises(ValueError):
        generate("nope")
    with pytest.raises(ValueError):
        generate("clique_union", k=2)
