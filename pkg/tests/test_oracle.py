import pytest

from conftest import brute_min_phi, brute_modularity, brute_opt, brute_opt2, complete, random_graph
from ssemod.errors import BudgetExceededError
from ssemod.generators import clique_union, cycle, random_regular
from ssemod.graph import Clustering, Graph, TwoPartition
from ssemod.metrics import modularity_clustering
from ssemod.oracle import opt2_exact, opt_exact, sse_exact


def _bell(n):
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def test_opt_k4(k4):
    res = opt_exact(k4)
    assert res.value == 0
    assert res.witness == Clustering((range(4),))
    assert res.instances_enumerated == 15


def test_opt_clique_unions():
    res = opt_exact(clique_union(2, 4))
    assert res.value == 0.5
    assert set(res.witness.parts) == {frozenset(range(4)), frozenset(range(4, 8))}
    assert opt_exact(clique_union(3, 4)).value == pytest.approx(2 / 3, abs=1e-15)


@pytest.mark.parametrize("n", [1, 2, 5, 7])
def test_opt_counts_bell(n):
    g = complete(n) if n > 1 else Graph(2, [(0, 1)])
    assert opt_exact(g).instances_enumerated == _bell(g.n)


def test_opt_matches_brute_force(rng):
    for _ in range(25):
        g = random_graph(rng.randint(2, 7), 0.5, rng)
        if g.m == 0:
            continue
        res = opt_exact(g)
        assert res.value == pytest.approx(brute_opt(g), abs=1e-12)
        assert modularity_clustering(g, res.witness) == pytest.approx(res.value, abs=1e-12)


def test_opt2_examples(k4, two_k4):
    assert opt2_exact(two_k4).value == 0.5
    res = opt2_exact(k4)
    assert res.value == 0
    assert res.witness.k == 1


def test_opt2_c6():
    g = cycle(6)
    opt, opt2 = opt_exact(g), opt2_exact(g)
    assert opt2.instances_enumerated == 32
    assert opt2.value == pytest.approx(brute_opt2(g), abs=1e-12)
    assert opt.value == pytest.approx(brute_opt(g), abs=1e-12)
    assert opt2.value >= opt.value / 2


def test_opt2_matches_brute_force(rng):
    for _ in range(25):
        g = random_graph(rng.randint(2, 9), 0.4, rng)
        if g.m == 0:
            continue
        res = opt2_exact(g)
        assert res.value == pytest.approx(brute_opt2(g), abs=1e-12)
        w = res.witness
        parts = [w.side_a, w.side_b] if isinstance(w, TwoPartition) else w.parts
        assert brute_modularity(g, parts) == pytest.approx(res.value, abs=1e-12)


def test_opt2_large_two_level():
    # crosses the low/high bit split of the enumerator
    g = random_regular(18, 3, seed=6)
    res = opt2_exact(g)
    assert modularity_clustering(g, res.witness.as_clustering()) == pytest.approx(res.value, abs=1e-12)
    assert res.instances_enumerated == 2**17


def test_sse_exact_examples(two_k4):
    assert sse_exact(two_k4, 4, 4).value == 0
    assert sse_exact(complete(8), 4, 4).value == pytest.approx(4 / 7, abs=1e-15)
    res = sse_exact(cycle(8), 4, 4)
    assert res.value == 0.25
    assert res.instances_enumerated == 70


def test_sse_exact_matches_brute_force(rng):
    for _ in range(20):
        g = random_regular(rng.choice([6, 8, 10, 14]), 3, seed=rng.randrange(10**6))
        lo = rng.randint(1, g.n // 2)
        hi = rng.randint(lo, g.n - 1)
        assert sse_exact(g, lo, hi).value == pytest.approx(brute_min_phi(g, lo, hi), abs=1e-15)


def test_budgets():
    big = random_regular(14, 3, seed=0)
    with pytest.raises(BudgetExceededError):
        opt_exact(big)
    with pytest.raises(BudgetExceededError):
        sse_exact(random_regular(24, 3, seed=0), 1, 2)
    with pytest.raises(BudgetExceededError):
        opt2_exact(random_regular(28, 3, seed=0))
    with pytest.raises(ValueError):
        sse_exact(big, 0, 3)


def test_oracle_inequalities(rng):
    for _ in range(15):
        g = random_graph(rng.randint(3, 9), 0.45, rng)
        if g.m == 0:
            continue
        opt, opt2 = opt_exact(g).value, opt2_exact(g).value
        assert 0 <= opt2 <= opt + 1e-12
        assert opt2 >= opt / 2 - 1e-12
        assert opt < 1
