import math
import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import brentq

from conftest import path
from ssemod.distinguisher import (
    dstar_lower_bound,
    guess_grid,
    mu_feasible_range,
    run,
    verify_paper_bounds,
)
from ssemod.errors import NotRegularError
from ssemod.generators import clique_union, complement_3regular, matched_clique_union, random_regular
from ssemod.graph import Graph, TwoPartition
from ssemod.metrics import modularity_clustering
from ssemod.oracle import opt2_exact, opt_exact
from ssemod.profile import DESK, PAPER

F = Fraction


def test_guess_grid_examples():
    assert guess_grid(4, 2).values == (F(1, 4), F(1, 2), F(3, 4), F(1))
    assert guess_grid(2, 1).values == (F(1),)
    assert guess_grid(6, 2).values == tuple(map(F, ["1/6", "1/4", "1/3", "1/2", "2/3", "3/4", "5/6", "1"]))
    with pytest.raises(ValueError):
        guess_grid(1, 3)


def test_guess_grid_validity():
    n, d = 40, 5
    grid = guess_grid(n, d)
    assert len(set(grid)) == len(grid) <= d * n * n / 2
    assert list(grid) == sorted(grid)
    rnd = random.Random(0)
    for v in rnd.sample(list(grid), 100):
        # some j <= n/2 makes v * j * d a whole number of at most j * d
        assert any((v * j * d).denominator == 1 and 1 <= v * j * d <= j * d for j in range(1, n // 2 + 1))


def test_mu_feasible_range():
    assert mu_feasible_range(PAPER) == (0.4995, 0.5)
    lo, hi = mu_feasible_range(DESK)
    assert abs(2 * lo * (1 - lo) - 0.475) <= 1e-12
    root = brentq(lambda mu: 2 * mu * (1 - mu) - (1 - DESK.eps) / 2, 0, 0.5, xtol=1e-15)
    assert lo == pytest.approx(root, abs=1e-12)
    tiny = DESK.replace(eps=1e-14)
    assert mu_feasible_range(tiny)[0] == pytest.approx(0.5, abs=1e-6)


def test_dstar_lower_bound():
    assert dstar_lower_bound(PAPER) == pytest.approx(math.sqrt(1 - 1e-6), abs=1e-15)
    assert dstar_lower_bound(PAPER) > 1 - 1e-6
    assert dstar_lower_bound(DESK.replace(eps=1e-15)) == pytest.approx(1, abs=1e-12)
    assert dstar_lower_bound(DESK) == pytest.approx(0.974679434, abs=1e-9)
    a = (1 - DESK.eps) / 4
    mus = np.linspace(0.01, 1, 200_001)
    assert dstar_lower_bound(DESK) == pytest.approx((a / mus + mus).min(), abs=1e-9)


def test_verify_paper_bounds_values():
    rep = verify_paper_bounds(PAPER)
    printed = {case: rep[case]["printed"]["bound"] for case in ("case_I", "case_IIa", "case_IIb")}
    assert printed["case_I"] == pytest.approx(float(2 * F("0.4599") * (F("0.919999") - F("0.54"))), abs=1e-12)
    assert printed["case_IIa"] == pytest.approx(0.297699084, abs=1e-12)
    assert printed["case_IIb"] == pytest.approx(0.2304, abs=1e-12)
    assert rep["ok"]
    assert all(rep[c]["derived"]["bound"] > PAPER.eps for c in printed)


def test_verify_bounds_detects_bad_profile():
    with pytest.raises(AssertionError):
        verify_paper_bounds(PAPER.replace(extract_phi_budget=0.6))


def test_run_clique_union_high():
    g = clique_union(21, 4)
    rep = run(g, DESK)
    assert rep.decision == "HIGH"
    cert = rep.certificate
    value = modularity_clustering(g, TwoPartition.from_set(g, cert["side_a"]).as_clustering())
    assert value == cert["f_value"] > 0.05
    assert rep.case == "II"


def test_run_complement_low():
    rep = run(complement_3regular(24, 0), DESK)
    assert rep.decision == "LOW"
    assert rep.best_f <= opt2_exact(complement_3regular(24, 0)).value


def test_run_two_cliques_case_one(two_k4):
    rep = run(two_k4, DESK.replace(eps=0.4))
    assert rep.case == "I"
    assert rep.decision == "HIGH"
    assert rep.certificate["f_value"] == 0.5
    assert rep.certificate["side_a"] == [0, 1, 2, 3]


def test_run_rejects_bad_input():
    with pytest.raises(NotRegularError):
        run(path(4))
    with pytest.raises(ValueError):
        run(Graph(4))


def _check_report(g, rep, p):
    cert = rep.certificate
    if cert is None:
        assert rep.decision == "LOW"
        return
    part = TwoPartition.from_set(g, cert["side_a"])
    assert abs(modularity_clustering(g, part.as_clustering()) - cert["f_value"]) <= 1e-12
    assert (rep.decision == "HIGH") == (F(cert["f_exact"]) > F(p.eps))
    assert rep.best_f == cert["f_value"]
    for c in rep.candidates:
        assert c["f"] == pytest.approx(c["modularity"], abs=1e-12)


@pytest.mark.parametrize("seed", range(6))
def test_certificate_soundness_random(seed):
    rnd = random.Random(seed)
    n = rnd.choice([10, 12, 16, 30, 50])
    d = rnd.choice([3, 4, 5])
    g = random_regular(n, d, seed)
    _check_report(g, run(g, DESK), DESK)


@pytest.mark.parametrize("g", [clique_union(2, 4), clique_union(3, 4), matched_clique_union(3, 4, 0),
                               random_regular(10, 3, 0), random_regular(12, 5, 1), complement_3regular(12, 2)])
def test_never_overclaims(g):
    opt = opt_exact(g).value
    rep = run(g, DESK, opt=opt)
    _check_report(g, rep, DESK)
    if rep.best_f is not None:
        assert rep.best_f <= opt + 1e-10
    assert rep.outside_promise == (DESK.eps < opt < 1 - DESK.eps)


def test_deterministic_and_thread_independent():
    g = matched_clique_union(10, 6, seed=2)
    a = run(g, DESK).to_dict()
    b = run(g, DESK, threads=4).to_dict()
    a.pop("timings"), b.pop("timings")
    assert a == b


def test_guess_trace_shape():
    rep = run(clique_union(3, 4), DESK)
    statuses = {gt["status"] for gt in rep.guesses}
    assert statuses <= {"active", "pruned"}
    active = [gt for gt in rep.guesses if gt["status"] == "active"]
    assert active and all(gt["value"] >= dstar_lower_bound(DESK) - 1e-12 for gt in active)
