import pytest
import numpy as np

import oddcycletools.api
from oddcycletools.heuristics import (branch_rng, random_bipartite_graph,
                                      seed_graphs, hill_climb)
from oddcycletools.api import HILLCLIMB
from oddcycletools.gen_utils import ConstraintClass
from oddcycletools.graph_utils import cycle_blowup, odd_girth, INFINITE
from oddcycletools.canon_utils import are_isomorphic
from oddcycletools._io import parse_graph6


@pytest.fixture
def odd_girth_seven():
    return ConstraintClass.odd_girth_at_least(7)


def test_branch_rng_streams():
    assert (branch_rng(5, 2).integers(0, 1000, 10)
            == branch_rng(5, 2).integers(0, 1000, 10)).all()
    assert not (branch_rng(5, 2).integers(0, 1000, 10)
                == branch_rng(5, 3).integers(0, 1000, 10)).all()
    assert not (branch_rng(5, 2).integers(0, 1000, 10)
                == branch_rng(5, 2, phase=1).integers(0, 1000, 10)).all()


def test_random_bipartite_graph():
    rng = np.random.default_rng(0)
    for n in range(1, 15):
        g = random_bipartite_graph(n, rng)
        assert g.n == n
        assert odd_girth(g) is INFINITE
    assert random_bipartite_graph(6, rng, density=0.0).number_of_edges() == 0
    assert random_bipartite_graph(6, rng, density=1.0).number_of_edges() == 9


def test_seed_graphs(odd_girth_seven):
    actual_seeds = seed_graphs(14, 7, odd_girth_seven, seed=1, restarts=3)
    assert len(actual_seeds) == 3
    assert actual_seeds[0] == cycle_blowup(7, [2] * 7)
    assert all(odd_girth_seven.admits(g) for g in actual_seeds)
    assert seed_graphs(14, 7, odd_girth_seven, seed=1, restarts=3) == actual_seeds


def test_seed_graphs_outside_the_class():
    # a heptagon blow-up has odd girth 7, too short for this class
    actual_seeds = seed_graphs(9, 7, ConstraintClass.odd_girth_at_least(9),
                               seed=0, restarts=1)
    assert actual_seeds[0].number_of_edges() == 0


def test_seed_graphs_below_k(odd_girth_seven):
    actual_seeds = seed_graphs(5, 7, odd_girth_seven, seed=0, restarts=2)
    assert all(odd_girth(g) is INFINITE for g in actual_seeds)


def test_zero_budget_returns_best_seed(odd_girth_seven, mocker):
    spy = mocker.spy(oddcycletools.api, 'count_cycles')
    actual_report = hill_climb(14, 7, odd_girth_seven, seed=0, budget=0)
    assert spy.call_count == 4
    assert actual_report.best_count == 128
    assert actual_report.reached_bound
    assert actual_report.graphs_examined == 4
    assert actual_report.mode == HILLCLIMB
    assert actual_report.budget == 0
    assert len(actual_report.extremal_graphs) == 1
    assert are_isomorphic(parse_graph6(actual_report.extremal_graphs[0]),
                          cycle_blowup(7, [2] * 7))


def test_hill_climb_triangle_free_pentagons():
    constraint = ConstraintClass.triangle_free()
    actual_report = hill_climb(10, 5, constraint, seed=11, budget=400)
    assert actual_report.best_count == 32
    assert all(constraint.admits(parse_graph6(record))
               for record in actual_report.extremal_graphs)


def test_hill_climb_stays_in_class(odd_girth_seven):
    actual_report = hill_climb(9, 7, odd_girth_seven, seed=4, budget=300,
                               restarts=3)
    assert actual_report.best_count >= 2
    assert actual_report.best_count <= actual_report.bound_floor
    for record in actual_report.extremal_graphs:
        assert odd_girth_seven.admits(parse_graph6(record))


def test_hill_climb_is_deterministic_across_workers():
    constraint = ConstraintClass.triangle_free()
    expected = hill_climb(11, 5, constraint, seed=3, budget=240, restarts=4)
    actual_report = hill_climb(11, 5, constraint, seed=3, budget=240,
                               restarts=4, workers=3)
    assert actual_report == expected
    assert hill_climb(11, 5, constraint, seed=3, budget=240, restarts=4) == expected


def test_hill_climb_counts_induced_cycles():
    constraint = ConstraintClass.observation(8)
    actual_report = hill_climb(9, 8, constraint, seed=2, budget=150, restarts=2)
    assert actual_report.best_count >= 2
    assert all(constraint.admits(parse_graph6(record))
               for record in actual_report.extremal_graphs)


def test_hill_climb_errors(odd_girth_seven):
    with pytest.raises(ValueError):
        hill_climb(8, 7, odd_girth_seven, seed=0, budget=-1)
    with pytest.raises(ValueError):
        hill_climb(8, 7, odd_girth_seven, seed=-1, budget=10)
    with pytest.raises(ValueError):
        hill_climb(8, 7, odd_girth_seven, seed=0, budget=10, restarts=0)
    with pytest.raises(ValueError):
        hill_climb(8, 7, odd_girth_seven, seed=0, budget=10, workers=0)


def test_hill_climb_warns_about_idle_workers(odd_girth_seven):
    with pytest.warns(UserWarning):
        hill_climb(8, 7, odd_girth_seven, seed=0, budget=10, restarts=1,
                   workers=2)


def test_hill_climb_rejects_counts_above_the_bound(odd_girth_seven, mocker):
    mocker.patch('oddcycletools.api.count_cycles', return_value=129)
    with pytest.raises(RuntimeError):
        hill_climb(14, 7, odd_girth_seven, seed=0, budget=0)


def test_hill_climb_reports_stay_under_the_bound(odd_girth_seven):
    actual_report = hill_climb(14, 7, odd_girth_seven, seed=42, budget=50)
    assert 7 ** 7 * actual_report.best_count <= 14 ** 7
    assert actual_report.best_count == 128
    assert actual_report.reached_bound
