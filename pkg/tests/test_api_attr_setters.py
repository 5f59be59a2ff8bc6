import pytest


from oddcycletools.api import ExtremalSearch
from oddcycletools.gen_utils import ConstraintClass
from oddcycletools.graph_utils import cycle_graph


@pytest.fixture
def actual_evaluated_search():
    return (ExtremalSearch(5, 5, constraint=ConstraintClass.triangle_free())
            .generate()
            .evaluate())


def test_attr_setters_main_setup(actual_evaluated_search):
    actual_evaluated_search.workers = 4
    assert actual_evaluated_search.workers == 4

    actual_evaluated_search.graphs = [cycle_graph(5)]
    assert actual_evaluated_search.graphs == [cycle_graph(5)]

    actual_evaluated_search.counts = [1]
    assert actual_evaluated_search.counts == [1]


def test_attr_setters_status(actual_evaluated_search):
    actual_evaluated_search.is_generated = False
    assert not actual_evaluated_search.is_generated

    actual_evaluated_search.is_evaluated = False
    assert not actual_evaluated_search.is_evaluated
    with pytest.raises(AttributeError):
        actual_evaluated_search.to_report()


def test_attr_setters_reach_analysis(actual_evaluated_search):
    actual_evaluated_search.graphs = [cycle_graph(5)]
    actual_evaluated_search.counts = [1]
    assert actual_evaluated_search.get_extremal_graphs() == [cycle_graph(5)]
    assert actual_evaluated_search.to_report().graphs_examined == 1


def test_read_only_args(actual_evaluated_search):
    with pytest.raises(AttributeError):
        actual_evaluated_search.n = 6
    with pytest.raises(AttributeError):
        actual_evaluated_search.k = 7
    with pytest.raises(AttributeError):
        actual_evaluated_search.constraint = ConstraintClass.unconstrained()
