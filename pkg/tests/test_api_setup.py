import pytest


from oddcycletools.api import ExtremalSearch
from oddcycletools.gen_utils import ConstraintClass


@pytest.fixture
def mock_initial_search():
    mock_search = ExtremalSearch(5, 5, constraint=ConstraintClass.triangle_free())
    return mock_search


def test_search_instantiation():
    actual_search = ExtremalSearch(7, 7)

    assert isinstance(actual_search, ExtremalSearch)

    # args
    assert actual_search.n == 7
    assert actual_search.k == 7

    # default constraint and workers
    assert actual_search.constraint == ConstraintClass.odd_girth_at_least(7)
    assert actual_search.workers == 1

    # nothing generated yet
    assert not actual_search.is_generated
    assert isinstance(actual_search.is_generated, bool)
    assert not actual_search.is_evaluated
    assert actual_search.graphs == []
    assert actual_search.counts == []


def test_search_instantiation_needs_n_and_k():
    with pytest.raises(TypeError):
        ExtremalSearch()
    with pytest.raises(TypeError):
        ExtremalSearch(7)


def test_search_instantiation_bad_workers():
    with pytest.raises(ValueError):
        ExtremalSearch(7, 7, workers=0)


def test_generate(mock_initial_search):
    mock_output = mock_initial_search.generate()

    assert mock_initial_search.is_generated
    assert not mock_initial_search.is_evaluated
    assert isinstance(mock_initial_search.graphs, list)
    assert len(mock_initial_search.graphs) == 14

    # output is the search object itself
    assert isinstance(mock_output, ExtremalSearch)


def test_evaluate(mock_initial_search):
    mock_output = mock_initial_search.generate().evaluate()

    assert mock_initial_search.is_evaluated
    assert len(mock_initial_search.counts) == len(mock_initial_search.graphs)
    assert max(mock_initial_search.counts) == 1

    # output is the search object itself
    assert isinstance(mock_output, ExtremalSearch)


def test_generate_resets_evaluation(mock_initial_search):
    mock_initial_search.generate().evaluate().generate()

    assert not mock_initial_search.is_evaluated
    assert mock_initial_search.counts == []


def test_functions_to_fail_for_ungenerated_search(mock_initial_search):
    # catch functions that require attributes set via generate method
    with pytest.raises(AttributeError):
        mock_initial_search.evaluate()


def test_functions_to_fail_for_unevaluated_search(mock_initial_search):
    # catch functions that require attributes set via evaluate method
    mock_initial_search.generate()
    with pytest.raises(AttributeError):
        mock_initial_search.get_extremal_graphs()
    with pytest.raises(AttributeError):
        mock_initial_search.get_graph_metadata()
    with pytest.raises(AttributeError):
        mock_initial_search.to_report()
