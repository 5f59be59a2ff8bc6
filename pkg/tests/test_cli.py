import pytest
import io
import json
import networkx as nx

from oddcycletools.cli import (run, build_parser, RunConfig, EXIT_OK,
                               EXIT_VIOLATION, EXIT_USAGE)
from oddcycletools.graph_utils import Graph, cycle_graph, cycle_blowup
from oddcycletools._io import write_graph6, write_edge_list, parse_graph6
from oddcycletools._constants import VERSION


def _g6(g):
    return write_graph6(g).decode('ascii')


@pytest.fixture
def doubled_heptagon_g6():
    return _g6(cycle_blowup(7, [2] * 7))


def _run(argv, stdin_text=''):
    out = io.StringIO()
    code = run(argv, stdin=io.StringIO(stdin_text), stdout=out)
    return code, out.getvalue()


def test_count(doubled_heptagon_g6):
    code, out = _run(['count', '--k', '7'],
                     '{}\n{}\n'.format(doubled_heptagon_g6, _g6(cycle_graph(7))))
    assert code == EXIT_OK
    assert out.splitlines() == ['128', '1']


def test_count_induced():
    k4 = _g6(Graph.from_networkx(nx.complete_graph(4)))
    assert _run(['count', '--k', '4'], k4)[1].split() == ['3']
    assert _run(['count', '--k', '4', '--induced'], k4)[1].split() == ['0']


def test_count_from_edge_list_file(tmp_path):
    path = tmp_path / 'c7.txt'
    path.write_text(write_edge_list(cycle_graph(7)))
    code, out = _run(['count', '--k', '7', '--input', str(path), '--format', 'edges'])
    assert code == EXIT_OK
    assert out.split() == ['1']


def test_odd_girth():
    lines = '\n'.join([_g6(cycle_graph(5)), _g6(cycle_graph(8))])
    assert _run(['odd-girth'], lines)[1].splitlines() == ['5', 'inf']


def test_blowup():
    code, out = _run(['blowup', '--cycle', '5', '--blobs', '2,2,2,1,1'])
    assert code == EXIT_OK
    assert parse_graph6(out.strip()) == cycle_blowup(5, [2, 2, 2, 1, 1])

    out = _run(['blowup', '--cycle', '7', '--balanced', '14'])[1]
    assert parse_graph6(out.strip()) == cycle_blowup(7, [2] * 7)

    out = _run(['blowup', '--cycle', '5', '--balanced', '5', '--format', 'edges'])[1]
    assert out.splitlines()[0] == '5 5'


def test_blowup_usage_errors():
    assert _run(['blowup', '--cycle', '5'])[0] == EXIT_USAGE
    assert _run(['blowup', '--cycle', '5', '--blobs', '2,x'])[0] == EXIT_USAGE
    assert _run(['blowup', '--cycle', '5', '--blobs', '2,2'])[0] == EXIT_USAGE


def test_verify_pass():
    code, out = _run(['verify', '--k', '7'], _g6(cycle_graph(7)))
    assert code == EXIT_OK
    assert out.startswith('graph 0: pass')
    assert 'claim1 1/1' in out


def test_verify_precondition_unmet():
    with pytest.warns(UserWarning):
        code, out = _run(['verify', '--k', '7'], _g6(cycle_graph(5)))
    assert code == EXIT_VIOLATION
    assert 'precondition-unmet' in out
    assert 'precondition failed: odd girth 5 < k = 7' in out


def test_verify_json(doubled_heptagon_g6):
    code, out = _run(['verify', '--k', '7', '--json', '--per-cycle'],
                     doubled_heptagon_g6)
    assert code == EXIT_OK
    document = json.loads(out)
    assert set(document) == {'tool', 'version', 'subcommand', 'inputs_digest',
                             'results'}
    assert document['tool'] == 'oddcycletools'
    assert document['version'] == VERSION
    assert document['subcommand'] == 'verify'
    assert len(document['inputs_digest']) == 64
    actual_result = document['results'][0]
    assert actual_result['verdict'] == 'pass'
    assert actual_result['count'] == '128'
    assert actual_result['claim1']['total'] == '1/1'
    assert len(actual_result['claim2']) == 128


def test_json_output_is_deterministic(doubled_heptagon_g6):
    first = _run(['--json', 'count', '--k', '7'], doubled_heptagon_g6)[1]
    second = _run(['count', '--k', '7', '--json', '--workers', '2'],
                  doubled_heptagon_g6)[1]
    assert json.loads(first)['results'] == json.loads(second)['results']
    assert _run(['--json', 'count', '--k', '7'], doubled_heptagon_g6)[1] == first


def test_inputs_digest_depends_on_input():
    first = json.loads(_run(['count', '--k', '7', '--json'], _g6(cycle_graph(7)))[1])
    second = json.loads(_run(['count', '--k', '7', '--json'], _g6(cycle_graph(8)))[1])
    assert first['inputs_digest'] != second['inputs_digest']


def test_search_exhaustive():
    code, out = _run(['search', 'exhaustive', '--n', '7', '--k', '7'])
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].startswith('best 1 (floor 1,')
    assert lines[1] == 'reached floor((n/k)^k)'
    assert parse_graph6(lines[2]).number_of_edges() == 7


def test_search_exhaustive_from_input():
    lines = '\n'.join([_g6(cycle_graph(5)), _g6(Graph(5, [0] * 5))])
    code, out = _run(['search', 'exhaustive', '--n', '5', '--k', '5',
                      '--constraint', 'triangle-free', '--from-input', '--json'], lines)
    assert code == EXIT_OK
    actual_results = json.loads(out)['results']
    assert actual_results['best_count'] == '1'
    assert actual_results['graphs_examined'] == '2'
    assert actual_results['constraint']['kind'] == 'triangle-free'


def test_search_hillclimb():
    code, out = _run(['search', 'hillclimb', '--n', '14', '--k', '7',
                      '--seed', '0', '--budget', '0', '--json'])
    assert code == EXIT_OK
    document = json.loads(out)
    assert document['subcommand'] == 'search hillclimb'
    assert document['results']['best_count'] == '128'
    assert document['results']['seed'] == 0
    assert document['results']['mode'] == 'hillclimb'


def test_conjecture():
    code, out = _run(['conjecture', '2', '--k', '7', '--l', '3', '--t-max', '2'])
    assert code == EXIT_OK
    assert out.splitlines()[0] == 'conjecture 2: measured'

    code, out = _run(['conjecture', '1', '--n', '6', '--k', '5', '--strict'])
    assert code == EXIT_OK
    assert out.splitlines()[0] == 'conjecture 1: holds'


def test_conjecture_missing_params():
    assert _run(['conjecture', '1', '--k', '5'])[0] == EXIT_USAGE
    assert _run(['conjecture', '2', '--k', '7'])[0] == EXIT_USAGE


def test_usage_errors():
    assert _run([])[0] == EXIT_USAGE
    assert _run(['count'])[0] == EXIT_USAGE
    assert _run(['count', '--k', '7', '--bogus'])[0] == EXIT_USAGE
    assert _run(['count', '--k', '7', '--workers', '0'])[0] == EXIT_USAGE
    assert _run(['count', '--k', '2'], _g6(cycle_graph(5)))[0] == EXIT_USAGE
    assert _run(['search', 'hillclimb', '--n', '8', '--k', '7', '--seed', '0',
                 '--budget', '-5'])[0] == EXIT_USAGE
    assert _run(['search', 'hillclimb', '--n', '8', '--k', '7', '--seed', '0',
                 '--budget', '5', '--restarts', '0'])[0] == EXIT_USAGE


def test_bad_input():
    assert _run(['count', '--k', '7'], 'C~~\n')[0] == EXIT_USAGE
    assert _run(['count', '--k', '7', '--input', '/nonexistent/graphs.g6'])[0] == EXIT_USAGE


def test_help_exits_ok():
    assert _run(['--help'])[0] == EXIT_OK


def test_run_config_from_namespace():
    ns = build_parser().parse_args(['search', 'exhaustive', '--n', '5', '--k', '5',
                                    '--workers', '3'])
    actual_config = RunConfig.from_namespace(ns)
    assert actual_config.subcommand == 'search exhaustive'
    assert actual_config.workers == 3
    assert actual_config.options['n'] == 5
    assert actual_config.options['constraint'] == 'odd-girth'
    assert actual_config.digest([]) == RunConfig.from_namespace(ns).digest([])
