"""Command-line surface, driven through mcbsim.main"""
import json

import pytest

import mcbsim
from src.graphs.io import read_edge_list


def _json_output(capsys):
    return json.loads(capsys.readouterr().out)


def test_command_is_required():
    with pytest.raises(SystemExit):
        mcbsim.main([])


def test_gen_then_spectral(tmp_path, capsys):
    graph = tmp_path / 'g.txt'
    assert mcbsim.main(['gen', '--n', '24', '--p', '0.5', '--seed', '4', '--out', str(graph)]) == 0
    assert read_edge_list(graph).node_count == 24
    capsys.readouterr()

    assert mcbsim.main(['spectral', '--graph', str(graph)]) == 0
    report = _json_output(capsys)
    assert 0 < report['lambda2'] < 1


def test_simulation_chain(tmp_path, capsys):
    graph, assignment, packing, trace = (tmp_path / name for name in
                                         ('g.txt', 'cobra.json', 'packing.json', 'trace.csv'))
    assert mcbsim.main(['gen', '--n', '20', '--p', '0.6', '--seed', '9', '--out', str(graph)]) == 0
    assert mcbsim.main(['cobra', '--graph', str(graph), '--seed', '1', '--out', str(assignment)]) == 0
    assert mcbsim.main(['treepack', '--graph', str(graph), '--assignment', str(assignment),
                        '--out', str(packing)]) == 0
    assert mcbsim.main(['broadcast', '--graph', str(graph), '--packing', str(packing),
                        '--k', '12', '--out', str(trace)]) == 0
    assert 'saturated all 20 nodes' in capsys.readouterr().out
    assert trace.read_text().splitlines()[0].startswith('round')


def _run_chain(out_dir):
    out_dir.mkdir()
    graph, assignment, packing, trace = (out_dir / name for name in
                                         ('g.txt', 'cobra.json', 'packing.json', 'trace.csv'))
    assert mcbsim.main(['gen', '--n', '25', '--p', '0.5', '--seed', '13', '--out', str(graph)]) == 0
    assert mcbsim.main(['cobra', '--graph', str(graph), '--seed', '2', '--out', str(assignment)]) == 0
    assert mcbsim.main(['treepack', '--graph', str(graph), '--assignment', str(assignment),
                        '--out', str(packing)]) == 0
    assert mcbsim.main(['broadcast', '--graph', str(graph), '--packing', str(packing),
                        '--k', '30', '--out', str(trace)]) == 0
    return {path.name: path.read_bytes() for path in (graph, assignment, packing, trace)}


def test_fixed_seeds_reproduce_every_output_file(tmp_path, capsys):
    first = _run_chain(tmp_path / 'first')
    first_stdout = capsys.readouterr().out
    second = _run_chain(tmp_path / 'second')
    assert first == second
    assert all(first.values())
    assert capsys.readouterr().out == first_stdout.replace(str(tmp_path / 'first'), str(tmp_path / 'second'))


def test_malformed_graph_reports_error(tmp_path, capsys):
    graph = tmp_path / 'bad.txt'
    graph.write_text('3 2\n0 1\n')
    assert mcbsim.main(['spectral', '--graph', str(graph)]) == 1
    assert capsys.readouterr().out.startswith('❌')


def test_hardness_reduce(tmp_path, capsys):
    sets = tmp_path / 'sets.json'
    sets.write_text(json.dumps({'ground_set_size': 3, 'family': [[0, 1]]}))
    assert mcbsim.main(['hardness', 'reduce', '--sets', str(sets), '--n1', '1']) == 0
    result = _json_output(capsys)
    assert result['saturates_in_4_rounds'] is True
    assert result['brute_force'] is True
    assert result['witness_split'] is not None


def test_hardness_reduce_rejects_bad_sets(tmp_path, capsys):
    sets = tmp_path / 'sets.json'
    sets.write_text(json.dumps({'family': [[0]]}))
    assert mcbsim.main(['hardness', 'reduce', '--sets', str(sets), '--n1', '1']) == 1


def test_sqrtk_then_saturate(tmp_path, capsys):
    instance = tmp_path / 'sqrtk.txt'
    assert mcbsim.main(['hardness', 'sqrtk', '--k', '4', '--out', str(instance)]) == 0
    capsys.readouterr()
    assert mcbsim.main(['hardness', 'saturate', '--graph', str(instance), '--sink', '1', '--k', '4']) == 0
    result = _json_output(capsys)
    assert result['min_rounds'] >= 2
    assert result['certificate_valid'] is True
    assert len(result['certificate']) == result['min_rounds']
