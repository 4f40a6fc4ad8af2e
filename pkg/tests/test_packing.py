import pytest

from src.cobra.engine import run_multi_cobra
from src.cobra.models import CobraConfig
from src.graphs.generator import complete_graph, path_graph
from src.graphs.models import BfsTree
from src.packing.tree_packing import (
    PackingCheck, TreePacking, build_tree_packing, depths_from_parents, packing_weight, tree_diameter,
    verify_packing,
)
from src.utils.errors import CoverageError, InvalidParameterError, PackingError


@pytest.fixture
def er_packing(er_graph, er_regular):
    assignment = run_multi_cobra(er_regular, 0, CobraConfig(num_walks=er_graph.min_degree), seed=3)
    return assignment, build_tree_packing(er_regular, assignment, 0)


def test_depths_from_parents():
    assert depths_from_parents([None, 0, 1, 1], 0) == [0, 1, 2, 2]
    assert depths_from_parents([None, 2, 1], 0) == [0, None, None]


def test_tree_diameter_and_weight():
    star = BfsTree(0, [None, 0, 0, 0], [0, 1, 1, 1])
    path = BfsTree(0, [None, 0, 1, 2], [0, 1, 2, 3])
    assert tree_diameter(star) == 2
    assert tree_diameter(path) == 3
    assert packing_weight([star, path]) == 2
    assert packing_weight([]) == 0


def test_from_parents_measures_the_packing():
    tp = TreePacking.from_parents(0, [[None, 0, 1, 2], [None, 0, 0, 0]])
    assert (tp.packing_size, tp.packing_diameter, tp.packing_weight) == (2, 3, 2)
    assert tp.node_count == 4
    with pytest.raises(PackingError):
        TreePacking.from_parents(0, [[None, 0, None, 2]])


def test_packing_from_covered_walks(er_graph, er_regular, er_packing):
    assignment, tp = er_packing
    assert assignment.uncovered_walks() == []
    assert tp.packing_size == er_graph.min_degree
    assert tp.packing_weight <= assignment.max_edge_weight()
    assert len(tp.hop_loads) == max(t.max_depth for t in tp.trees)
    assert tp.build_rounds == sum(tp.hop_loads) >= len(tp.hop_loads)
    assert tp.build_rounds <= assignment.max_edge_weight() * max(t.max_depth for t in tp.trees)
    assert verify_packing(tp, er_regular).passed
    assert verify_packing(tp, er_graph).passed


def test_trees_are_bfs_trees_of_their_walk_subgraph(er_packing):
    assignment, tp = er_packing
    for walk, tree in enumerate(tp.trees):
        edges = {tuple(sorted(e)) for e in assignment.edges_of(walk)}
        assert all(tuple(sorted(e)) in edges for e in tree.edges())


def test_uncovered_assignment_is_rejected(k5):
    assignment = run_multi_cobra(k5, 0, CobraConfig(num_walks=2, phases=0), seed=1)
    with pytest.raises(CoverageError) as err:
        build_tree_packing(k5, assignment, 0)
    assert err.value.uncovered == [0, 1]


def test_source_must_match_assignment(k5):
    assignment = run_multi_cobra(k5, 0, CobraConfig(num_walks=2), seed=1)
    with pytest.raises(InvalidParameterError):
        build_tree_packing(k5, assignment, 1)


def test_packing_json_keeps_parents():
    tp = TreePacking.from_parents(0, [[None, 0, 1, 2]], build_rounds=7)
    restored = TreePacking.from_dict(tp.to_dict())
    assert restored.trees[0].parent == [None, 0, 1, 2]
    assert restored.build_rounds == 7
    assert tp.to_dict()['H'] == 3


def test_verify_flags_missing_edges():
    tp = TreePacking.from_parents(0, [[None, 0, 0, 2]])
    report = verify_packing(tp, path_graph(4))
    assert not report.passed
    assert report.result(PackingCheck.EDGES_EXIST).counterexample == {'tree': 0, 'edge': (0, 2)}


def test_verify_flags_cycles_and_recorded_weight():
    cyclic = BfsTree(0, [None, 2, 1], [0, None, None])
    tp = TreePacking(source=0, trees=[cyclic], packing_size=1, packing_diameter=0, packing_weight=1)
    report = verify_packing(tp, complete_graph(3))
    failed = {r.check for r in report.failures()}
    assert {PackingCheck.ACYCLIC, PackingCheck.SPANNING, PackingCheck.WEIGHT} <= failed


def test_verify_flags_wrong_size():
    tp = TreePacking.from_parents(0, [[None, 0, 1]])
    tp.packing_size = 2
    assert not verify_packing(tp, path_graph(3)).result(PackingCheck.SIZE).passed
