import random
from fractions import Fraction

import pytest

from combident import lgv
from combident.errors import CapExceeded, InputError, NotAcyclicError
from combident.graph import Matrix, WeightedDigraph
from combident.ring import MPoly

from oracles import leibniz_det, leibniz_per, random_dag, random_lgv_instance


def ab_graph():
    # A1=0, A2=1, B1=2, B2=3
    return WeightedDigraph.from_edges(4, [(0, 2, 2), (0, 3, 3), (1, 3, 5)])


def test_is_acyclic_examples():
    assert not lgv.is_acyclic(WeightedDigraph.from_edges(1, [(0, 0, 1)]))
    assert lgv.is_acyclic(WeightedDigraph(3))
    assert not lgv.is_acyclic(WeightedDigraph.from_edges(2, [(0, 1, 1), (1, 0, 1)]))
    assert lgv.is_acyclic(ab_graph())


def test_empty_path():
    paths = lgv.enumerate_paths(WeightedDigraph(2), 1, 1)
    assert len(paths) == 1
    assert paths[0].edges == () and paths[0].vertices == (1,)
    assert paths[0].weight(WeightedDigraph(2)) == 1


def test_chain_has_one_path():
    g = WeightedDigraph.from_edges(3, [(0, 1, 1), (1, 2, 1)])
    assert [p.edges for p in lgv.enumerate_paths(g, 0, 2)] == [(0, 1)]


def test_diamond_has_two_paths():
    g = WeightedDigraph.from_edges(4, [(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)])
    paths = lgv.enumerate_paths(g, 0, 3)
    assert [p.vertices for p in paths] == [(0, 1, 3), (0, 2, 3)]
    assert [p.edges for p in paths] == sorted(p.edges for p in paths)


def test_paths_reject_cycles():
    with pytest.raises(NotAcyclicError):
        lgv.enumerate_paths(WeightedDigraph.from_edges(1, [(0, 0, 1)]), 0, 0)
    with pytest.raises(NotAcyclicError):
        lgv.path_matrix(WeightedDigraph.from_edges(2, [(0, 1, 1), (1, 0, 1)]), [0], [1])


def test_path_matrix_examples():
    assert lgv.path_matrix(WeightedDigraph(3), [0, 1, 2], [0, 1, 2]) == Matrix.identity(3)
    assert lgv.path_matrix(ab_graph(), [0, 1], [2, 3]).to_rows() == [[2, 3], [0, 5]]


def test_path_matrix_length_mismatch():
    with pytest.raises(InputError):
        lgv.path_matrix(ab_graph(), [0, 1], [2])


def test_path_systems_examples():
    vd = lgv.enumerate_path_systems(ab_graph(), [0, 1], [2, 3], vertex_disjoint_only=True)
    assert len(vd) == 1
    assert vd[0].sigma == (0, 1) and vd[0].weight(ab_graph()) == 10
    vd = lgv.enumerate_path_systems(WeightedDigraph(2), [0, 1], [0, 1], vertex_disjoint_only=True)
    assert len(vd) == 1 and vd[0].sigma == (0, 1) and vd[0].weight(WeightedDigraph(2)) == 1


def test_shared_middle_vertex_blocks_disjoint_systems():
    # every A_i -> B_j path runs through vertex 2
    g = WeightedDigraph.from_edges(5, [(0, 2, 1), (1, 2, 1), (2, 3, 1), (2, 4, 1)])
    assert lgv.enumerate_path_systems(g, [0, 1], [3, 4], vertex_disjoint_only=True) == []
    assert len(lgv.enumerate_path_systems(g, [0, 1], [3, 4])) == 2
    rep = lgv.lgv_check(g, [0, 1], [3, 4])
    assert rep.passed and rep.values["det"] == 0


def test_lgv_check_examples():
    rep = lgv.lgv_check(ab_graph(), [0, 1], [2, 3])
    assert rep.passed
    assert rep.values["det"] == 10 == rep.values["vertex_disjoint_signed_sum"]
    rep = lgv.per_check(ab_graph(), [0, 1], [2, 3])
    assert rep.passed and rep.values["per"] == 10
    rep = lgv.per_check(WeightedDigraph(3), [0, 1, 2], [0, 1, 2])
    assert rep.values["per"] == 1


def test_single_source_sink_is_total_path_weight():
    g = WeightedDigraph.from_edges(4, [(0, 1, 2), (1, 3, 3), (0, 2, 5), (2, 3, 7), (0, 3, 1)])
    rep = lgv.lgv_check(g, [0], [3])
    assert rep.passed and rep.values["det"] == 2 * 3 + 5 * 7 + 1


def test_permutation_sign():
    assert lgv.permutation_sign((0, 1, 2)) == 1
    assert lgv.permutation_sign((1, 0, 2)) == -1
    assert lgv.permutation_sign((1, 2, 0)) == 1


def test_caps():
    g = WeightedDigraph(6)
    with pytest.raises(CapExceeded):
        lgv.enumerate_path_systems(g, list(range(6)), list(range(6)))
    # 2 layers of width 12 between one source and sink: too many systems for five copies
    edges = []
    n = 2 + 12 * 2
    for i in range(12):
        edges += [(0, 2 + i, 1), (2 + i, 14 + i, 1)]
        edges += [(14 + i, 1, 1) for _ in range(12)]
    g = WeightedDigraph.from_edges(n, edges)
    with pytest.raises(CapExceeded):
        lgv.enumerate_path_systems(g, [0] * 5, [1] * 5)


@pytest.mark.parametrize("seed", range(30))
def test_path_matrix_matches_enumeration(seed):
    rng = random.Random(seed)
    g = random_dag(rng, rng.randint(2, 7))
    for s in range(g.n):
        for t in range(g.n):
            total = sum((p.weight(g) for p in lgv.enumerate_paths(g, s, t)), Fraction(0))
            assert lgv.path_matrix(g, [s], [t])[0, 0] == total


@pytest.mark.parametrize("seed", range(30))
def test_lgv_and_permanent_random(seed):
    rng = random.Random(500 + seed)
    g, sources, sinks = random_lgv_instance(rng, max_vertices=7)
    rep = lgv.lgv_check(g, sources, sinks)
    assert rep.passed
    m = lgv.path_matrix(g, sources, sinks)
    assert rep.values["det"] == leibniz_det(m)
    assert lgv.per_check(g, sources, sinks).values["per"] == leibniz_per(m)
    non_vd = [s for s in lgv.enumerate_path_systems(g, sources, sinks) if not s.is_vertex_disjoint()]
    assert sum((s.signed_weight(g) for s in non_vd), Fraction(0)) == 0


def test_random_corpus_is_not_trivial():
    rng = random.Random(77)
    nonzero = crossing = 0
    for _ in range(40):
        g, sources, sinks = random_lgv_instance(rng)
        rep = lgv.lgv_check(g, sources, sinks)
        nonzero += rep.values["det"] != 0
        crossing += rep.values["systems"] > rep.values["vertex_disjoint_systems"]
    assert nonzero >= 10 and crossing >= 5


def test_symbolic_lattice_paths():
    # 2x2 grid of unit steps with symbolic weights; sources (0,0),(0,1) sinks (1,1),(1,2) style
    g = WeightedDigraph.from_edges(6, [(0, 1, MPoly.var("p")), (0, 3, MPoly.var("q")), (1, 2, MPoly.var("r")),
                                       (1, 4, MPoly.var("s")), (3, 4, MPoly.var("t")), (2, 5, MPoly.var("u")),
                                       (4, 5, MPoly.var("v"))])
    assert lgv.lgv_check(g, [0, 1], [4, 5]).passed
    assert lgv.per_check(g, [0, 1], [4, 5]).passed
