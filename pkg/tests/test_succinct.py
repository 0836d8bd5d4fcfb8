import math
from collections import Counter

import numpy as np
import pytest

from pathgraph.succinct_rep import SuccinctPathGraph, degree_threshold
from pathgraph.treeprep import PathSet, RawCliqueTree, compute_pi, prepare

from helpers import prepared, small_instances


@pytest.fixture
def g(running_pt, running_ps):
    return SuccinctPathGraph.build(running_pt, running_ps)


def test_build_running(g):
    assert g.F.to_list() == [1, 2, 5]
    assert g.J.to_list() == [1, 4, 6]
    assert g.S.points() == [(1, 1), (2, 2), (3, 3)]


def test_build_singleton():
    pt = prepare(RawCliqueTree(1, (0,)))
    g = SuccinctPathGraph.build(pt, PathSet.from_original(pt, [(1, 1)]))
    assert g.S.points() == [(1, 1)] and g.D.to_numpy().tolist() == [0]


def test_build_ties():
    pt = prepare(RawCliqueTree(3, (0, 1, 2)))
    g = SuccinctPathGraph.build(pt, PathSet.from_original(pt, [(1, 2), (1, 3)]))
    assert g.F.to_list() == [1, 1]
    assert g.S.points() == [(1, 1), (2, 2)]


def test_build_rejects_bad_endpoints(running_pt):
    ps = PathSet(np.array([2]), np.array([1]), np.array([0, 1]), np.array([0, 1]))
    with pytest.raises(ValueError):
        SuccinctPathGraph.build(running_pt, ps)


def test_path_count_and_pathep(g):
    assert (g.getPathCount(1), g.getPathCount(3), g.getPathCount(5)) == (1, 0, 1)
    assert g.pathep(2) == (2, 4) and g.pathep(1) == (1, 1) and g.pathep(3) == (5, 6)
    with pytest.raises(IndexError):
        g.pathep(4)


def test_maprange(g):
    assert g.maprange_F(2, 5) == (2, 3)
    lo, hi = g.maprange_F(3, 4)
    assert (lo, hi) == (3, 2)
    assert g.maprange_F(1, 1) == (1, 1)
    assert g.maprange_J(2, 6) == (2, 3)
    assert g.maprange_J(1, 1) == (1, 1)
    assert g.maprange_J(5, 5) == (3, 2)


def test_compute_beta_running(g):
    assert sorted(g.compute_beta(3, 1)) == [1, 2]
    assert g.compute_beta(3, 2) == [3]
    assert g.compute_beta(3, 3) == []


def test_queries_running(g):
    assert g.adjacency(3, 2) and not g.adjacency(2, 1) and g.adjacency(1, 1)
    assert g.neighbourhood(3) == [1, 2] and g.neighbourhood(1) == [3]
    assert g.degree(3) == 2 and g.degree(2) == 1


def test_isolated_path():
    pt = prepare(RawCliqueTree(2, (0, 1)))
    g = SuccinctPathGraph.build(pt, PathSet.from_original(pt, [(1, 1), (2, 2)]))
    assert g.neighbourhood(1) == [] and g.degree(2) == 0


def test_space_report(g):
    rep = g.space_report()
    assert rep["S"]["core"] >= g.n * math.ceil(math.log2(g.n))
    assert rep["D"]["core"] == g.n
    assert rep["BP"]["core"] == 2 * g.M
    assert rep["F"]["core"] == g.n + g.M
    assert rep == g.space_report()


def test_threshold():
    assert degree_threshold(1) == 0 and degree_threshold(8) == 3 and degree_threshold(9) == 4


@pytest.mark.parametrize("inst", list(small_instances(40)), ids=lambda i: f"seed{i.seed}")
def test_oracle_equivalence(inst):
    pt, ps, orc = prepared(inst)
    g = SuccinctPathGraph.build(pt, ps)
    n = ps.n
    bound = 2 * math.ceil(math.log2(n)) + 1 if n > 1 else 1
    for i in range(1, n + 1):
        si = g.to_sorted(i)
        raw = g.neighbourhood_raw(si)
        assert len(raw) == len(set(raw)) and raw.count(si) == 1
        got = sorted(g.to_input(x) for x in g.neighbourhood(si))
        assert got == orc.neighbours(i)
        assert g.degree(si) == len(got) == g.degree_count(si) == g.degree_enum(si)
        assert bool(g.D.access(si)) == (len(got) > g.threshold)
        for j in range(1, n + 1):
            st = Counter()
            sj = g.to_sorted(j)
            assert g.adjacency(si, sj, st) == orc.adjacent(i, j) == g.adjacency(sj, si)
            assert st["check_alpha"] <= compute_pi(g.nav, *g.pathep(si)).k <= bound


def test_prep_cache_is_bounded(g):
    for i in (1, 2, 3, 1):
        g.prep(i)
    info = g._prep.cache_info()
    assert info.maxsize == 1024 and info.hits >= 1
