import math
import random

import pytest

from pathgraph.oracle import gen_instance, path_nodes
from pathgraph.treeprep import (HeavySubPathDecomposition, PathSet, RawCliqueTree,
                                check_alpha, compute_pi, prepare, ranges)


# -- prepare ---------------------------------------------------------------

def test_prepare_singleton():
    pt = prepare(RawCliqueTree(1, (0,)))
    assert pt.heavy_paths == [(1, 1)] and pt.hpt_depth == 1


def test_prepare_path_of_five():
    pt = prepare(RawCliqueTree(5, (0, 1, 2, 3, 4)))
    assert pt.heavy_paths == [(1, 5)] and pt.hpt.M == 1


def test_prepare_running(running_pt):
    assert running_pt.heavy_paths == [(1, 4), (5, 5), (6, 6)]
    assert list(running_pt.relabel[1:]) == [1, 2, 3, 4, 5, 6]
    assert running_pt.hpt.parent[1:] == (0, 1, 1)
    assert str(running_pt.bp.bv) == "111100100100"
    assert list(running_pt.level_of_hp[1:]) == [1, 2, 2]


@pytest.mark.parametrize("parent", [(0, 2, 1), (1, 2, 3), (0, 0, 1)])
def test_prepare_rejects_bad_trees(parent):
    with pytest.raises(ValueError):
        prepare(RawCliqueTree(3, parent))


def test_hp_start_examples(running_pt):
    assert running_pt.hp_start(4) == 1
    assert running_pt.hp_start(1) == 1
    assert running_pt.hp_start(5) == 5


def brute_hpd(tree):
    """Heavy paths in original labels via subtree sizes counted by ancestor walks."""
    M, par = tree.M, tree.parent
    size = [0] * (M + 1)
    for v in range(1, M + 1):
        u = v
        while u:
            size[u] += 1
            u = par[u]
    kids = [[] for _ in range(M + 1)]
    for v in range(1, M + 1):
        if par[v]:
            kids[par[v]].append(v)
    heavy = {v: min(kids[v], key=lambda c: (-size[c], c)) for v in range(1, M + 1) if kids[v]}
    paths = []
    for v in range(1, M + 1):
        if par[v] == 0 or heavy[par[v]] != v:
            p = [v]
            while p[-1] in heavy:
                p.append(heavy[p[-1]])
            paths.append(p)
    return paths, size


@pytest.mark.parametrize("seed", range(30))
def test_prepare_matches_brute_hpd(seed):
    rng = random.Random(seed)
    M = rng.randint(1, 300)
    inst = gen_instance(M, M, seed)
    pt = prepare(inst.tree)
    paths, _ = brute_hpd(inst.tree)
    got = sorted(tuple(pt.relabel[v] for v in p) for p in paths)
    exp = sorted(tuple(range(a, b + 1)) for a, b in pt.heavy_paths)
    assert got == exp
    # pre-order: every subtree is a contiguous label range
    for v in range(1, M + 1):
        assert pt.ref.rmost[v] - v + 1 == sum(
            1 for u in range(1, M + 1) if v <= u <= pt.ref.rmost[v])
    assert pt.hpt_depth <= max(1, math.ceil(math.log2(M)) + 1)
    for v in range(1, M + 1):
        assert pt.hp_start(v) == pt.heavy_paths[pt.hp_of_node[v] - 1][0]


# -- heavy sub-paths and ranges ------------------------------------------

def test_compute_pi_examples(running_pt):
    nav = running_pt.nav
    assert compute_pi(nav, 3, 3) == HeavySubPathDecomposition(((3, 3),), None, None)
    d = compute_pi(nav, 5, 6)
    assert d.pi == ((1, 2), (5, 5), (6, 6)) and d.k == 3
    assert (d.succ11, d.succ12) == (2, 3)
    assert compute_pi(nav, 2, 4).pi == ((2, 4),)
    with pytest.raises(ValueError):
        compute_pi(nav, 4, 2)


def test_ranges_examples(running_pt):
    nav = running_pt.nav
    d = compute_pi(nav, 5, 6)
    q1 = ranges(nav, d, 1)
    assert q1.r1 is None and q1.r2 == (1, 2)
    assert q1.r3a == (3, 4) and q1.r3b is None and q1.r3c is None
    assert q1.r4 == []
    q2 = ranges(nav, d, 2)
    assert q2.r2 == (5, 5) and q2.r3 == [] and q2.r4 == []
    d1 = compute_pi(nav, 1, 1)
    q = ranges(nav, d1, 1)
    assert q.r2 == (1, 1) and q.r3 == [(2, 6)] and q.r4 == []
    with pytest.raises(IndexError):
        ranges(nav, d, 4)


def test_check_alpha_examples(running_pt):
    nav = running_pt.nav
    d = compute_pi(nav, 5, 6)
    assert check_alpha(nav, 1, (2, 4), d)
    assert not check_alpha(nav, 1, (3, 3), d)
    assert check_alpha(nav, 2, (5, 6), d)


def _first_common(par, P_nodes, s, t):
    """Node of Q closest to s that lies on P, or None."""
    for x in path_nodes(par, s, t):
        if x in P_nodes:
            return x
    return None


@pytest.mark.parametrize("seed", range(40))
def test_pi_ranges_alpha_brute_force(seed):
    rng = random.Random(seed)
    M = rng.randint(1, 40)
    n = rng.randint(M, min(200, 3 * M))
    inst = gen_instance(M, n, seed, span=None if seed % 2 else 3)
    pt = prepare(inst.tree)
    ps = PathSet.from_original(pt, inst.paths)
    par = pt.ref.par
    rl = pt.ref.rmost
    sets = [set(path_nodes(par, int(l), int(r))) for l, r in zip(ps.l, ps.r)]
    bound = 2 * math.ceil(math.log2(n)) + 1 if n > 1 else 1
    for i in range(n):
        l, r = int(ps.l[i]), int(ps.r[i])
        dec = compute_pi(pt.nav, l, r)
        assert dec == compute_pi(pt.ref, l, r)
        assert dec.k <= bound
        nodes = [x for a, b in dec.pi for x in range(a, b + 1)]
        assert sorted(nodes) == sorted(sets[i])
        for a, b in dec.pi:
            assert pt.hp_of_node[a] == pt.hp_of_node[b]
        quads = [ranges(pt.nav, dec, k) for k in range(1, dec.k + 1)]
        for k, q in enumerate(quads, 1):
            pts = [x for lo, hi in q.intervals() for x in range(lo, hi + 1)]
            assert len(pts) == len(set(pts))
            a = dec.pi[k - 1][0]
            cover = set(range(1 if k == 1 else a, rl[a] + 1))
            for s in [dec.succ(k)] + ([dec.succ12] if k == 1 else []):
                if s:
                    az = dec.pi[s - 1][0]
                    cover -= set(range(az, rl[az] + 1))
            assert set(pts) == cover
        for j in range(n):
            s, t = int(ps.l[j]), int(ps.r[j])
            hits = [k for k in range(1, dec.k + 1) if check_alpha(pt.nav, k, (s, t), dec, quads[k - 1])]
            first = _first_common(par, sets[i], s, t)
            if first is None:
                assert hits == []
            else:
                assert hits == [k for k, (a, b) in enumerate(dec.pi, 1) if a <= first <= b]


def test_pathset_sorting_and_permutation(running_pt):
    ps = PathSet.from_original(running_pt, [(6, 5), (1, 1), (4, 2), (1, 1)])
    assert ps.l.tolist() == [1, 1, 2, 5] and ps.r.tolist() == [1, 1, 4, 6]
    assert ps.input_index[1:].tolist() == [2, 4, 3, 1]
    assert ps.sorted_index[1:].tolist() == [4, 1, 3, 2]
    with pytest.raises(ValueError):
        PathSet.from_original(running_pt, [(1, 7)])
