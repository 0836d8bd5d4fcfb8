"""Ground-truth helpers: these must be right before anything else is trusted."""
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pathgraph.oracle import (Instance, ParseError, build_oracle, format_instance,
                              gen_instance, intersect_naive, naive_lca, parse_instance,
                              path_nodes, validate_instance)
from pathgraph.treeprep import RawCliqueTree

from conftest import RUNNING_PARENT


def test_path_nodes_running_tree():
    assert path_nodes(RUNNING_PARENT, 5, 6) == [5, 2, 1, 6]
    assert path_nodes(RUNNING_PARENT, 4, 4) == [4]
    assert path_nodes(RUNNING_PARENT, 4, 5) == [4, 3, 2, 5]


def test_naive_lca_running_tree():
    assert naive_lca(RUNNING_PARENT, 4, 5) == 2
    assert naive_lca(RUNNING_PARENT, 5, 6) == 1
    assert naive_lca(RUNNING_PARENT, 3, 3) == 3


def test_intersect_naive(running_tree):
    assert intersect_naive(running_tree, (5, 6), (2, 4))
    assert not intersect_naive(running_tree, (1, 1), (2, 4))
    assert intersect_naive(running_tree, (5, 6), (5, 6))


def test_build_oracle_running(running_instance):
    g = build_oracle(running_instance.tree, running_instance.paths)
    assert g.edges == {(1, 3), (2, 3)}
    assert g.neighbours(3) == [1, 2]
    assert g.degree(2) == 1


def test_build_oracle_small_cases():
    assert build_oracle(RawCliqueTree(1, (0,)), [(1, 1)]).edges == set()
    assert build_oracle(RawCliqueTree(2, (0, 1)), [(1, 1), (2, 2)]).edges == set()


def test_validate_running_instance_not_valid(running_instance):
    rep = validate_instance(running_instance)
    assert not rep.valid
    # 3, 4, 6 are never an lca; so is 5, whose only path (5, 6) has lca 1
    assert {3, 4, 6} <= set(rep.non_lca)
    assert set(rep.non_lca) == {3, 4, 5, 6}


def test_validate_running_instance_completed(running_tree):
    paths = [(1, 1), (2, 4), (5, 6), (3, 3), (4, 4), (5, 5), (6, 6)]
    assert validate_instance(Instance(running_tree, paths)).valid


def test_validate_flags_non_maximal():
    # node 2 sees only the path that also covers node 1
    rep = validate_instance(Instance(RawCliqueTree(2, (0, 1)), [(1, 2), (1, 1)]))
    assert not rep.valid and (2, 1) in rep.non_maximal


def test_validate_flags_uncovered_and_bad_endpoints():
    rep = validate_instance(Instance(RawCliqueTree(3, (0, 1, 1)), [(2, 2), (3, 3)]))
    assert 1 in rep.uncovered
    rep = validate_instance(Instance(RawCliqueTree(2, (0, 1)), [(1, 5)]))
    assert rep.bad_endpoints == [1] and not rep.valid


def brute_valid(inst):
    """Validity straight from the definitions with explicit node sets."""
    par = inst.tree.parent
    M = inst.M
    sets = [set(path_nodes(par, u, v)) for u, v in inst.paths]
    through = {x: {k for k, s in enumerate(sets) if x in s} for x in range(1, M + 1)}
    lcas = {naive_lca(par, u, v) for u, v in inst.paths}
    if any(not through[x] for x in through) or lcas != set(range(1, M + 1)):
        return False
    for c in range(2, M + 1):
        p = par[c]
        if through[p] <= through[c] or through[c] <= through[p]:
            return False
    return True


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 30), st.integers(0, 40), st.integers(0, 10**6), st.sampled_from([None, 2]))
def test_gen_instance_valid(M, extra, seed, span):
    inst = gen_instance(M, M + extra, seed, span=span)
    assert inst.n == M + extra and inst.M == M
    assert inst.valid and brute_valid(inst)
    assert inst.tree.parent[1] == 0


def test_gen_examples():
    one = gen_instance(1, 1, 5)
    assert one.paths == [(1, 1)]
    assert gen_instance(6, 7, 42).valid
    a, b = gen_instance(20, 50, 7), gen_instance(20, 50, 7)
    assert a.paths == b.paths and a.tree == b.tree
    with pytest.raises(ValueError):
        gen_instance(10, 5, 0)


def test_brute_valid_agrees_with_validator():
    # every instance on a 4-node path tree with up to 3 paths
    tree = RawCliqueTree(4, (0, 1, 2, 3))
    pairs = [(u, v) for u in range(1, 5) for v in range(u, 5)]
    for k in range(1, 4):
        for paths in itertools.combinations(pairs, k):
            inst = Instance(tree, list(paths))
            assert validate_instance(inst).valid == brute_valid(inst)


def test_text_format_round_trip():
    inst = gen_instance(15, 30, 3)
    back = parse_instance(format_instance(inst))
    assert back.tree == inst.tree and back.paths == inst.paths


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("3 1\n", 2),
    ("3 1\n0 1\n1 1\n", 2),
    ("3 1\n0 1 1\n", 3),
    ("3 1\n0 1 1\n1 x\n", 3),
    ("3 1\n0 1 1\n1 4\n", 3),
    ("3 1\n0 0 1\n1 1\n", 2),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as exc:
        parse_instance(text)
    assert exc.value.line == line
