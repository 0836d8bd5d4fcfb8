"""Build both representations for an instance and compare them with the oracle."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .level_rep import LevelStructure
from .oracle import Instance, OracleGraph, build_oracle
from .succinct_rep import SuccinctPathGraph
from .treeprep import PathSet, prepare


@dataclass
class Built:
    succinct: SuccinctPathGraph
    level: LevelStructure
    oracle: OracleGraph


def build_all(inst: Instance) -> Built:
    pt = prepare(inst.tree)
    ps = PathSet.from_original(pt, inst.paths)
    return Built(SuccinctPathGraph.build(pt, ps), LevelStructure.build(pt, ps),
                 build_oracle(inst.tree, inst.paths))


def query_input(rep, kind: str, *idx: int):
    """Run a query addressed by input indices; neighbour lists come back sorted."""
    s = [rep.to_sorted(i) for i in idx]
    if kind == "adj":
        return rep.adjacency(*s)
    if kind == "nbr":
        return sorted(rep.to_input(x) for x in rep.neighbourhood(s[0]))
    if kind == "deg":
        return rep.degree(s[0])
    raise ValueError(f"unknown query {kind!r}")


def compare(reps: dict, oracle: OracleGraph, *, pair_cutoff: int = 200,
            sampled_pairs: int = 100_000, seed: int = 0, limit: int = 20) -> list:
    """Mismatch descriptions (at most ``limit``) of every rep against the oracle.

    Degree and neighbourhood are checked for every path.  Adjacency is checked
    for all pairs when n <= ``pair_cutoff`` and for ``sampled_pairs`` random
    pairs otherwise.
    """
    n = oracle.n
    bad = []

    def note(name, q, exp, got):
        if len(bad) < limit:
            bad.append(f"{name}: {q} expected {exp} got {got}")

    for name, rep in reps.items():
        for i in range(1, n + 1):
            exp = sorted(oracle.neighbours(i))
            got = query_input(rep, "nbr", i)
            if got != exp:
                note(name, f"nbr {i}", exp, got)
            d = query_input(rep, "deg", i)
            if d != len(exp):
                note(name, f"deg {i}", len(exp), d)
        if n <= pair_cutoff:
            pairs = ((i, j) for i in range(1, n + 1) for j in range(1, n + 1))
        else:
            rng = random.Random(seed)
            pairs = sorted((rng.randint(1, n), rng.randint(1, n)) for _ in range(sampled_pairs))
        for i, j in pairs:
            exp = oracle.adjacent(i, j)
            got = query_input(rep, "adj", i, j)
            if got != exp:
                note(name, f"adj {i} {j}", exp, got)
    return bad
