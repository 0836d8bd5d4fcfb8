"""Shared instance builders for the representation tests."""
import random

from pathgraph.oracle import build_oracle, gen_instance
from pathgraph.treeprep import PathSet, prepare


def small_instances(count, seed0=0, max_M=40):
    for seed in range(seed0, seed0 + count):
        rng = random.Random(seed)
        M = rng.randint(1, max_M)
        n = rng.randint(M, 3 * M)
        yield gen_instance(M, n, seed, span=None if seed % 2 else 3)


def prepared(inst):
    pt = prepare(inst.tree)
    return pt, PathSet.from_original(pt, inst.paths), build_oracle(inst.tree, inst.paths)
