# %% [markdown]
# # The succinct representation
#
# Build from a generated instance and compare its answers with the
# brute-force intersection graph.

# %%
from collections import Counter

from pathgraph.oracle import build_oracle, gen_instance
from pathgraph.succinct_rep import SuccinctPathGraph
from pathgraph.treeprep import PathSet, prepare

inst = gen_instance(200, 500, seed=7)
pt = prepare(inst.tree)
ps = PathSet.from_original(pt, inst.paths)
g = SuccinctPathGraph.build(pt, ps)
oracle = build_oracle(inst.tree, inst.paths)

# %% [markdown]
# Paths are numbered in sorted order internally; `to_sorted` and `to_input`
# translate to and from input positions.

# %%
i = 17
s = g.to_sorted(i)
mine = sorted(g.to_input(x) for x in g.neighbourhood(s))
print("neighbours of input path", i, ":", mine)
print("matches oracle:", mine == oracle.neighbours(i), " degree:", g.degree(s))

# %% [markdown]
# Operation counters: check_alpha calls per adjacency and wavelet nodes visited.

# %%
st = Counter()
for j in range(1, 101):
    g.adjacency(s, g.to_sorted(j), st)
g.neighbourhood(s, st)
print(dict(st))

# %%
rep = g.space_report()
print({k: v["total"] if isinstance(v, dict) else v for k, v in rep.items()})
