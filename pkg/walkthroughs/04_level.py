# %% [markdown]
# # The level-decomposed representation
#
# Per-level interval graphs plus lookup tables: adjacency touches at most
# four vertex pairs, degree is a table read.

# %%
from collections import Counter

from pathgraph.level_rep import LevelStructure
from pathgraph.oracle import build_oracle, gen_instance
from pathgraph.treeprep import PathSet, prepare

inst = gen_instance(200, 500, seed=7)
pt = prepare(inst.tree)
ps = PathSet.from_original(pt, inst.paths)
ls = LevelStructure.build(pt, ps)
oracle = build_oracle(inst.tree, inst.paths)
print("levels:", ls.K, " vertices per level:", [len(ig) for ig in ls.IT])

# %%
i = ls.to_sorted(17)
print("level span of path:", ls.R[i - 1].tolist(), " vertices:",
      [ls.getVertices(i, l) for l in range(ls.R[i - 1][0], ls.R[i - 1][1] + 1)])

st = Counter()
for j in range(1, ls.n + 1):
    ls.adjacency(i, j, st)
print("per adjacency: probes", st["ig_probes"] / ls.n, " reads", st["array_reads"] / ls.n)

st = Counter()
nb = ls.neighbourhood(i, st)
print("degree", len(nb), " touches", st["touches"])
print("matches oracle:", sorted(ls.to_input(x) for x in nb) == oracle.neighbours(17))

# %%
print(ls.space_report())
