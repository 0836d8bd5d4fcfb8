# %% [markdown]
# # Heavy paths and sub-path ranges
#
# A path (l, r) is cut into pieces that each lie on one heavy path. For each
# piece we get label ranges that decide, from another path's endpoints
# alone, whether that path first touches this piece.

# %%
from pathgraph.oracle import gen_instance, path_nodes
from pathgraph.treeprep import PathSet, RawCliqueTree, check_alpha, compute_pi, prepare, ranges

# %%
pt = prepare(RawCliqueTree(6, (0, 0, 1, 2, 3, 2, 1)))
print("heavy paths:", pt.heavy_paths, " levels:", pt.level_of_hp[1:].tolist())

dec = compute_pi(pt.nav, 5, 6)
print("pieces of (5,6):", dec.pi, " successors:", dec.succ11, dec.succ12)
for k in range(1, dec.k + 1):
    print(" ", k, ranges(pt.nav, dec, k))

# %% [markdown]
# Path (2, 4) meets (5, 6) first at node 2, inside the first piece; (3, 3) misses it.

# %%
print(check_alpha(pt.nav, 1, (2, 4), dec), check_alpha(pt.nav, 1, (3, 3), dec))

# %% [markdown]
# ## On a generated instance
# Count how many pieces paths split into, against the 2*ceil(log2 n)+1 bound.

# %%
import math
from collections import Counter

inst = gen_instance(300, 900, seed=1)
pt = prepare(inst.tree)
ps = PathSet.from_original(pt, inst.paths)
ks = Counter(compute_pi(pt.nav, l, r).k for l, r in zip(ps.l.tolist(), ps.r.tolist()))
print("pieces per path:", dict(sorted(ks.items())), " bound:", 2 * math.ceil(math.log2(ps.n)) + 1)
print("heavy path tree levels:", pt.K)
