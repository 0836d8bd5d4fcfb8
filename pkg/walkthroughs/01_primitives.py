# %% [markdown]
# # Succinct primitives
#
# Bit vectors with rank/select, unary-gap sequences, balanced-parentheses
# trees and a wavelet tree over a permutation. Run with
# `python walkthroughs/01_primitives.py` or open as a percent-format notebook.

# %%
import numpy as np

from pathgraph.bitseq import BitVector, BPTree, NonDecSeq, bp_from_parents
from pathgraph.wavelet import WaveletTree

# %% [markdown]
# ## Rank and select
# Positions are 1-based; select returns 0 when the requested bit does not exist.

# %%
B = BitVector("110100")
print("rank1(3) =", B.rank1(3), " select1(3) =", B.select1(3), " select1(4) =", B.select1(4))

# %% [markdown]
# ## Non-decreasing sequences
# Each value adds (gap) ones and a closing zero, so (1, 2, 5) becomes 10101110.

# %%
S = NonDecSeq([1, 2, 5])
print(S.bits, [S.access(i) for i in (1, 2, 3)], "values <= 4:", S.count_le(4))

# %% [markdown]
# ## Balanced parentheses
# A six-node tree: 1 -> (2, 6), 2 -> (3, 5), 3 -> 4, labelled in pre-order.

# %%
T = BPTree(bp_from_parents([0, 0, 1, 2, 3, 2, 1]))
print("BP bits:", T.bv)
print("lca(4,5) =", T.lca(4, 5), " parent(4) =", T.parent(4), " rmost_leaf(2) =", T.rmost_leaf(2))

# %% [markdown]
# ## Wavelet tree
# Range counting and reporting on a random permutation.

# %%
ys = np.random.default_rng(0).permutation(16) + 1
W = WaveletTree(ys)
print("points:", list(zip(range(1, 17), ys.tolist())))
print("x in [3, 12], y in [1, 8]:", W.search((3, 12), (1, 8)), "count", W.count((3, 12), (1, 8)))
print("space:", W.space_bits())
