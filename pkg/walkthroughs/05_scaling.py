# %% [markdown]
# # Space and operation counts as n grows
#
# The same table `pathgraph bench` prints. Instances use M = n/2 tree nodes
# and paths that walk at most four tree edges.

# %%
from pathgraph.cli import bench_row

rows = [bench_row(1 << e, seed=0, mode=m, queries=100)
        for m in ("succinct", "level") for e in (10, 11, 12, 13)]
print(f"{'mode':<9}{'n':>7}{'bits':>10}{'ratio':>8}{'adj_ops':>9}{'nbr_ops':>9}")
for r in rows:
    print(f"{r['mode']:<9}{r['n']:>7}{r['bits']:>10}{r['ratio']:>8.3f}"
          f"{r['adj_ops']:>9.2f}{r['nbr_ops']:>9.2f}")

# %% [markdown]
# The succinct ratio is bits / (n ceil(log2 n)); the level ratio is
# bits / (n ceil(log2 n)^2). The first drifts towards 1 plus directory
# overhead, the second falls because this workload's paths span few levels.
