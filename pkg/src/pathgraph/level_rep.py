"""Level-decomposed path-graph representation with constant-time adjacency.

Every heavy path sits at a level of the heavy path tree (root level 1).  A
path P spans a contiguous run of levels and meets at most two heavy paths
per level, so it owns at most two vertices in that level's interval graph
U_l.  Intervals use global pre-order labels: heavy paths are disjoint label
intervals, so pieces on different heavy paths of a level never overlap and
one interval graph per level suffices.

Tables (path indices are sorted positions, as in the succinct structure):

* ``F``: node -> heavy path, ``L``: heavy path -> level
* ``R``: path -> (first level, last level)
* ``PIT``: path, level -> up to two vertex labels, ordered by heavy path start
* ``E``: level, vertex label -> path
* ``A``: node -> paths whose lca is that node
* ``H``: heavy path c -> groups of paths entering c through its light edge,
  keyed by the light child heavy path they leave c through (0 when they end
  inside c).  Only non-empty groups are stored.
* ``deg``: path -> degree
"""
from __future__ import annotations

from collections import Counter

import numpy as np

from ._frame import Reader, Writer, width
from .bitseq import BPTree
from .interval_rep import IntervalGraph
from .treeprep import PathSet, PreparedTree, compute_pi


def _csr(buckets) -> tuple:
    ptr = np.zeros(len(buckets) + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(b) for b in buckets])
    flat = np.fromiter((x for b in buckets for x in b), dtype=np.int64, count=int(ptr[-1]))
    return ptr, flat


def _branches(dec) -> tuple:
    """Sub-paths below pi_1 on each side, each list ordered top-down."""
    split = dec.succ12 - 1 if dec.succ12 else dec.k
    return dec.pi[1:split], dec.pi[split:]


class LevelStructure:
    MAGIC = b"LVST"

    def __init__(self, bp, F, L, ends, R, pit_ptr, pit, IT, E, A, H, deg, input_perm):
        self.bp = bp
        self.M = bp.M
        self.F = np.asarray(F, dtype=np.int64)
        self.L = np.asarray(L, dtype=np.int64)
        self.ends = np.asarray(ends, dtype=np.int64).reshape(-1, 2)
        self.n = len(self.ends)
        self.R = np.asarray(R, dtype=np.int64).reshape(-1, 2)
        self.pit_ptr = np.asarray(pit_ptr, dtype=np.int64)
        self.pit = np.asarray(pit, dtype=np.int64).reshape(-1, 2)
        self.IT = list(IT)
        self.K = len(self.IT)
        self.E = [np.asarray(e, dtype=np.int64) for e in E]
        self.A_ptr, self.A = A
        self.H_ptr, self.H_key, self.H_grp, self.H_paths = H
        self.deg = None if deg is None else np.asarray(deg, dtype=np.int64)
        self.input_perm = np.asarray(input_perm, dtype=np.int64)
        self.sorted_of_input = np.zeros(self.n + 1, dtype=np.int64)
        self.sorted_of_input[self.input_perm[1:]] = np.arange(1, self.n + 1)
        self._py()

    def _py(self) -> None:
        # list views for the query loops
        self._F, self._L = self.F.tolist(), self.L.tolist()
        self._ends, self._R = self.ends.tolist(), self.R.tolist()
        self._pit_ptr, self._pit = self.pit_ptr.tolist(), self.pit.tolist()
        self._E = [e.tolist() for e in self.E]
        self._A_ptr, self._A = self.A_ptr.tolist(), self.A.tolist()
        self._H_ptr, self._H_key = self.H_ptr.tolist(), self.H_key.tolist()
        self._H_grp, self._H_paths = self.H_grp.tolist(), self.H_paths.tolist()
        # heavy path tree parents; heavy path h starts at the first node with F = h
        starts = np.searchsorted(self.F[1:], np.arange(len(self.L)), side="left") + 1
        self._hpt_parent = [0, 0] + [self._F[self.bp.parent(int(a))] for a in starts[2:]]
        self._deg = None if self.deg is None else self.deg.tolist()

    # -- construction ------------------------------------------------------
    @classmethod
    def build(cls, pt: PreparedTree, ps: PathSet) -> "LevelStructure":
        n, M = ps.n, pt.M
        if n and (ps.l.min() < 1 or ps.r.max() > M or np.any(ps.l > ps.r)):
            raise ValueError("path endpoints must satisfy 1 <= l <= r <= M")
        hp, lev = pt.hp_of_node, pt.level_of_hp
        K = pt.K
        counters = [0] * (K + 1)
        level_iv = [[] for _ in range(K + 1)]
        level_path = [[] for _ in range(K + 1)]
        R = np.zeros((n, 2), dtype=np.int64)
        pit_ptr = np.zeros(n + 1, dtype=np.int64)
        pit = []
        A = [[] for _ in range(M + 1)]
        H = [dict() for _ in range(len(pt.heavy_paths) + 1)]
        for idx in range(n):
            i = idx + 1
            dec = compute_pi(pt.ref, int(ps.l[idx]), int(ps.r[idx]))
            A[dec.pi[0][0]].append(i)
            by_level = {}
            for a, b in dec.pi:
                by_level.setdefault(int(lev[hp[a]]), []).append((a, b))
            lo, hi = min(by_level), max(by_level)
            if sorted(by_level) != list(range(lo, hi + 1)):
                raise AssertionError("path levels are not contiguous")
            R[idx] = lo, hi
            for l in range(lo, hi + 1):
                labels = [0, 0]
                for slot, (a, b) in enumerate(sorted(by_level[l])):
                    counters[l] += 1
                    labels[slot] = counters[l]
                    level_iv[l].append((a, b))
                    level_path[l].append(i)
                pit.append(labels)
            pit_ptr[i] = len(pit)
            for branch in _branches(dec):
                hps = [int(hp[a]) for a, _ in branch]
                for c, d in zip(hps, hps[1:] + [0]):
                    H[c].setdefault(d, []).append(i)
        for l in range(1, K + 1):
            if counters[l] > 2 * n:
                raise AssertionError(f"level {l} has {counters[l]} vertices > 2n")
        IT = [IntervalGraph(level_iv[l], M) for l in range(1, K + 1)]
        E = [np.array([0] + level_path[l], dtype=np.int64) for l in range(1, K + 1)]
        # H as CSR: heavy path -> groups (key, start in H_paths)
        H_ptr = np.zeros(len(H) + 1, dtype=np.int64)
        keys, grp, flat = [], [0], []
        for c, groups in enumerate(H):
            for d in sorted(groups):
                keys.append(d)
                flat.extend(groups[d])
                grp.append(len(flat))
            H_ptr[c + 1] = len(keys)
        ls = cls(pt.bp, hp, lev, np.stack([ps.l, ps.r], axis=1) if n else np.zeros((0, 2)),
                 R, pit_ptr, pit if pit else np.zeros((0, 2)), IT, E, _csr(A),
                 (H_ptr, np.array(keys, dtype=np.int64), np.array(grp, dtype=np.int64),
                  np.array(flat, dtype=np.int64)),
                 None, ps.input_index)
        ls.deg = np.array([0] + [len(ls.neighbourhood(i)) for i in range(1, n + 1)],
                          dtype=np.int64)
        ls._deg = ls.deg.tolist()
        return ls

    # -- index plumbing ----------------------------------------------------
    def _check(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexError(f"path index {i} outside [1, {self.n}]")

    def to_sorted(self, i_input: int) -> int:
        if not 1 <= i_input <= self.n:
            raise IndexError(f"path index {i_input} outside [1, {self.n}]")
        return int(self.sorted_of_input[i_input])

    def to_input(self, i: int) -> int:
        return int(self.input_perm[i])

    # -- table functions ---------------------------------------------------
    def getMinLevel(self, i: int, j: int) -> int:
        """First level shared by the level spans of paths i and j, 0 if none."""
        ai, bi = self._R[i - 1]
        aj, bj = self._R[j - 1]
        lo = ai if ai > aj else aj
        return lo if lo <= (bi if bi < bj else bj) else 0

    def getVertices(self, i: int, l: int) -> tuple:
        """Vertex labels of path i in U_l (0 where absent)."""
        a, b = self._R[i - 1]
        if not a <= l <= b:
            return 0, 0
        v1, v2 = self._pit[self._pit_ptr[i - 1] + l - a]
        return v1, v2

    def getDistinctPaths(self, w1: int, w2: int, w3: int | None = None) -> list:
        """Paths using the light edge {w1, w2} of the heavy path tree but not {w2, w3}."""
        if not 2 <= w2 < len(self._L) or self._hpt_parent[w2] != w1:
            raise ValueError(f"({w1}, {w2}) is not a light edge of the heavy path tree")
        out = []
        keys, grp, paths = self._H_key, self._H_grp, self._H_paths
        for g in range(self._H_ptr[w2], self._H_ptr[w2 + 1]):
            if w3 is not None and keys[g] == w3:
                continue
            out.extend(paths[grp[g]:grp[g + 1]])
        return out

    # -- queries -----------------------------------------------------------
    def adjacency(self, i: int, j: int, stats: Counter | None = None) -> bool:
        self._check(i)
        self._check(j)
        l = self.getMinLevel(i, j)
        if stats is not None:
            stats["array_reads"] += 2
        if l == 0:
            return False
        u = self.getVertices(i, l)
        v = self.getVertices(j, l)
        if stats is not None:
            stats["array_reads"] += 2
        ig = self.IT[l - 1]
        for x in u:
            if not x:
                continue
            for y in v:
                if not y:
                    continue
                if stats is not None:
                    stats["ig_probes"] += 1
                if ig.adjacentIG(x, y):
                    return True
        return False

    def neighbourhood(self, i: int, stats: Counter | None = None) -> list:
        self._check(i)
        l, r = self._ends[i - 1]
        p = self.bp.lca(l, r)
        F, A, A_ptr = self._F, self._A, self._A_ptr
        parent = self.bp.parent
        cand = []
        steps = 0
        for x in (l, r):
            prev = None
            while x != p:
                steps += 1
                cand.extend(A[A_ptr[x]:A_ptr[x + 1]])
                px = parent(x)
                if F[px] != F[x]:
                    cand.extend(self.getDistinctPaths(F[px], F[x], prev))
                    prev = F[x]
                x = px
        top = self._R[i - 1][0]
        v1 = self.getVertices(i, top)[0]
        E = self._E[top - 1]
        cand.extend(E[u] for u in self.IT[top - 1].neighbourhoodIG(v1, stats))
        if stats is not None:
            stats["candidates"] += len(cand)
            stats["walk_steps"] += steps
            stats["touches"] += len(cand) + steps
        out = set(cand)
        out.discard(i)
        return sorted(out)

    def degree(self, i: int) -> int:
        self._check(i)
        return self._deg[i]

    # -- space and serialization --------------------------------------------
    def space_report(self) -> dict:
        n, M = self.n, self.M
        wn, wM = width(n), width(M)
        wH, wK = width(len(self.L) - 1), width(self.K)
        rep = {
            "BP": sum(self.bp.space_bits().values()),
            "F": M * wH,
            "L": (len(self.L) - 1) * wK,
            "ends": 2 * n * wM,
            "R": 2 * n * wK,
            "PIT": self.pit.size * width(2 * n) + n * width(max(int(self.pit_ptr[-1]), 1)),
            "E": sum((len(e) - 1) * wn for e in self.E),
            "IT": sum(sum(ig.space_bits().values()) for ig in self.IT),
            "A": self.A.size * wn + (M + 1) * width(max(self.A.size, 1)),
            "H": (self.H_paths.size * wn + self.H_key.size * (wH + width(max(self.H_paths.size, 1)))
                  + len(self.H_ptr) * width(max(self.H_key.size, 1))),
            "deg": n * wn,
        }
        rep["total"] = sum(rep.values())
        rep["n"], rep["M"], rep["K"] = n, M, self.K
        rep["input_perm"] = n * wn
        return rep

    def to_bytes(self) -> bytes:
        w = Writer(self.MAGIC)
        w.u64(self.n)
        w.u64(self.M)
        w.u64(self.K)
        w.blob(self.bp.to_bytes())
        for arr in (self.F, self.L, self.ends.ravel(), self.R.ravel(), self.pit_ptr,
                    self.pit.ravel(), self.A_ptr, self.A, self.H_ptr, self.H_key,
                    self.H_grp, self.H_paths, self.deg, self.input_perm[1:]):
            w.array(arr)
        for ig, e in zip(self.IT, self.E):
            w.blob(ig.to_bytes())
            w.array(e)
        return w.getvalue()

    @classmethod
    def from_bytes(cls, buf: bytes) -> "LevelStructure":
        r = Reader(buf, cls.MAGIC)
        n, M, K = r.u64(), r.u64(), r.u64()
        bp = BPTree.from_bytes(r.blob())
        (F, L, ends, R, pit_ptr, pit, A_ptr, A, H_ptr, H_key, H_grp, H_paths,
         deg, perm) = (r.array() for _ in range(14))
        IT, E = [], []
        for _ in range(K):
            IT.append(IntervalGraph.from_bytes(r.blob()))
            E.append(r.array())
        r.done()
        if bp.M != M or ends.size != 2 * n or deg.size != n + 1 or perm.size != n:
            raise ValueError("section sizes disagree with the header")
        if n and sorted(perm.tolist()) != list(range(1, n + 1)):
            raise ValueError("input permutation is not a permutation")
        return cls(bp, F, L, ends, R, pit_ptr, pit, IT, E, (A_ptr, A),
                   (H_ptr, H_key, H_grp, H_paths), deg, np.concatenate([[0], perm]))
