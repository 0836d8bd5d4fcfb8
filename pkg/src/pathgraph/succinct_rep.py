"""Succinct path-graph representation built on a BP tree and a wavelet tree.

Paths are numbered 1..n in sorted order of (l, r, input index).  F holds
the sorted start nodes, J the sorted end nodes, and the wavelet tree S maps
path i to the rank j_i of its end node inside J, so (l_i, r_i) is recovered
as (F[i], J[S[i]]).  Every query works from these pieces and the BP bits.

Neighbours of P are gathered sub-path by sub-path: Q lands in the result
for pi_i exactly when the first node of Q on P lies in pi_i.  Each case is
one or more axis-parallel rectangles over (i, j_i):

* s in [1, a_1 - 1] and t inside the subtree of a_1
* s in [a_i, b_i], any t
* s in the subtree of a node c hanging off pi_i (inside R3 or R4) and t
  past the last label of that subtree, so the lca of Q is above c.

The third case yields one rectangle per hanging subtree ``c`` inside the
R3/R4 intervals.  Those intervals are unions of consecutive whole subtrees,
so they are walked with ``c = rmost_leaf(c) + 1``.
"""
from __future__ import annotations

import math
from collections import Counter
from functools import lru_cache

import numpy as np

from ._frame import Reader, Writer
from .bitseq import BitVector, BPTree, NonDecSeq
from .treeprep import (BPNav, PathSet, PreparedTree, check_alpha, compute_pi,
                       ranges)
from .wavelet import WaveletTree

PREP_CACHE = 1024


def degree_threshold(n: int) -> int:
    """Paths with more neighbours than this get D = 1."""
    return math.ceil(math.log2(n)) if n > 1 else 0


class SuccinctPathGraph:
    MAGIC = b"SPGR"

    def __init__(self, bp: BPTree, F: NonDecSeq, J: NonDecSeq, S: WaveletTree,
                 D: BitVector | None, input_perm: np.ndarray, threshold: int):
        self.bp = bp
        self.nav = BPNav(bp)
        self.M = bp.M
        self.F, self.J, self.S = F, J, S
        self.n = len(F)
        self.input_perm = np.asarray(input_perm, dtype=np.int64)  # sorted -> input, [0] unused
        self.sorted_of_input = np.zeros(self.n + 1, dtype=np.int64)
        self.sorted_of_input[self.input_perm[1:]] = np.arange(1, self.n + 1)
        self.threshold = threshold
        self.D = D
        self._prep = lru_cache(maxsize=PREP_CACHE)(self._prep_uncached)

    # -- construction ------------------------------------------------------
    @classmethod
    def build(cls, pt: PreparedTree, ps: PathSet) -> "SuccinctPathGraph":
        n = ps.n
        if n and (ps.l.min() < 1 or ps.r.max() > pt.M or np.any(ps.l > ps.r)):
            raise ValueError("path endpoints must satisfy 1 <= l <= r <= M")
        F = NonDecSeq(ps.l, universe=pt.M)
        order = np.argsort(ps.r, kind="stable")
        J = NonDecSeq(ps.r[order], universe=pt.M)
        alias = np.empty(n, dtype=np.int64)
        alias[order] = np.arange(1, n + 1)
        g = cls(pt.bp, F, J, WaveletTree(alias), None, ps.input_index,
                degree_threshold(n))
        degs = np.array([g.degree_count(i) for i in range(1, n + 1)], dtype=np.int64)
        g.D = BitVector((degs > g.threshold).astype(np.uint8))
        return g

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

    # -- primitives --------------------------------------------------------
    def getPathCount(self, d: int) -> int:
        """Number of paths starting at node d."""
        return self.F.count_le(d) - self.F.count_lt(d)

    def pathep(self, i: int) -> tuple:
        self._check(i)
        return self.F.access(i), self.J.access(self.S.access(i))

    def maprange_F(self, lo: int, hi: int) -> tuple:
        """Index range of paths whose start lies in [lo, hi] (empty if j > j')."""
        return self.F.count_lt(lo) + 1, self.F.count_le(hi)

    def maprange_J(self, lo: int, hi: int) -> tuple:
        """Alias range of paths whose end lies in [lo, hi]."""
        return self.J.count_lt(lo) + 1, self.J.count_le(hi)

    def _prep_uncached(self, i: int):
        l, r = self.pathep(i)
        dec = compute_pi(self.nav, l, r)
        return dec, tuple(ranges(self.nav, dec, k) for k in range(1, dec.k + 1))

    def prep(self, i: int):
        """Heavy sub-paths of path i with their range quads (cached)."""
        self._check(i)
        return self._prep(i)

    # -- rectangles --------------------------------------------------------
    def rectangles(self, i: int, k: int) -> list:
        """Rectangles (x-range, y-range) whose points are beta of sub-path k."""
        dec, quads = self.prep(i)
        q = quads[k - 1]
        a, b = dec.pi[k - 1]
        rl = self.nav.rmost_leaf
        full = (1, self.n)
        out = []
        if q.r1:
            out.append((self.maprange_F(*q.r1), self.maprange_J(a, rl(a))))
        out.append((self.maprange_F(a, b), full))
        for lo, hi in q.r3 + q.r4:
            c = lo
            while c <= hi:
                e = rl(c)
                out.append((self.maprange_F(c, e), self.maprange_J(e + 1, self.M)))
                c = e + 1
        return [(x, y) for x, y in out if x[0] <= x[1] and y[0] <= y[1]]

    def compute_beta(self, i: int, k: int, stats: Counter | None = None) -> list:
        """Paths whose first node on path i lies in sub-path k (path i included)."""
        out = []
        for x, y in self.rectangles(i, k):
            if stats is not None:
                stats["rectangles"] += 1
            out.extend(self.S.search(x, y, stats))
        return out

    # -- queries -----------------------------------------------------------
    def adjacency(self, i: int, j: int, stats: Counter | None = None) -> bool:
        self._check(j)
        dec, quads = self.prep(i)
        q = self.pathep(j)
        for k in range(1, dec.k + 1):
            if stats is not None:
                stats["check_alpha"] += 1
            if check_alpha(self.nav, k, q, dec, quads[k - 1]):
                return True
        return False

    def neighbourhood_raw(self, i: int, stats: Counter | None = None) -> list:
        """Concatenated beta sets of every sub-path; contains i itself once."""
        dec, _ = self.prep(i)
        out = []
        for k in range(1, dec.k + 1):
            out.extend(self.compute_beta(i, k, stats))
        return out

    def neighbourhood(self, i: int, stats: Counter | None = None) -> list:
        return sorted(x for x in self.neighbourhood_raw(i, stats) if x != i)

    def degree_count(self, i: int, stats: Counter | None = None) -> int:
        """Degree from range counts alone."""
        dec, _ = self.prep(i)
        total = 0
        for k in range(1, dec.k + 1):
            for x, y in self.rectangles(i, k):
                total += self.S.count(x, y, stats)
        return total - 1

    def degree_enum(self, i: int, stats: Counter | None = None) -> int:
        return len(self.neighbourhood(i, stats))

    def degree(self, i: int, stats: Counter | None = None) -> int:
        self._check(i)
        if self.D.access(i):
            return self.degree_count(i, stats)
        return self.degree_enum(i, stats)

    # -- space and serialization --------------------------------------------
    def space_report(self) -> dict:
        parts = {"BP": self.bp.space_bits(), "F": self.F.space_bits(),
                 "J": self.J.space_bits(), "S": self.S.space_bits(),
                 "D": self.D.space_bits()}
        rep = {name: dict(v, total=v["core"] + v["directory"]) for name, v in parts.items()}
        rep["total"] = sum(v["total"] for v in rep.values())
        rep["n"], rep["M"], rep["threshold"] = self.n, self.M, self.threshold
        rep["input_perm"] = self.n * max(1, (self.n).bit_length())
        return rep

    def to_bytes(self) -> bytes:
        w = Writer(self.MAGIC)
        w.u64(self.n)
        w.u64(self.M)
        w.u64(self.threshold)
        for part in (self.bp, self.F, self.J, self.S, self.D):
            w.blob(part.to_bytes())
        w.array(self.input_perm[1:])
        return w.getvalue()

    @classmethod
    def from_bytes(cls, buf: bytes) -> "SuccinctPathGraph":
        r = Reader(buf, cls.MAGIC)
        n, M, thr = r.u64(), r.u64(), r.u64()
        bp = BPTree.from_bytes(r.blob())
        F = NonDecSeq.from_bytes(r.blob())
        J = NonDecSeq.from_bytes(r.blob())
        S = WaveletTree.from_bytes(r.blob())
        D = BitVector.from_bytes(r.blob())
        perm = r.array()
        r.done()
        if bp.M != M or len(F) != n or len(J) != n or len(S) != n or len(D) != n or perm.size != n:
            raise ValueError("section sizes disagree with the header")
        if n and sorted(perm.tolist()) != list(range(1, n + 1)):
            raise ValueError("input permutation is not a permutation")
        return cls(bp, F, J, S, D, np.concatenate([[0], perm]), thr)
