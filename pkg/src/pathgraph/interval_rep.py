"""Interval graph over closed integer intervals with adjacency and neighbour queries.

Vertices are 1..q with intervals [s_v, e_v].  Two vertices are adjacent when
their intervals overlap.  The neighbours of u split into two groups:

* vertices whose start lies in [s_u, e_u], a contiguous block once the
  vertices are sorted by start;
* vertices starting before s_u whose end reaches s_u.  These sit in a
  prefix of the start order and are found by repeated range-maximum
  queries on the ends, each query either reporting a vertex or stopping.

Every range-maximum query and every reported block element counts as one
probe, so a neighbourhood query costs at most 2 * d + 2 probes.
"""
from __future__ import annotations

from collections import Counter

import numpy as np

from ._frame import Reader, Writer, width
from .bitseq import NonDecSeq

RMQ_BLOCK = 32


class _RangeMax:
    """Position of the maximum over a range: in-block scans plus a sparse table on block maxima."""

    def __init__(self, vals: np.ndarray):
        self.vals = vals
        nb = (len(vals) + RMQ_BLOCK - 1) // RMQ_BLOCK
        padded = np.full(nb * RMQ_BLOCK, -1, dtype=np.int64)
        padded[:len(vals)] = vals
        blocks = padded.reshape(nb, RMQ_BLOCK) if nb else padded.reshape(0, RMQ_BLOCK)
        arg = blocks.argmax(axis=1) + np.arange(nb) * RMQ_BLOCK
        table = [arg]
        j = 1
        while (1 << j) <= nb:
            prev = table[-1]
            half = 1 << (j - 1)
            left, right = prev[:nb - (1 << j) + 1], prev[half:half + nb - (1 << j) + 1]
            table.append(np.where(vals[left] >= vals[right], left, right) if len(vals) else left)
            j += 1
        self.table = [t.tolist() for t in table]
        self._v = vals.tolist()

    def _scan(self, lo: int, hi: int) -> int:
        v = self._v
        best = lo
        for p in range(lo + 1, hi + 1):
            if v[p] > v[best]:
                best = p
        return best

    def argmax(self, lo: int, hi: int) -> int:
        """0-based inclusive range."""
        bl, bh = lo // RMQ_BLOCK, hi // RMQ_BLOCK
        if bh - bl <= 1:
            return self._scan(lo, hi)
        cands = [self._scan(lo, (bl + 1) * RMQ_BLOCK - 1), self._scan(bh * RMQ_BLOCK, hi)]
        a, b = bl + 1, bh - 1
        j = (b - a + 1).bit_length() - 1
        cands += [self.table[j][a], self.table[j][b - (1 << j) + 1]]
        v = self._v
        return max(cands, key=lambda p: (v[p], -p))

    def space_bits(self) -> int:
        w = width(max(len(self._v) - 1, 0))
        return sum(len(t) for t in self.table) * w


class IntervalGraph:
    MAGIC = b"IGRP"

    def __init__(self, intervals=(), universe: int | None = None):
        iv = np.asarray(intervals, dtype=np.int64).reshape(-1, 2)
        if iv.size and (iv[:, 0].min() < 1 or np.any(iv[:, 0] > iv[:, 1])):
            raise ValueError("intervals must satisfy 1 <= s <= e")
        self.q = int(len(iv))
        top = int(iv[:, 1].max()) if self.q else 0
        self.universe = top if universe is None else int(universe)
        if self.universe < top:
            raise ValueError("interval end beyond the universe")
        self.s = iv[:, 0].copy()
        self.e = iv[:, 1].copy()
        order = np.lexsort((np.arange(self.q), self.s))
        self.by_start = order + 1                       # rank -> vertex
        self.starts = NonDecSeq(self.s[order], universe=max(self.universe, 1))
        self._rmq = _RangeMax(self.e[order])
        self._vert = self.by_start.tolist()
        self._s, self._e = self.s.tolist(), self.e.tolist()

    def __len__(self) -> int:
        return self.q

    def _check(self, u: int) -> None:
        if not 1 <= u <= self.q:
            raise IndexError(f"vertex {u} outside [1, {self.q}]")

    def interval(self, u: int) -> tuple:
        self._check(u)
        return self._s[u - 1], self._e[u - 1]

    def adjacentIG(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return self._s[u - 1] <= self._e[v - 1] and self._s[v - 1] <= self._e[u - 1]

    def neighbourhoodIG(self, u: int, stats: Counter | None = None) -> list:
        self._check(u)
        su, eu = self._s[u - 1], self._e[u - 1]
        out = []
        lo, hi = self.starts.count_lt(su), self.starts.count_le(eu)
        for p in range(lo, hi):
            out.append(self._vert[p])
        probes = hi - lo
        # earlier starts whose end reaches su
        stack = [(0, lo - 1)] if lo else []
        ends = self._rmq._v
        while stack:
            a, b = stack.pop()
            probes += 1
            m = self._rmq.argmax(a, b)
            if ends[m] < su:
                continue
            out.append(self._vert[m])
            if a < m:
                stack.append((a, m - 1))
            if m < b:
                stack.append((m + 1, b))
        if stats is not None:
            stats["ig_probes"] += probes
        return [v for v in out if v != u]

    def edges(self) -> set:
        return {(u, v) for u in range(1, self.q + 1) for v in self.neighbourhoodIG(u) if u < v}

    # -- space and serialization --------------------------------------------
    def space_bits(self) -> dict:
        w = width(self.universe)
        return {"intervals": 2 * self.q * w,
                "order": self.q * width(self.q),
                "starts": sum(self.starts.space_bits().values()),
                "rmq": self._rmq.space_bits()}

    def to_bytes(self) -> bytes:
        w = Writer(self.MAGIC)
        w.u64(self.universe)
        w.array(self.s)
        w.array(self.e)
        return w.getvalue()

    @classmethod
    def from_bytes(cls, buf: bytes) -> "IntervalGraph":
        r = Reader(buf, cls.MAGIC)
        universe = r.u64()
        s, e = r.array(), r.array()
        r.done()
        if s.size != e.size:
            raise ValueError("start and end arrays differ in length")
        return cls(np.stack([s, e], axis=1), universe)
