"""Pointerless wavelet tree over a permutation of [1, n].

Point (x, y) is stored for x = 1..n.  Level d holds one bit per point: the
points are grouped by the level-d node [lo, hi] that contains their y value,
and a 1 means y lies in the right half (mid, hi] with mid = (lo + hi) // 2.
Because the y values form a permutation, the node [lo, hi] always occupies
positions lo..hi of its level, so no node offsets need to be stored.
"""
from __future__ import annotations

import numpy as np

from ._frame import Reader, Writer
from .bitseq import BitVector


def _levels_needed(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


class WaveletTree:
    MAGIC = b"WAVT"

    def __init__(self, ys=()):
        ys = np.asarray(ys, dtype=np.int64)
        n = int(ys.size)
        if n and not np.array_equal(np.sort(ys), np.arange(1, n + 1)):
            raise ValueError("y values must be a permutation of 1..n")
        self.n = n
        levels = []
        vals = ys.copy()
        lo = np.ones(n, dtype=np.int64)
        hi = np.full(n, n, dtype=np.int64)
        for _ in range(_levels_needed(n)):
            mid = (lo + hi) // 2
            leaf = lo == hi
            bit = (~leaf) & (vals > mid)
            levels.append(BitVector(bit.astype(np.uint8)))
            new_lo = np.where(bit, mid + 1, lo)
            new_hi = np.where(bit | leaf, hi, mid)
            perm = np.argsort(new_lo, kind="stable")
            vals, lo, hi = vals[perm], new_lo[perm], new_hi[perm]
        self.levels = levels

    def __len__(self) -> int:
        return self.n

    def access(self, x: int) -> int:
        """wt_access: the y stored at x."""
        if not 1 <= x <= self.n:
            raise IndexError(f"x={x} outside [1, {self.n}]")
        lo, hi, p = 1, self.n, x - 1
        for B in self.levels:
            if lo == hi:
                break
            s = lo - 1
            mid = (lo + hi) >> 1
            before = B.rank1(s)
            ones = B.rank1(s + p) - before
            if B.access(s + p + 1):
                p, lo = ones, mid + 1
            else:
                p, hi = p - ones, mid
        return lo

    def _clamp(self, xr, yr):
        x1, x2 = max(1, int(xr[0])), min(self.n, int(xr[1]))
        y1, y2 = max(1, int(yr[0])), min(self.n, int(yr[1]))
        if x1 > x2 or y1 > y2:
            return None
        return x1, x2, y1, y2

    def _walk(self, xr, yr, stats, report):
        """Shared descent for count and search.

        Yields (depth, lo, hi, p1, p2, path) for maximal nodes inside the
        y-range; ``path`` is the list of ancestor intervals when reporting.
        """
        box = self._clamp(xr, yr)
        if box is None:
            return
        x1, x2, y1, y2 = box
        stack = [(0, 1, self.n, x1 - 1, x2 - 1, ())]
        while stack:
            d, lo, hi, p1, p2, path = stack.pop()
            if p1 > p2 or hi < y1 or lo > y2:
                continue
            if y1 <= lo and hi <= y2:
                yield d, lo, hi, p1, p2, path
                continue
            if stats is not None:
                stats["wt_nodes"] += 1
            B = self.levels[d]
            s = lo - 1
            mid = (lo + hi) >> 1
            before = B.rank1(s)
            a = B.rank1(s + p1) - before
            b = B.rank1(s + p2 + 1) - before
            sub = path + ((lo, hi),) if report else ()
            stack.append((d + 1, mid + 1, hi, a, b - 1, sub))
            stack.append((d + 1, lo, mid, p1 - a, p2 - b, sub))

    def count(self, xr, yr, stats=None) -> int:
        """wt_count: number of points with x in xr and y in yr."""
        return sum(p2 - p1 + 1 for _, _, _, p1, p2, _ in self._walk(xr, yr, stats, False))

    def search(self, xr, yr, stats=None) -> list:
        """wt_search: x coordinates of the points in the box, increasing."""
        out = []
        for d, lo, hi, p1, p2, path in self._walk(xr, yr, stats, True):
            for p in range(p1, p2 + 1):
                out.append(self._lift(d, lo, p, path))
        out.sort()
        return out

    def _lift(self, d: int, lo: int, p: int, path) -> int:
        """Map position p inside a depth-d node starting at lo back to x."""
        for k in range(d - 1, -1, -1):
            plo, phi = path[k]
            B = self.levels[k]
            s = plo - 1
            if lo == plo:           # left child
                p = B.select0(B.rank0(s) + p + 1) - 1 - s
            else:
                p = B.select1(B.rank1(s) + p + 1) - 1 - s
            lo = plo
        return p + 1

    def points(self) -> list:
        return [(x, self.access(x)) for x in range(1, self.n + 1)]

    # -- space and serialization ----------------------------------------
    def space_bits(self) -> dict:
        return {"core": sum(len(B) for B in self.levels),
                "directory": sum(B.directory_bits() for B in self.levels)}

    def to_bytes(self) -> bytes:
        w = Writer(self.MAGIC)
        w.u64(self.n)
        w.u64(len(self.levels))
        for B in self.levels:
            w.blob(B.to_bytes())
        return w.getvalue()

    @classmethod
    def from_bytes(cls, buf: bytes) -> "WaveletTree":
        r = Reader(buf, cls.MAGIC)
        self = cls.__new__(cls)
        self.n = r.u64()
        self.levels = [BitVector.from_bytes(r.blob()) for _ in range(r.u64())]
        r.done()
        if len(self.levels) != _levels_needed(self.n):
            raise ValueError("level count does not match n")
        return self
