"""Rank/select bit vectors, non-decreasing sequences and BP ordinal trees.

Positions and node labels are 1-based; 0 is the "none" value returned by
``select`` when the requested occurrence does not exist.
"""
from __future__ import annotations

from bisect import bisect_left

import numpy as np

from ._frame import Reader, Writer, width

BLOCK = 512          # bits per rank block
SUPER = 1 << 16      # bits per superblock
_PER_SUPER = SUPER // BLOCK
_MASK = (1 << BLOCK) - 1
_HALF_MASKS = {w: (1 << w) - 1 for w in (256, 128, 64, 32, 16, 8)}


def _byte_select_table():
    tab = []
    for v in range(256):
        tab.append([k for k in range(8) if v >> k & 1])
    return tab


_SEL8 = _byte_select_table()


def _select_in_word(w: int, k: int) -> int:
    """Offset of the k-th set bit (k >= 1) of a BLOCK-bit word, LSB first."""
    pos = 0
    half = BLOCK >> 1
    while half >= 8:
        low = w & _HALF_MASKS[half]
        c = low.bit_count()
        if k > c:
            k -= c
            w >>= half
            pos += half
        else:
            w = low
        half >>= 1
    return pos + _SEL8[w][k - 1]


def _as_bits(bits) -> np.ndarray:
    if isinstance(bits, str):
        return np.frombuffer(bits.encode(), dtype=np.uint8) - ord("0")
    arr = np.asarray(bits, dtype=np.uint8).ravel()
    if arr.size and arr.max() > 1:
        raise ValueError("bits must be 0 or 1")
    return arr


class BitVector:
    """Static bit vector with a two-level rank directory.

    Superblocks of ``SUPER`` bits keep absolute counts of ones, blocks of
    ``BLOCK`` bits keep counts relative to their superblock, and the tail
    of a block is counted with ``int.bit_count``.  Select is a binary search
    over the directory followed by a halving search inside one block.
    """

    MAGIC = b"BVEC"

    def __init__(self, bits=()):
        arr = _as_bits(bits)
        self._n = int(arr.size)
        self._raw = np.packbits(arr, bitorder="little").tobytes()
        nblk = (self._n + BLOCK - 1) // BLOCK
        padded = np.zeros(nblk * BLOCK, dtype=np.int64)
        padded[:self._n] = arr
        per_block = padded.reshape(nblk, BLOCK).sum(axis=1) if nblk else np.zeros(0, np.int64)
        before = np.concatenate([[0], np.cumsum(per_block)[:-1]]) if nblk else per_block
        sup = before[::_PER_SUPER].copy()
        blk = before - np.repeat(sup, _PER_SUPER)[:nblk]
        self._set_dirs(sup, blk)

    def _set_dirs(self, sup, blk) -> None:
        self._sup = [int(x) for x in sup]
        self._blk = [int(x) for x in blk]
        raw = self._raw + bytes(-len(self._raw) % (BLOCK // 8))
        step = BLOCK // 8
        self._words = [int.from_bytes(raw[i:i + step], "little") for i in range(0, len(raw), step)]
        self._ones = sum(w.bit_count() for w in self._words)

    # -- basic queries -------------------------------------------------
    def __len__(self) -> int:
        return self._n

    @property
    def ones(self) -> int:
        return self._ones

    @property
    def zeros(self) -> int:
        return self._n - self._ones

    def access(self, i: int) -> int:
        if not 1 <= i <= self._n:
            raise IndexError(f"position {i} outside [1, {self._n}]")
        i -= 1
        return (self._words[i >> 9] >> (i & 511)) & 1

    __getitem__ = access

    def rank1(self, i: int) -> int:
        """Number of ones in B[1..i]."""
        if i >= self._n:
            if i == self._n:
                return self._ones
            raise IndexError(f"rank position {i} > length {self._n}")
        if i <= 0:
            if i == 0:
                return 0
            raise IndexError("negative rank position")
        b = i >> 9
        return self._sup[i >> 16] + self._blk[b] + (self._words[b] & ((1 << (i & 511)) - 1)).bit_count()

    def rank0(self, i: int) -> int:
        return i - self.rank1(i)

    def rank(self, b: int, i: int) -> int:
        return self.rank1(i) if b else self.rank0(i)

    def select1(self, k: int) -> int:
        """Position of the k-th one, or 0 if there is none."""
        if k < 1 or k > self._ones:
            return 0
        s = bisect_left(self._sup, k) - 1
        lo = s * _PER_SUPER
        hi = min(lo + _PER_SUPER, len(self._blk))
        k -= self._sup[s]
        b = bisect_left(self._blk, k, lo, hi) - 1
        return b * BLOCK + _select_in_word(self._words[b], k - self._blk[b]) + 1

    def select0(self, k: int) -> int:
        """Position of the k-th zero, or 0 if there is none."""
        if k < 1 or k > self._n - self._ones:
            return 0
        sup, blk = self._sup, self._blk
        lo, hi = 0, len(sup)            # last superblock with fewer than k zeros before it
        while hi - lo > 1:
            mid = (lo + hi) >> 1
            if mid * SUPER - sup[mid] < k:
                lo = mid
            else:
                hi = mid
        s = lo
        k -= s * SUPER - sup[s]
        lo = s * _PER_SUPER
        hi = min(lo + _PER_SUPER, len(blk))
        base = lo
        while hi - lo > 1:
            mid = (lo + hi) >> 1
            if (mid - base) * BLOCK - blk[mid] < k:
                lo = mid
            else:
                hi = mid
        b = lo
        k -= (b - base) * BLOCK - blk[b]
        return b * BLOCK + _select_in_word(~self._words[b] & _MASK, k) + 1

    def select(self, b: int, k: int) -> int:
        return self.select1(k) if b else self.select0(k)

    def to_numpy(self) -> np.ndarray:
        return np.unpackbits(np.frombuffer(self._raw, dtype=np.uint8), bitorder="little")[:self._n]

    def __str__(self) -> str:
        return "".join(map(str, self.to_numpy()))

    def __eq__(self, other) -> bool:
        return isinstance(other, BitVector) and self._n == other._n and self._raw == other._raw

    # -- space and serialization ----------------------------------------
    def directory_bits(self) -> int:
        return len(self._sup) * 32 + len(self._blk) * width(SUPER)

    def space_bits(self) -> dict:
        return {"core": self._n, "directory": self.directory_bits()}

    def to_bytes(self) -> bytes:
        w = Writer(self.MAGIC)
        w.u64(self._n)
        w.raw(self._raw)
        w.array(np.asarray(self._sup, dtype=np.int64))
        w.array(np.asarray(self._blk, dtype=np.int64))
        return w.getvalue()

    @classmethod
    def from_bytes(cls, buf: bytes) -> "BitVector":
        r = Reader(buf, cls.MAGIC)
        self = cls.__new__(cls)
        self._n = r.u64()
        self._raw = r.raw()
        sup, blk = r.array(), r.array()
        r.done()
        if len(self._raw) != (self._n + 7) // 8:
            raise ValueError("bit length does not match payload")
        self._set_dirs(sup, blk)
        return self


class NonDecSeq:
    """Non-decreasing positive integers stored as unary gaps.

    Value v_i contributes (v_i - v_{i-1}) ones followed by a zero.  Trailing
    ones pad the vector up to ``universe`` so that counting queries work for
    every value in [1, universe].  With the default universe (the maximum
    value) the sequence (1, 2, 5) encodes as 10101110.
    """

    MAGIC = b"NDSQ"

    def __init__(self, values=(), universe: int | None = None):
        vals = np.asarray(values, dtype=np.int64)
        if vals.size and (vals.min() < 1 or np.any(np.diff(vals) < 0)):
            raise ValueError("values must be positive and non-decreasing")
        top = int(vals[-1]) if vals.size else 0
        self.universe = top if universe is None else int(universe)
        if self.universe < top:
            raise ValueError("universe smaller than the largest value")
        self.n = int(vals.size)
        bits = np.ones(self.n + self.universe, dtype=np.uint8)
        bits[vals + np.arange(self.n)] = 0
        self.bits = BitVector(bits)

    def __len__(self) -> int:
        return self.n

    def access(self, i: int) -> int:
        """accessNS: the i-th stored value, rank(B,1,select(B,0,i))."""
        if not 1 <= i <= self.n:
            raise IndexError(f"index {i} outside [1, {self.n}]")
        return self.bits.rank1(self.bits.select0(i))

    __getitem__ = access

    def count_le(self, x: int) -> int:
        """Number of stored values <= x."""
        if x < 1:
            return 0
        if x >= self.universe:
            return self.n
        return self.bits.rank0(self.bits.select1(x + 1))

    def count_lt(self, x: int) -> int:
        return self.count_le(x - 1)

    def to_list(self) -> list:
        return [self.access(i) for i in range(1, self.n + 1)]

    def space_bits(self) -> dict:
        return {"core": len(self.bits), "directory": self.bits.directory_bits()}

    def to_bytes(self) -> bytes:
        w = Writer(self.MAGIC)
        w.u64(self.n)
        w.u64(self.universe)
        w.blob(self.bits.to_bytes())
        return w.getvalue()

    @classmethod
    def from_bytes(cls, buf: bytes) -> "NonDecSeq":
        r = Reader(buf, cls.MAGIC)
        self = cls.__new__(cls)
        self.n, self.universe = r.u64(), r.u64()
        self.bits = BitVector.from_bytes(r.blob())
        r.done()
        return self


# ---------------------------------------------------------------------------
# Balanced parentheses
#
# P(z) denotes the excess of the first z bits (opens minus closes), so
# P(0) = 0 and the open of a node at depth d sits at a 0-based position x
# with P(x) = d - 1.  Navigation reduces to three searches over P:
#   fwd(z0, T): smallest z >= z0 with P(z) = T
#   bwd(z0, T): largest  z <= z0 with P(z) = T
#   range min of P over [z1, z2]
# The scans use per-byte tables and a segment tree over 128-bit blocks.

RMM_BLOCK = 128
_BYTES_PER_RMM = RMM_BLOCK // 8


def _byte_tables():
    tot, pmin, smin = [], [], []
    pfirst, blast = [], []
    for v in range(256):
        steps = [1 if v >> k & 1 else -1 for k in range(8)]
        pref = list(np.cumsum(steps))
        t = pref[-1]
        tot.append(t)
        pmin.append(min(pref))
        first = [8] * 9
        for k in range(7, -1, -1):
            if pref[k] < 0:
                first[-pref[k]] = k
        pfirst.append(first)
        # values P(8c + j) - P(8c + 8) for j = 0..7, relative to the byte end
        suf = [(pref[j - 1] if j else 0) - t for j in range(8)]
        smin.append(min(suf))
        last = [-1] * 10
        for j in range(8):
            if suf[j] < 0:
                last[-suf[j]] = j
        blast.append(last)
    return tot, pmin, pfirst, smin, blast


_TOT, _PMIN, _PFIRST, _SMIN, _BLAST = _byte_tables()
_INF = 1 << 62


class BPTree:
    """Ordinal tree in balanced-parentheses form (1 = open, 0 = close).

    Node labels are pre-order ranks, i.e. the rank of the node's open
    parenthesis.  ``parent`` of the root and ``first_child`` of a leaf return 0.
    """

    MAGIC = b"BPTR"

    def __init__(self, bits=(), *, _bv: BitVector | None = None):
        self.bv = _bv if _bv is not None else BitVector(bits)
        arr = self.bv.to_numpy().astype(np.int64)
        self.M = self.bv.ones
        if len(arr) != 2 * self.M:
            raise ValueError("BP sequence is not balanced")
        exc = np.concatenate([[0], np.cumsum(2 * arr - 1)])
        if exc.size > 1 and (exc.min() < 0 or exc[-1] != 0 or np.any(exc[1:-1] == 0)):
            raise ValueError("BP sequence is not a single balanced tree")
        self._build_rmm(arr, exc)

    def _build_rmm(self, arr: np.ndarray, exc: np.ndarray) -> None:
        L = len(arr)
        nblk = L // RMM_BLOCK + 1
        padded = np.ones(nblk * RMM_BLOCK, dtype=np.uint8)
        padded[:L] = arr
        self._bytes = np.packbits(padded, bitorder="little").tobytes()
        # P over the padded sequence, z in [0, nblk * RMM_BLOCK)
        P = np.concatenate([[0], np.cumsum(2 * padded.astype(np.int64) - 1)])[:-1]
        bmin = P.reshape(nblk, RMM_BLOCK).min(axis=1)
        size = 1
        while size < nblk:
            size <<= 1
        tree = [_INF] * (2 * size)
        tree[size:size + nblk] = [int(x) for x in bmin]
        for i in range(size - 1, 0, -1):
            tree[i] = min(tree[2 * i], tree[2 * i + 1])
        self._nblk, self._size, self._tree = nblk, size, tree

    # -- excess machinery ------------------------------------------------
    def _P(self, z: int) -> int:
        return 2 * self.bv.rank1(z) - z

    def _fwd(self, z: int, T: int) -> int:
        """Smallest z' >= z with P(z') = T, assuming P(z - 1) > T."""
        by = self._bytes
        cur = self._P(z)
        if cur == T:
            return z
        while z & 7:
            cur += 1 if by[z >> 3] >> (z & 7) & 1 else -1
            z += 1
            if cur == T:
                return z
        while True:
            while z & (RMM_BLOCK - 1):
                v = by[z >> 3]
                if cur + _PMIN[v] <= T:
                    return z + _PFIRST[v][cur - T] + 1
                cur += _TOT[v]
                z += 8
            # z is block aligned and P(z) == cur > T
            b = self._first_le(z // RMM_BLOCK, T)
            if b < 0:
                return -1
            z = b * RMM_BLOCK
            cur = self._P(z)
            if cur == T:
                return z
            v = by[z >> 3]
            if cur + _PMIN[v] <= T:
                return z + _PFIRST[v][cur - T] + 1
            cur += _TOT[v]
            z += 8

    def _bwd(self, z: int, T: int) -> int:
        """Largest z' <= z with P(z') = T, assuming P(z) >= T; -1 if none."""
        by = self._bytes
        cur = self._P(z)
        if cur == T:
            return z
        while z & 7:
            z -= 1
            cur -= 1 if by[z >> 3] >> (z & 7) & 1 else -1
            if cur == T:
                return z
        while z & (RMM_BLOCK - 1):
            v = by[(z >> 3) - 1]
            if cur + _SMIN[v] <= T:
                return z - 8 + _BLAST[v][cur - T]
            cur -= _TOT[v]
            z -= 8
        if z == 0:
            return -1
        b = self._last_le(z // RMM_BLOCK - 1, T)
        if b < 0:
            return -1
        z = (b + 1) * RMM_BLOCK
        cur = self._P(z)
        while True:
            v = by[(z >> 3) - 1]
            if cur + _SMIN[v] <= T:
                return z - 8 + _BLAST[v][cur - T]
            cur -= _TOT[v]
            z -= 8

    def _first_le(self, lo: int, T: int) -> int:
        if lo >= self._nblk:
            return -1
        tree = self._tree
        i = lo + self._size
        while tree[i] > T:
            while i & 1:
                i >>= 1
            if i == 0:
                return -1
            i += 1
        while i < self._size:
            i = 2 * i if tree[2 * i] <= T else 2 * i + 1
        return i - self._size

    def _last_le(self, hi: int, T: int) -> int:
        if hi < 0:
            return -1
        tree = self._tree
        i = hi + self._size
        while tree[i] > T:
            while not i & 1:
                i >>= 1
            if i == 1:
                return -1
            i -= 1
        while i < self._size:
            i = 2 * i + 1 if tree[2 * i + 1] <= T else 2 * i
        return i - self._size

    def _block_min(self, lo: int, hi: int) -> int:
        tree = self._tree
        res = _INF
        lo += self._size
        hi += self._size + 1
        while lo < hi:
            if lo & 1:
                res = min(res, tree[lo])
                lo += 1
            if hi & 1:
                hi -= 1
                res = min(res, tree[hi])
            lo >>= 1
            hi >>= 1
        return res

    def _range_min(self, z1: int, z2: int) -> int:
        """min P(z) for z in [z1, z2]."""
        by = self._bytes
        cur = self._P(z1)
        m = cur
        z = z1
        while z < z2 and z & 7:
            cur += 1 if by[z >> 3] >> (z & 7) & 1 else -1
            z += 1
            m = min(m, cur)
        while z + 8 <= z2 and z & (RMM_BLOCK - 1):
            v = by[z >> 3]
            m = min(m, cur + _PMIN[v])
            cur += _TOT[v]
            z += 8
        if not z & (RMM_BLOCK - 1) and z + RMM_BLOCK - 1 <= z2:
            b1 = z // RMM_BLOCK
            b2 = (z2 + 1) // RMM_BLOCK - 1
            m = min(m, self._block_min(b1, b2))
            z = (b2 + 1) * RMM_BLOCK
            if z > z2:
                return m
            cur = self._P(z)
            m = min(m, cur)
        while z + 8 <= z2:
            v = by[z >> 3]
            m = min(m, cur + _PMIN[v])
            cur += _TOT[v]
            z += 8
        while z < z2:
            cur += 1 if by[z >> 3] >> (z & 7) & 1 else -1
            z += 1
            m = min(m, cur)
        return m

    def _check(self, v: int) -> None:
        if not 1 <= v <= self.M:
            raise IndexError(f"node {v} outside [1, {self.M}]")

    # -- navigation -----------------------------------------------------
    def open(self, v: int) -> int:
        """0-based position of the open parenthesis of node v."""
        self._check(v)
        return self.bv.select1(v) - 1

    def close(self, v: int) -> int:
        x = self.open(v)
        return self._fwd(x + 2, self._P(x + 1) - 1) - 1

    def depth(self, v: int) -> int:
        return self._P(self.open(v) + 1)

    def parent(self, v: int) -> int:
        x = self.open(v)
        if x == 0:
            return 0
        z = self._bwd(x, self._P(x) - 1)
        return self.bv.rank1(z + 1)

    def first_child(self, v: int) -> int:
        x = self.open(v)
        return v + 1 if self.bv.access(x + 2) else 0

    def next_sibling(self, v: int) -> int:
        c = self.close(v)
        if c + 2 <= len(self.bv) and self.bv.access(c + 2):
            return self.bv.rank1(c + 2)
        return 0

    def rmost_leaf(self, v: int) -> int:
        """Largest pre-order label in the subtree of v."""
        return self.bv.rank1(self.close(v) + 1)

    def subtree_size(self, v: int) -> int:
        return self.rmost_leaf(v) - v + 1

    def is_leaf(self, v: int) -> bool:
        return self.first_child(v) == 0

    def is_ancestor(self, u: int, v: int) -> bool:
        """True if u is an ancestor of v or u == v."""
        return u <= v <= self.rmost_leaf(u)

    def lca(self, u: int, v: int) -> int:
        self._check(u)
        self._check(v)
        if u == v:
            return u
        if u > v:
            u, v = v, u
        x = self.bv.select1(u) - 1
        y = self.bv.select1(v) - 1
        d = self._range_min(x + 1, y + 1)
        z = self._bwd(x, d - 1)
        return self.bv.rank1(z + 1)

    def child_rank(self, v: int) -> int:
        """Number of left siblings of v (walks the sibling list)."""
        p = self.parent(v)
        if p == 0:
            raise ValueError("the root has no siblings")
        c, k = p + 1, 0
        while c != v:
            c = self.next_sibling(c)
            k += 1
        return k

    def children(self, v: int) -> list:
        out = []
        c = self.first_child(v)
        while c:
            out.append(c)
            c = self.next_sibling(c)
        return out

    # -- space and serialization ----------------------------------------
    def directory_bits(self) -> int:
        return self.bv.directory_bits() + 2 * self._size * width(len(self.bv) + 1)

    def space_bits(self) -> dict:
        return {"core": len(self.bv), "directory": self.directory_bits()}

    def to_bytes(self) -> bytes:
        w = Writer(self.MAGIC)
        w.blob(self.bv.to_bytes())
        w.array(np.asarray(self._tree[self._size:self._size + self._nblk], dtype=np.int64))
        return w.getvalue()

    @classmethod
    def from_bytes(cls, buf: bytes) -> "BPTree":
        r = Reader(buf, cls.MAGIC)
        bv = BitVector.from_bytes(r.blob())
        bmin = r.array()
        r.done()
        self = cls(_bv=bv)
        if list(bmin) != self._tree[self._size:self._size + self._nblk]:
            raise ValueError("BP block minima do not match the bits")
        return self


def bp_from_parents(parent, order=None) -> np.ndarray:
    """BP bits of a tree given 1-based parent labels (root has parent 0).

    Children are visited in ascending label order unless ``order`` (a list
    of child lists) is supplied.  Labels must already be in pre-order for the
    BP node numbering to coincide with them.
    """
    parent = np.asarray(parent)
    m = len(parent) - 1
    if order is None:
        order = [[] for _ in range(m + 1)]
        for v in range(1, m + 1):
            order[parent[v]].append(v)
    roots = order[0]
    bits = np.zeros(2 * m, dtype=np.uint8)
    pos = 0
    stack = [(r, 0) for r in reversed(roots)]
    while stack:
        v, state = stack.pop()
        if state == 0:
            bits[pos] = 1
            pos += 1
            stack.append((v, 1))
            stack.extend((c, 0) for c in reversed(order[v]))
        else:
            pos += 1
    return bits
