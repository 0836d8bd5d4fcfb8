"""Heavy path decomposition, pre-order relabeling and per-path preprocessing.

After ``prepare`` every node carries its pre-order label, the heavy child is
always the first child, and each heavy path is a contiguous label interval.
A path (l, r) with l <= r is then cut into heavy sub-paths (``compute_pi``),
and each sub-path gets the label ranges R1..R4 that decide whether another
path first meets it there (``ranges``, ``check_alpha``).

The navigation functions take any object exposing ``lca``, ``parent``,
``rmost_leaf`` and ``hp_start``: the BP-backed ``BPNav`` used by the stored
structures, or the array-backed ``ArrayNav`` used at build time and in tests.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bitseq import BPTree, bp_from_parents

Interval = Optional[tuple]


@dataclass(frozen=True)
class RawCliqueTree:
    """Rooted tree in original labels; ``parent[v]`` for v in 1..M, root has 0."""
    M: int
    parent: tuple

    def __post_init__(self):
        par = tuple(int(x) for x in self.parent)
        if len(par) == self.M:
            par = (0,) + par
        if len(par) != self.M + 1:
            raise ValueError(f"expected {self.M} parent entries, got {len(par) - 1}")
        object.__setattr__(self, "parent", par)


class ArrayNav:
    """Pointer-style navigation from plain arrays over pre-order labels."""

    def __init__(self, parent, heavy_start):
        self.par = [int(x) for x in parent]
        self.M = len(self.par) - 1
        M = self.M
        self.rmost = list(range(M + 1))
        for v in range(M, 1, -1):
            p = self.par[v]
            if self.rmost[v] > self.rmost[p]:
                self.rmost[p] = self.rmost[v]
        self.depth = [0] * (M + 1)
        for v in range(2, M + 1):
            self.depth[v] = self.depth[self.par[v]] + 1
        self.hs = [int(x) for x in heavy_start]

    def parent(self, v: int) -> int:
        return self.par[v]

    def rmost_leaf(self, v: int) -> int:
        return self.rmost[v]

    def hp_start(self, v: int) -> int:
        return self.hs[v]

    def lca(self, u: int, v: int) -> int:
        hs, dep, par = self.hs, self.depth, self.par
        while hs[u] != hs[v]:
            if dep[hs[u]] > dep[hs[v]]:
                u = par[hs[u]]
            else:
                v = par[hs[v]]
        return min(u, v)


class BPNav:
    """Navigation answered from the BP bits alone."""

    def __init__(self, bp: BPTree):
        self.bp = bp
        self.M = bp.M
        self.lca = bp.lca
        self.parent = bp.parent
        self.rmost_leaf = bp.rmost_leaf

    def hp_start(self, v: int) -> int:
        """Start node of v's heavy path.

        The opens from the start of a heavy path down to v are consecutive,
        so the start is the node right after the last close preceding v.
        """
        bv = self.bp.bv
        i = bv.select1(v)
        if i == 0:
            raise IndexError(f"node {v} outside [1, {self.M}]")
        return bv.rank1(bv.select0(bv.rank0(i)) + 1)


@dataclass
class PreparedTree:
    M: int
    bp: BPTree
    relabel: np.ndarray          # original label -> pre-order label (index 0 unused)
    heavy_paths: list            # [(a, b)] sorted by a; index h-1 holds heavy path h
    hp_of_node: np.ndarray       # pre-order label -> heavy path index (1-based)
    hpt: RawCliqueTree           # heavy path tree over heavy path indices
    hpt_bp: BPTree
    level_of_hp: np.ndarray      # heavy path -> level, root level 1
    ref: ArrayNav = field(repr=False)
    nav: BPNav = field(repr=False)

    @property
    def K(self) -> int:
        return int(self.level_of_hp[1:].max())

    @property
    def hpt_depth(self) -> int:
        return self.K

    def lca(self, u: int, v: int) -> int:
        return self.nav.lca(u, v)

    def parent(self, v: int) -> int:
        return self.nav.parent(v)

    def rmost_leaf(self, v: int) -> int:
        return self.nav.rmost_leaf(v)

    def hp_start(self, v: int) -> int:
        return self.nav.hp_start(v)


def prepare(raw: RawCliqueTree) -> PreparedTree:
    """Heavy path decomposition plus pre-order relabeling of a rooted tree."""
    M = raw.M
    if M < 1:
        raise ValueError("tree must have at least one node")
    par = raw.parent
    roots = [v for v in range(1, M + 1) if par[v] == 0]
    if len(roots) != 1:
        raise ValueError(f"expected exactly one root, found {len(roots)}")
    children = [[] for _ in range(M + 1)]
    for v in range(1, M + 1):
        p = par[v]
        if p:
            if not 1 <= p <= M or p == v:
                raise ValueError(f"bad parent {p} for node {v}")
            children[p].append(v)
    root = roots[0]
    bfs = [root]
    for v in bfs:
        bfs.extend(children[v])
    if len(bfs) != M:
        raise ValueError("parent array is cyclic or disconnected")
    size = [1] * (M + 1)
    for v in reversed(bfs[1:]):
        size[par[v]] += size[v]

    # heavy child first (largest subtree, smallest label on ties), rest ascending
    ordered = [[] for _ in range(M + 1)]
    for v in range(1, M + 1):
        ch = children[v]
        if ch:
            h = min(ch, key=lambda c: (-size[c], c))
            ordered[v] = [h] + [c for c in ch if c != h]

    relabel = np.zeros(M + 1, dtype=np.int64)
    new_parent = [0] * (M + 1)
    stack = [root]
    nxt = 1
    while stack:
        v = stack.pop()
        relabel[v] = nxt
        nxt += 1
        stack.extend(reversed(ordered[v]))
    for v in range(1, M + 1):
        if par[v]:
            new_parent[relabel[v]] = int(relabel[par[v]])
    new_order = [[] for _ in range(M + 1)]
    for v in range(1, M + 1):
        new_order[relabel[v]] = [int(relabel[c]) for c in ordered[v]]
    new_order[0] = [1]
    bp = BPTree(bp_from_parents(new_parent, new_order))

    # heavy paths: a node starts one unless it is the first child of its parent
    hp_of_node = np.zeros(M + 1, dtype=np.int64)
    starts = []
    for v in range(1, M + 1):
        p = new_parent[v]
        if p == 0 or v != p + 1:
            starts.append(v)
        hp_of_node[v] = len(starts)
    H = len(starts)
    ends = [s - 1 for s in starts[1:]] + [M]
    heavy_paths = list(zip(starts, ends))
    hpt_parent = [0] * (H + 1)
    level = np.zeros(H + 1, dtype=np.int64)
    level[1] = 1
    for h in range(2, H + 1):
        hpt_parent[h] = int(hp_of_node[new_parent[starts[h - 1]]])
        level[h] = level[hpt_parent[h]] + 1
    hpt = RawCliqueTree(H, tuple(hpt_parent))
    heavy_start = [0] + [starts[hp_of_node[v] - 1] for v in range(1, M + 1)]
    return PreparedTree(
        M=M, bp=bp, relabel=relabel, heavy_paths=heavy_paths, hp_of_node=hp_of_node,
        hpt=hpt, hpt_bp=BPTree(bp_from_parents(hpt_parent)), level_of_hp=level,
        ref=ArrayNav(new_parent, heavy_start), nav=BPNav(bp))


# ---------------------------------------------------------------------------
# heavy sub-paths

@dataclass(frozen=True)
class HeavySubPathDecomposition:
    """Sub-paths (a_i, b_i) of one path, ordered by their heavy path start.

    pi[0] holds the lca.  The branch towards l follows, top-down, then the
    branch towards r.  ``succ11``/``succ12`` are 1-based indices of the first
    sub-path below pi[0] on each branch (the one hanging from b_1 first).
    """
    pi: tuple
    succ11: Optional[int] = None
    succ12: Optional[int] = None

    @property
    def k(self) -> int:
        return len(self.pi)

    def succ(self, i: int) -> Optional[int]:
        """Index of the sub-path right below pi_i on its branch (i >= 2)."""
        if i == 1:
            return self.succ11
        if i == self.k or i + 1 == self.succ12:
            return None
        return i + 1


def compute_pi(nav, l: int, r: int) -> HeavySubPathDecomposition:
    if l > r:
        raise ValueError(f"expected l <= r, got ({l}, {r})")
    p = nav.lca(l, r)

    def chain(v):
        out = []
        while True:
            u = nav.hp_start(v)
            if u > p:
                out.append((u, v))
                v = nav.parent(u)
            else:
                out.append((p, v))
                out.reverse()
                return out

    if l == p:
        down = chain(r)
        return HeavySubPathDecomposition(tuple(down), 2 if len(down) > 1 else None, None)
    left, right = chain(l), chain(r)
    # only the l-branch can continue along p's heavy path
    first = (p, max(left[0][1], right[0][1]))
    pi = (first,) + tuple(left[1:]) + tuple(right[1:])
    s11 = 2 if len(left) > 1 else None
    s12 = len(left) + 1 if len(right) > 1 else None
    return HeavySubPathDecomposition(pi, s11, s12)


@dataclass(frozen=True)
class RangeQuad:
    """R1..R4 of one sub-path; each field is (lo, hi) or None when empty.

    ``r3c`` is only used when a_1 = b_1 and both branches leave a_1 through
    light edges, where R3 has to skip two child subtrees.
    """
    r1: Interval = None
    r2: Interval = None
    r3a: Interval = None
    r3b: Interval = None
    r3c: Interval = None
    r4a: Interval = None
    r4b: Interval = None

    @property
    def r3(self) -> list:
        return [x for x in (self.r3a, self.r3b, self.r3c) if x]

    @property
    def r4(self) -> list:
        return [x for x in (self.r4a, self.r4b) if x]

    def intervals(self) -> list:
        return [x for x in (self.r1, self.r2, self.r3a, self.r3b, self.r3c, self.r4a, self.r4b) if x]


def _iv(lo: int, hi: int) -> Interval:
    return (lo, hi) if lo <= hi else None


def ranges(nav, dec: HeavySubPathDecomposition, i: int) -> RangeQuad:
    if not 1 <= i <= dec.k:
        raise IndexError(f"sub-path {i} outside [1, {dec.k}]")
    rl = nav.rmost_leaf
    a, b = dec.pi[i - 1]
    r1 = _iv(1, a - 1) if i == 1 else None
    r3a = r3b = r3c = r4a = r4b = None
    s1 = dec.succ(i)
    s2 = dec.succ12 if i == 1 else None
    rb = rl(b)
    if s1:
        an = dec.pi[s1 - 1][0]
        r3a = _iv(b + 1, an - 1)
        if s2 and a == b:
            az = dec.pi[s2 - 1][0]
            r3b = _iv(rl(an) + 1, az - 1)
            r3c = _iv(rl(az) + 1, rb)
        else:
            r3b = _iv(rl(an) + 1, rb)
    else:
        r3a = _iv(b + 1, rb)
    if s2:
        if a != b:
            az = dec.pi[s2 - 1][0]
            r4a = _iv(rb + 1, az - 1)
            r4b = _iv(rl(az) + 1, rl(a))
    else:
        r4a = _iv(rb + 1, rl(a))
    return RangeQuad(r1, (a, b), r3a, r3b, r3c, r4a, r4b)


def _inside(x: int, iv: Interval) -> bool:
    return iv is not None and iv[0] <= x <= iv[1]


def check_alpha(nav, i: int, q: tuple, dec: HeavySubPathDecomposition,
                quad: RangeQuad | None = None) -> bool:
    """True iff the first node of Q = (s, t) lying on P belongs to pi_i."""
    if quad is None:
        quad = ranges(nav, dec, i)
    s, t = q
    a, b = dec.pi[i - 1]
    if _inside(s, quad.r2):
        return True
    if i == 1 and _inside(s, quad.r1):
        return a <= t <= nav.rmost_leaf(a)
    if any(_inside(s, iv) for iv in quad.r3):
        return nav.lca(s, t) <= b
    if any(_inside(s, iv) for iv in quad.r4):
        return nav.lca(s, t) < b
    return False


# ---------------------------------------------------------------------------
# path sets

@dataclass
class PathSet:
    """Paths in pre-order labels, sorted by (l, r, input index).

    ``input_index[k]`` is the 1-based input position of sorted path k+1 and
    ``sorted_index`` is its inverse (both carry a dummy entry at 0).
    """
    l: np.ndarray
    r: np.ndarray
    input_index: np.ndarray
    sorted_index: np.ndarray

    @property
    def n(self) -> int:
        return int(self.l.size)

    @classmethod
    def from_original(cls, pt: PreparedTree, paths) -> "PathSet":
        arr = np.asarray(paths, dtype=np.int64).reshape(-1, 2)
        if arr.size and (arr.min() < 1 or arr.max() > pt.M):
            raise ValueError(f"path endpoint outside [1, {pt.M}]")
        u, v = pt.relabel[arr[:, 0]], pt.relabel[arr[:, 1]]
        l, r = np.minimum(u, v), np.maximum(u, v)
        idx = np.arange(len(l))
        order = np.lexsort((idx, r, l))
        sorted_index = np.zeros(len(l) + 1, dtype=np.int64)
        sorted_index[order + 1] = idx + 1
        return cls(l[order], r[order], np.concatenate([[0], order + 1]), sorted_index)
