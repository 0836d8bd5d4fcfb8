"""Brute-force ground truth plus random instance generation and the text format.

Everything here works on original labels with explicit node sets, so it
shares no code with the compressed structures it is used to check.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .treeprep import RawCliqueTree


def _depths(parent) -> list:
    M = len(parent) - 1
    depth = [-1] * (M + 1)
    for v in range(1, M + 1):
        chain = []
        u = v
        while u and depth[u] < 0:
            chain.append(u)
            u = parent[u]
            if len(chain) > M:
                raise ValueError("parent array contains a cycle")
        d = depth[u] if u else -1
        for w in reversed(chain):
            d += 1
            depth[w] = d
    return depth


def path_nodes(parent, u: int, v: int, depth=None) -> list:
    """Nodes on the tree path u..v, walking both ends up to their meeting point."""
    if depth is None:
        depth = _depths(parent)
    left, right = [], []
    while depth[u] > depth[v]:
        left.append(u)
        u = parent[u]
    while depth[v] > depth[u]:
        right.append(v)
        v = parent[v]
    while u != v:
        left.append(u)
        right.append(v)
        u, v = parent[u], parent[v]
    return left + [u] + right[::-1]


def naive_lca(parent, u: int, v: int, depth=None) -> int:
    if depth is None:
        depth = _depths(parent)
    while depth[u] > depth[v]:
        u = parent[u]
    while depth[v] > depth[u]:
        v = parent[v]
    while u != v:
        u, v = parent[u], parent[v]
    return u


def intersect_naive(tree: RawCliqueTree, P, Q) -> bool:
    return bool(set(path_nodes(tree.parent, *P)) & set(path_nodes(tree.parent, *Q)))


@dataclass
class OracleGraph:
    """Intersection graph with explicit neighbour lists (1-based input indices)."""
    n: int
    adj: list

    def neighbours(self, i: int) -> list:
        return self.adj[i]

    def degree(self, i: int) -> int:
        return len(self.adj[i])

    def adjacent(self, i: int, j: int) -> bool:
        return i == j or j in self._sets[i]

    def __post_init__(self):
        self._sets = [set(a) for a in self.adj]

    @property
    def edges(self) -> set:
        return {(i, j) for i in range(1, self.n + 1) for j in self.adj[i] if i < j}


def build_oracle(tree: RawCliqueTree, paths) -> OracleGraph:
    """All-pairs intersection by node-incidence products."""
    n, M = len(paths), tree.M
    depth = _depths(tree.parent)
    inc = np.zeros((n, M + 1), dtype=np.float32)
    for k, (u, v) in enumerate(paths):
        inc[k, path_nodes(tree.parent, u, v, depth)] = 1.0
    hits = (inc @ inc.T) > 0.5 if n else np.zeros((0, 0), bool)
    np.fill_diagonal(hits, False)
    adj = [[]] + [list(np.flatnonzero(hits[k]) + 1) for k in range(n)]
    adj = [[int(x) for x in a] for a in adj]
    return OracleGraph(n, adj)


# ---------------------------------------------------------------------------
# instances

@dataclass
class ValidityReport:
    valid: bool
    bad_endpoints: list = field(default_factory=list)
    uncovered: list = field(default_factory=list)
    non_lca: list = field(default_factory=list)
    non_maximal: list = field(default_factory=list)   # (u, v): S(u) subset of S(v)

    def summary(self) -> str:
        if self.valid:
            return "valid clique-tree instance"
        parts = []
        for name in ("bad_endpoints", "uncovered", "non_lca", "non_maximal"):
            items = getattr(self, name)
            if items:
                parts.append(f"{name}={items[:10]}{'...' if len(items) > 10 else ''}")
        return "NOT valid: " + "; ".join(parts)


@dataclass
class Instance:
    tree: RawCliqueTree
    paths: list
    seed: int | None = None
    valid: bool | None = None

    @property
    def M(self) -> int:
        return self.tree.M

    @property
    def n(self) -> int:
        return len(self.paths)


def _path_counts(parent, paths, depth):
    """Paths through each node and through each edge (child, parent)."""
    M = len(parent) - 1
    node = np.zeros(M + 1, dtype=np.int64)
    edge = np.zeros(M + 1, dtype=np.int64)
    lcas = []
    for u, v in paths:
        z = naive_lca(parent, u, v, depth)
        lcas.append(z)
        node[u] += 1
        node[v] += 1
        node[z] -= 1
        if parent[z]:
            node[parent[z]] -= 1
        edge[u] += 1
        edge[v] += 1
        edge[z] -= 2
    order = sorted(range(1, M + 1), key=lambda x: -depth[x])
    for x in order:
        p = parent[x]
        if p:
            node[p] += node[x]
            edge[p] += edge[x]
    return node, edge, lcas


def validate_instance(inst: Instance) -> ValidityReport:
    tree, paths = inst.tree, inst.paths
    M, parent = tree.M, tree.parent
    rep = ValidityReport(valid=True)
    for k, (u, v) in enumerate(paths, 1):
        if not (1 <= u <= M and 1 <= v <= M):
            rep.bad_endpoints.append(k)
    if rep.bad_endpoints:
        rep.valid = False
        return rep
    depth = _depths(parent)
    node, edge, lcas = _path_counts(parent, paths, depth)
    rep.uncovered = [v for v in range(1, M + 1) if node[v] == 0]
    lca_set = set(lcas)
    rep.non_lca = [v for v in range(1, M + 1) if v not in lca_set]
    for c in range(1, M + 1):
        p = parent[c]
        if not p:
            continue
        # S(p) subset of S(c) iff every path through p uses the edge, likewise for c
        if node[p] == edge[c]:
            rep.non_maximal.append((p, c))
        if node[c] == edge[c]:
            rep.non_maximal.append((c, p))
    rep.valid = not (rep.uncovered or rep.non_lca or rep.non_maximal)
    return rep


def gen_instance(M: int, n: int, seed: int, span: int | None = None) -> Instance:
    """Random valid instance with M tree nodes and n paths.

    Tree: node k attaches to a uniform earlier node, then labels 2..M are
    shuffled (node 1 stays the root).  Every node v gets one path with lca v
    that descends into at most two child subtrees.  The other n - M paths
    join two uniform nodes, or, when ``span`` is given, a node and the end of
    a random walk of at most ``span`` steps from it (bounded-degree graphs
    for large benchmarks).  Maximality is restored by cutting a node's own
    path back to the node itself wherever that path made the node's path set
    a subset of a child's.
    """
    if not 1 <= M <= n:
        raise ValueError(f"need 1 <= M <= n, got M={M}, n={n}")
    rng = random.Random(seed)
    base = [0, 0] + [rng.randint(1, k - 1) for k in range(2, M + 1)]
    perm = list(range(2, M + 1))
    rng.shuffle(perm)
    lab = [0, 1] + perm
    parent = [0] * (M + 1)
    for k in range(2, M + 1):
        parent[lab[k]] = lab[base[k]]
    children = [[] for _ in range(M + 1)]
    for v in range(2, M + 1):
        children[parent[v]].append(v)

    def descend(x):
        while children[x] and rng.random() < 0.5:
            x = rng.choice(children[x])
        return x

    own = []
    for v in range(1, M + 1):
        ch = children[v]
        ends = []
        if ch and rng.random() < 0.6:
            picks = rng.sample(ch, min(len(ch), rng.choice((1, 2))))
            ends = [descend(c) for c in picks]
        while len(ends) < 2:
            ends.append(v)
        own.append([ends[0], ends[1]])

    extra = []
    nbrs = None
    for _ in range(n - M):
        u = rng.randint(1, M)
        if span is None:
            w = rng.randint(1, M)
        else:
            if nbrs is None:
                nbrs = [children[x] + ([parent[x]] if parent[x] else []) for x in range(M + 1)]
            w = u
            for _ in range(rng.randint(0, span)):
                if nbrs[w]:
                    w = rng.choice(nbrs[w])
        extra.append((u, w))

    depth = _depths(parent)
    while True:
        node, edge, _ = _path_counts(parent, [tuple(p) for p in own] + extra, depth)
        bad = [(parent[c], c) for c in range(2, M + 1) if node[parent[c]] == edge[c]]
        if not bad:
            break
        for p, c in bad:
            path = own[p - 1]
            for end in (0, 1):
                x = path[end]
                while depth[x] > depth[c]:
                    x = parent[x]
                if x == c:
                    path[end] = p

    paths = [tuple(p) for p in own] + extra
    rng.shuffle(paths)
    inst = Instance(RawCliqueTree(M, tuple(parent)), paths, seed)
    inst.valid = validate_instance(inst).valid
    return inst


# ---------------------------------------------------------------------------
# text format: "M n", then the M parents, then n lines "l r"

class ParseError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def format_instance(inst: Instance) -> str:
    lines = [f"{inst.M} {inst.n}", " ".join(str(p) for p in inst.tree.parent[1:])]
    lines += [f"{u} {v}" for u, v in inst.paths]
    return "\n".join(lines) + "\n"


def _ints(text: str, line: int, count: int | None = None) -> list:
    try:
        vals = [int(tok) for tok in text.split()]
    except ValueError:
        raise ParseError(line, f"expected integers, got {text.strip()!r}") from None
    if count is not None and len(vals) != count:
        raise ParseError(line, f"expected {count} integers, got {len(vals)}")
    return vals


def parse_instance(text: str) -> Instance:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError(1, "missing header 'M n'")
    M, n = _ints(lines[0], 1, 2)
    if M < 1 or n < 0:
        raise ParseError(1, "M must be >= 1 and n >= 0")
    if len(lines) < 2:
        raise ParseError(2, "missing parent line")
    parent = _ints(lines[1], 2, M)
    for v, p in enumerate(parent, 1):
        if not 0 <= p <= M:
            raise ParseError(2, f"parent of node {v} is {p}, outside [0, {M}]")
    body = [ln for ln in lines[2:]]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != n:
        raise ParseError(3 + min(len(body), n), f"expected {n} path lines, got {len(body)}")
    paths = []
    for k, ln in enumerate(body, 3):
        u, v = _ints(ln, k, 2)
        if not (1 <= u <= M and 1 <= v <= M):
            raise ParseError(k, f"endpoint outside [1, {M}]")
        paths.append((u, v))
    tree = RawCliqueTree(M, tuple(parent))
    problem = tree_problem(tree.parent)
    if problem:
        raise ParseError(2, problem)
    return Instance(tree, paths)


def tree_problem(parent) -> str | None:
    """Why ``parent`` (index 0 unused) is not a single rooted tree, or None."""
    M = len(parent) - 1
    roots = [v for v in range(1, M + 1) if parent[v] == 0]
    if len(roots) != 1:
        return f"expected exactly one root (parent 0), found {len(roots)}"
    try:
        _depths(parent)
    except ValueError as exc:
        return str(exc)
    return None
