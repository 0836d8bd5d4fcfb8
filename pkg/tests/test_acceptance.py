"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` (the lines are printed even
without ``-s``).  Criteria 1, 2, 3, 6, 7 and 9 share one corpus of 100
seeded instances built once per session.
"""
import math
import random
from collections import Counter

import numpy as np
import pytest

from pathgraph.bitseq import BitVector, NonDecSeq
from pathgraph.level_rep import LevelStructure
from pathgraph.oracle import gen_instance
from pathgraph.succinct_rep import SuccinctPathGraph
from pathgraph.treeprep import PathSet, compute_pi, prepare
from pathgraph.verify import build_all, compare
from pathgraph.wavelet import WaveletTree

CORPUS = [(10, 40), (50, 30), (200, 25), (1000, 5)]     # (n, instance count)
TOUCH_CONSTANT = 8


def ceil_log(n):
    return math.ceil(math.log2(n)) if n > 1 else 0


def report(capsys, k, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {k}] {'PASS' if ok else 'FAIL'}: {detail}")


@pytest.fixture(scope="module")
def corpus():
    items = []
    seed = 1000
    for n, count in CORPUS:
        for _ in range(count):
            rng = random.Random(seed)
            M = rng.randint(max(1, n // 3), n)
            inst = gen_instance(M, n, seed, span=None if seed % 3 else 4)
            assert inst.valid
            items.append((inst, build_all(inst)))
            seed += 1
    return items


def test_criterion_1_oracle_equivalence(corpus, capsys):
    bad = []
    for inst, b in corpus:
        found = compare({"succinct": b.succinct, "level": b.level}, b.oracle,
                        pair_cutoff=200, sampled_pairs=100_000, seed=inst.seed)
        bad += [f"seed {inst.seed}: {x}" for x in found]
    report(capsys, 1, not bad, f"{len(corpus)} instances, both representations vs oracle"
           + (f"; first mismatch {bad[0]}" if bad else ""))
    assert not bad


def test_criterion_2_structural_bounds(corpus, capsys):
    worst_depth = worst_k = worst_level = 0.0
    ok = True
    for inst, b in corpus:
        n = inst.n
        pt = prepare(inst.tree)
        ps = PathSet.from_original(pt, inst.paths)
        depth = pt.K - 1                            # light edges on the deepest root path
        ok &= depth <= ceil_log(n)
        worst_depth = max(worst_depth, depth / max(ceil_log(n), 1))
        for l, r in zip(ps.l.tolist(), ps.r.tolist()):
            k = compute_pi(pt.nav, l, r).k
            ok &= k <= 2 * ceil_log(n) + 1
            worst_k = max(worst_k, k / (2 * ceil_log(n) + 1))
        for ig in b.level.IT:
            ok &= len(ig) <= 2 * n
            worst_level = max(worst_level, len(ig) / (2 * n))
    report(capsys, 2, ok, f"max depth/ceil(log n)={worst_depth:.2f}, "
           f"max k/(2 ceil(log n)+1)={worst_k:.2f}, max |V(U_l)|/2n={worst_level:.2f}")
    assert ok


def test_criterion_3_disjoint_union(corpus, capsys):
    dup = 0
    queries = 0
    for inst, b in corpus:
        g = b.succinct
        for i in range(1, g.n + 1):
            raw = g.neighbourhood_raw(i)
            dup += len(raw) - len(set(raw))
            queries += 1
    report(capsys, 3, dup == 0, f"{queries} neighbourhood queries, {dup} duplicates before dedup")
    assert dup == 0


@pytest.fixture(scope="module")
def space_rows():
    rows = {}
    for e in range(10, 17):
        n = 1 << e
        inst = gen_instance(n // 2, n, e, span=4)
        pt = prepare(inst.tree)
        ps = PathSet.from_original(pt, inst.paths)
        rows[n] = (pt, ps)
    return rows


def test_criterion_4_space_succinct(space_rows, capsys):
    ok = True
    parts = []
    for n in (1 << 14, 1 << 15, 1 << 16):
        pt, ps = space_rows[n]
        rep = SuccinctPathGraph.build(pt, ps).space_report()
        lg = ceil_log(n)
        ratio = rep["total"] / (n * lg)
        consts = {k: rep[k]["total"] / n for k in ("BP", "F", "J", "D")}
        ok &= ratio <= 1.5 and all(c <= 4 for c in consts.values())
        ok &= rep["S"]["core"] == n * lg
        parts.append(f"n=2^{lg}: {ratio:.3f} n*ceil(log n) "
                     f"[{' '.join(f'{k}={v:.2f}n' for k, v in consts.items())}]")
    report(capsys, 4, ok, "; ".join(parts))
    assert ok


def test_criterion_5_space_level(space_rows, capsys):
    ratios = []
    for n, (pt, ps) in sorted(space_rows.items()):
        rep = LevelStructure.build(pt, ps).space_report()
        ratios.append(rep["total"] / (n * ceil_log(n) ** 2))
    c = max(ratios)
    ok = all(b <= a * 1.10 for a, b in zip(ratios, ratios[1:]))
    report(capsys, 5, ok, f"c={c:.3f}; bits/(n ceil(log n)^2) for n=2^10..2^16: "
           + " ".join(f"{r:.3f}" for r in ratios))
    assert ok


def test_criterion_6_op_counts(corpus, space_rows, capsys):
    ok = True
    worst_alpha = worst_probe = worst_reads = worst_touch = 0.0
    for inst, b in corpus:
        n = inst.n
        rng = random.Random(inst.seed)
        g, ls = b.succinct, b.level
        for _ in range(300):
            i, j = rng.randint(1, n), rng.randint(1, n)
            st = Counter()
            g.adjacency(i, j, st)
            ok &= st["check_alpha"] <= 2 * ceil_log(n) + 1
            worst_alpha = max(worst_alpha, st["check_alpha"] / (2 * ceil_log(n) + 1))
            st = Counter()
            ls.adjacency(i, j, st)
            ok &= st["ig_probes"] <= 4 and st["array_reads"] <= 8
            worst_probe = max(worst_probe, st["ig_probes"])
            worst_reads = max(worst_reads, st["array_reads"])
        for i in range(1, n + 1):
            st = Counter()
            d = len(ls.neighbourhood(i, st))
            ok &= st["touches"] <= TOUCH_CONSTANT * (d + 1)
            worst_touch = max(worst_touch, st["touches"] / (d + 1))
    # level adjacency stays flat as n grows
    for n in (1 << 10, 1 << 12, 1 << 14):
        pt, ps = space_rows[n]
        ls = LevelStructure.build(pt, ps)
        rng = random.Random(n)
        for _ in range(500):
            st = Counter()
            ls.adjacency(rng.randint(1, n), rng.randint(1, n), st)
            ok &= st["ig_probes"] <= 4 and st["array_reads"] <= 8
    report(capsys, 6, ok, f"max check_alpha/(2 ceil(log n)+1)={worst_alpha:.2f}; level adj "
           f"max probes={worst_probe}, reads={worst_reads}; max touches/(d+1)={worst_touch:.2f} "
           f"(limit {TOUCH_CONSTANT})")
    assert ok


def test_criterion_7_degree_strategies(corpus, capsys):
    bad = checked = heavy = 0
    for inst, b in corpus:
        g = b.succinct
        for i in range(1, g.n + 1):
            checked += 1
            heavy += g.D.access(i)
            bad += g.degree_count(i) != g.degree_enum(i)
    report(capsys, 7, bad == 0, f"{checked} paths ({heavy} with D=1), {bad} disagreements")
    assert bad == 0


def test_criterion_8_primitives(capsys):
    rng = np.random.default_rng(8)
    bad = 0
    for m in (1, 100, 5000, 70_000):
        bits = (rng.random(m) < rng.random()).astype(np.uint8)
        B = BitVector(bits)
        pre = np.concatenate([[0], np.cumsum(bits)])
        for i in range(m + 1):
            bad += B.rank1(i) != pre[i] or B.rank0(i) != i - pre[i]
        for k in range(1, B.ones + 1):
            bad += B.rank1(B.select1(k)) != k or B.access(B.select1(k)) != 1
        for k in range(1, B.zeros + 1):
            bad += B.rank0(B.select0(k)) != k or B.access(B.select0(k)) != 0
        bad += B.select1(B.ones + 1) != 0 or B.select0(B.zeros + 1) != 0
    vals = np.sort(rng.integers(1, 500, 2000))
    S = NonDecSeq(vals, universe=600)
    bad += S.to_list() != vals.tolist()
    rects = 0
    for n in (2, 17, 1000, 4096):
        ys = rng.permutation(n) + 1
        W = WaveletTree(ys)
        bad += [W.access(x) for x in range(1, n + 1)] != ys.tolist()
        xs = np.arange(1, n + 1)
        for _ in range(1000):
            x1, x2 = sorted(rng.integers(1, n + 1, 2).tolist())
            y1, y2 = sorted(rng.integers(1, n + 1, 2).tolist())
            exp = xs[(xs >= x1) & (xs <= x2) & (ys >= y1) & (ys <= y2)].tolist()
            bad += W.search((x1, x2), (y1, y2)) != exp or W.count((x1, x2), (y1, y2)) != len(exp)
            rects += 1
    report(capsys, 8, bad == 0, f"rank/select identities on 4 vectors, {rects} wavelet "
           f"rectangles, {bad} mismatches")
    assert bad == 0


def test_criterion_9_round_trip(corpus, capsys):
    bad = []
    for inst, b in corpus:
        loaded = {}
        for name, rep in (("succinct", b.succinct), ("level", b.level)):
            data = rep.to_bytes()
            again = build_all(inst) if name == "succinct" else None
            if again is not None:
                if again.succinct.to_bytes() != data or again.level.to_bytes() != b.level.to_bytes():
                    bad.append(f"seed {inst.seed}: rebuild is not bit-exact")
            loaded[name] = type(rep).from_bytes(data)
            if loaded[name].to_bytes() != data:
                bad.append(f"seed {inst.seed}: {name} reserialization differs")
        bad += [f"seed {inst.seed}: {x}" for x in
                compare(loaded, b.oracle, pair_cutoff=200, sampled_pairs=100_000, seed=inst.seed)]
    report(capsys, 9, not bad, f"{len(corpus)} instances loaded from blobs and re-checked"
           + (f"; first problem {bad[0]}" if bad else ""))
    assert not bad
