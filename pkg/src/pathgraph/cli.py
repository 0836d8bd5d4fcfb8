"""Command-line front end.

    pathgraph gen M n [--seed S] [--span K] [--out FILE]
    pathgraph build INSTANCE [--mode succinct|level] --out BLOB
    pathgraph query BLOB adj I J | nbr I | deg I
    pathgraph verify [INSTANCE] [--blob BLOB] [--trials T] [--seed S] [--max-n N]
    pathgraph bench [--sizes N ...] [--seed S] [--mode succinct|level|both]

Path indices on the command line are input positions (1-based line order
of the instance file).  Exit codes: 0 ok, 1 usage or I/O error, 2 parse
error, 3 verification mismatch.
"""
from __future__ import annotations

import argparse
import math
import random
import sys
import time
from collections import Counter

from ._frame import FormatError, peek_magic
from .level_rep import LevelStructure
from .oracle import (ParseError, build_oracle, format_instance, gen_instance,
                     parse_instance, validate_instance)
from .succinct_rep import SuccinctPathGraph
from .treeprep import PathSet, prepare
from .verify import build_all, compare, query_input

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_instance(path: str):
    with open(path) as fh:
        return parse_instance(fh.read())


def load_blob(data: bytes):
    magic = peek_magic(data)
    if magic == SuccinctPathGraph.MAGIC:
        return SuccinctPathGraph.from_bytes(data)
    if magic == LevelStructure.MAGIC:
        return LevelStructure.from_bytes(data)
    raise FormatError(f"unknown blob magic {magic!r}")


def _print_report(rep: dict, out) -> None:
    for key, val in rep.items():
        if isinstance(val, dict):
            val = " ".join(f"{k}={v}" for k, v in val.items())
        print(f"{key}: {val}", file=out)


# -- commands ----------------------------------------------------------------

def cmd_gen(args, out) -> int:
    if not 1 <= args.M <= args.n:
        raise UsageError(f"need 1 <= M <= n, got M={args.M} n={args.n}")
    inst = gen_instance(args.M, args.n, args.seed, span=args.span)
    text = format_instance(inst)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    print(validate_instance(inst).summary(), file=sys.stderr if not args.out else out)
    return EXIT_OK


def cmd_build(args, out) -> int:
    inst = _read_instance(args.instance)
    pt = prepare(inst.tree)
    ps = PathSet.from_original(pt, inst.paths)
    cls = SuccinctPathGraph if args.mode == "succinct" else LevelStructure
    rep = cls.build(pt, ps)
    with open(args.out, "wb") as fh:
        fh.write(rep.to_bytes())
    print(f"mode: {args.mode}", file=out)
    _print_report(rep.space_report(), out)
    return EXIT_OK


def cmd_query(args, out) -> int:
    with open(args.blob, "rb") as fh:
        rep = load_blob(fh.read())
    need = 2 if args.kind == "adj" else 1
    if len(args.idx) != need:
        raise UsageError(f"{args.kind} takes {need} index argument(s)")
    for i in args.idx:
        if not 1 <= i <= rep.n:
            raise UsageError(f"path index {i} outside [1, {rep.n}]")
    res = query_input(rep, args.kind, *args.idx)
    if args.kind == "adj":
        print("true" if res else "false", file=out)
    elif args.kind == "nbr":
        print(" ".join(map(str, res)), file=out)
    else:
        print(res, file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    failures = 0
    if args.instance:
        inst = _read_instance(args.instance)
        if args.blob:
            oracle = build_oracle(inst.tree, inst.paths)
            try:
                with open(args.blob, "rb") as fh:
                    reps = {"blob": load_blob(fh.read())}
                if reps["blob"].n != inst.n:
                    raise ValueError(f"blob holds {reps['blob'].n} paths, instance {inst.n}")
            except (FormatError, ValueError) as exc:
                print(f"FAIL {args.instance}: blob unreadable: {exc}", file=out)
                return EXIT_MISMATCH
        else:
            built = build_all(inst)
            oracle = built.oracle
            reps = {"succinct": built.succinct, "level": built.level}
        bad = compare(reps, oracle, seed=args.seed)
        _report(f"{args.instance}", bad, out)
        return EXIT_MISMATCH if bad else EXIT_OK
    rng = random.Random(args.seed)
    for t in range(args.trials):
        s = rng.randrange(1 << 31)
        n = rng.randint(1, args.max_n)
        M = rng.randint(1, n)
        inst = gen_instance(M, n, s)
        built = build_all(inst)
        bad = compare({"succinct": built.succinct, "level": built.level}, built.oracle, seed=s)
        _report(f"trial {t} seed {s} M={M} n={n}", bad, out)
        failures += bool(bad)
    print(f"{args.trials - failures}/{args.trials} trials passed", file=out)
    return EXIT_MISMATCH if failures else EXIT_OK


def _report(label: str, bad: list, out) -> None:
    if bad:
        print(f"FAIL {label}", file=out)
        for line in bad:
            print(f"  {line}", file=out)
    else:
        print(f"PASS {label}", file=out)


def _mean(c: Counter, keys, count: int) -> float:
    return sum(c[k] for k in keys) / max(count, 1)


def bench_row(n: int, seed: int, mode: str, queries: int = 200) -> dict:
    """Build one generated instance (M = n/2, local paths) and measure it."""
    M = max(1, n // 2)
    inst = gen_instance(M, n, seed, span=4)
    pt = prepare(inst.tree)
    ps = PathSet.from_original(pt, inst.paths)
    cls = SuccinctPathGraph if mode == "succinct" else LevelStructure
    t0 = time.perf_counter()
    rep = cls.build(pt, ps)
    build_s = time.perf_counter() - t0
    space = rep.space_report()
    lg = max(1, math.ceil(math.log2(n))) if n > 1 else 1
    rng = random.Random(seed)
    idx = [rng.randint(1, n) for _ in range(queries)]
    adj, nbr, deg = Counter(), Counter(), Counter()
    for i in idx:
        rep.adjacency(i, rng.randint(1, n), adj)
        rep.neighbourhood(i, nbr)
        if mode == "succinct":
            rep.degree(i, deg)
    if mode == "succinct":
        ops = (_mean(adj, ["check_alpha"], queries), _mean(nbr, ["wt_nodes"], queries),
               _mean(deg, ["wt_nodes"], queries))
        ratio = space["total"] / (n * lg)
    else:
        ops = (_mean(adj, ["ig_probes", "array_reads"], queries),
               _mean(nbr, ["touches"], queries), 1.0)
        ratio = space["total"] / (n * lg * lg)
    return {"n": n, "M": M, "mode": mode, "build_s": build_s, "bits": space["total"],
            "ratio": ratio, "adj_ops": ops[0], "nbr_ops": ops[1], "deg_ops": ops[2],
            "log2n": lg}


def cmd_bench(args, out) -> int:
    modes = ["succinct", "level"] if args.mode == "both" else [args.mode]
    print(f"{'mode':<9}{'n':>8}{'M':>8}{'build_s':>9}{'bits':>11}{'ratio':>8}"
          f"{'log2n':>6}{'adj_ops':>9}{'nbr_ops':>9}{'deg_ops':>9}", file=out)
    print("ratio = bits/(n*ceil(log2 n)) for succinct, bits/(n*ceil(log2 n)^2) for level",
          file=out)
    for mode in modes:
        for n in args.sizes:
            r = bench_row(n, args.seed, mode, args.queries)
            print(f"{mode:<9}{r['n']:>8}{r['M']:>8}{r['build_s']:>9.2f}{r['bits']:>11}"
                  f"{r['ratio']:>8.3f}{r['log2n']:>6}{r['adj_ops']:>9.2f}"
                  f"{r['nbr_ops']:>9.2f}{r['deg_ops']:>9.2f}", file=out)
    return EXIT_OK


# -- entry point --------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pathgraph", description="Compressed path-graph representations.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a random valid instance")
    g.add_argument("M", type=int)
    g.add_argument("n", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--span", type=int, default=None,
                   help="extra paths walk at most this many steps (default: uniform pairs)")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("build", help="build and serialize a representation")
    b.add_argument("instance")
    b.add_argument("--mode", choices=["succinct", "level"], default="succinct")
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("query", help="query a serialized representation")
    q.add_argument("blob")
    q.add_argument("kind", choices=["adj", "nbr", "deg"])
    q.add_argument("idx", type=int, nargs="+")
    q.set_defaults(func=cmd_query)

    v = sub.add_parser("verify", help="compare both representations with the oracle")
    v.add_argument("instance", nargs="?")
    v.add_argument("--blob", help="check this serialized blob instead of fresh builds")
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--max-n", type=int, default=200)
    v.set_defaults(func=cmd_verify)

    be = sub.add_parser("bench", help="space and operation counts over sizes")
    be.add_argument("--sizes", type=int, nargs="+", default=[1 << 10, 1 << 12, 1 << 14])
    be.add_argument("--seed", type=int, default=0)
    be.add_argument("--mode", choices=["succinct", "level", "both"], default="both")
    be.add_argument("--queries", type=int, default=200)
    be.set_defaults(func=cmd_bench)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = make_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FormatError as exc:
        print(f"blob error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UsageError, ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
