"""Command-line entry point.

Subcommands: generate (instance files), run (benchmark CSV), compare
(paired-difference summary), selftest (brute-force oracle suites).
Exit codes: 0 ok, 2 config error, 3 missing input, 4 analysis error.
"""

import argparse
import itertools
import random
import sys

from . import bench
from .bench import AnalysisError, ConfigError
from .search import bfs_connected, most_probable_cut, most_probable_path
from .values import INF

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_MISSING = 3
EXIT_ANALYSIS = 4


def _cmd_generate(args):
    cfg = bench.load_config(args.config)
    out_dir = args.out or cfg["output"]
    if not out_dir:
        raise ConfigError("no output directory (use --out or output= in config)")
    ids = bench.generate_instances(cfg, out_dir)
    print(f"wrote {len(ids)} instances to {out_dir}")
    return EXIT_OK


def _cmd_run(args):
    cfg = bench.load_config(args.config)
    in_dir = args.instances or cfg["instances"]
    if not in_dir:
        raise ConfigError("no instance directory (use --instances or instances=)")
    records = bench.run_bench(cfg, in_dir)
    out = args.out or cfg["output"]
    if out:
        with open(out, "w", newline="") as fh:
            bench.write_csv(records, fh)
        print(f"wrote {len(records)} rows to {out}")
    else:
        bench.write_csv(records, sys.stdout)
    return EXIT_OK


def _cmd_compare(args):
    try:
        with open(args.csv) as fh:
            rows = bench.read_csv(fh)
    except FileNotFoundError:
        print(f"missing input: {args.csv}", file=sys.stderr)
        return EXIT_MISSING
    if len({r["algorithm"] for r in rows}) < 2:
        raise AnalysisError("comparison needs at least two algorithms in the CSV")
    summaries = bench.compare(rows, args.baseline)
    sys.stdout.write(bench.format_compare(summaries))
    return EXIT_OK


def _enumerate_best_path(n, edges, p_w, s, t):
    """Brute-force most probable path by path enumeration (tiny graphs)."""
    adj = [[] for _ in range(n)]
    for e, (u, v) in enumerate(edges):
        if p_w[e] != INF:
            adj[u].append((v, e))
            adj[v].append((u, e))
    best = [INF]

    def walk(v, used, total):
        if total >= best[0]:
            return
        if v == t:
            best[0] = total
            return
        for w, e in adj[v]:
            if w not in used:
                walk(w, used | {w}, total + p_w[e])

    walk(s, {s}, 0.0)
    return best[0]


def _enumerate_best_cut(n, edges, p_c, s, t):
    """Brute-force min cut over all 2^(n-2) s/t vertex partitions."""
    others = [v for v in range(n) if v not in (s, t)]
    best = INF
    for bits in itertools.product([0, 1], repeat=len(others)):
        side = {s}
        side.update(v for v, b in zip(others, bits) if b)
        total = 0.0
        for e, (u, v) in enumerate(edges):
            if (u in side) != (v in side):
                total += p_c[e]
                if total >= best:
                    break
        if total < best:
            best = total
    return best


def _cmd_selftest(args):
    """Cross-check the search kernels against brute-force oracles."""
    rng = random.Random(args.seed)
    n_fail = 0
    for trial in range(args.trials):
        n = rng.randint(2, 8)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rng.shuffle(pairs)
        edges = sorted(pairs[: rng.randint(1, len(pairs))])
        s, t = 0, n - 1
        p_w = [rng.choice([INF, round(rng.uniform(0.01, 3.0), 4)]) for _ in edges]
        path = most_probable_path(n, edges, p_w, s, t)
        best = _enumerate_best_path(n, edges, p_w, s, t)
        if path is None:
            ok = best == INF
        else:
            ok = abs(path.total_weight - best) <= 1e-9 * max(1.0, abs(best))
        if not ok:
            print(f"path mismatch on trial {trial}")
            n_fail += 1
        p_c = [rng.choice([INF, round(rng.uniform(0.01, 3.0), 4)]) for _ in edges]
        cut = most_probable_cut(n, edges, p_c, [s], [t])
        best = _enumerate_best_cut(n, edges, p_c, s, t)
        if cut is None:
            ok = best == INF
        else:
            ok = abs(cut.total_capacity - best) <= 1e-9 * max(1.0, abs(best))
        if not ok:
            print(f"cut mismatch on trial {trial}")
            n_fail += 1
        if bfs_connected(n, edges, s, t) != (
            _enumerate_best_path(n, edges, [0.0] * len(edges), s, t) != INF
        ):
            print(f"bfs mismatch on trial {trial}")
            n_fail += 1
    if n_fail:
        print(f"selftest FAILED: {n_fail} mismatches")
        return EXIT_ANALYSIS
    print(f"selftest ok: {args.trials} trials, 0 mismatches")
    return EXIT_OK


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="pathcut", description="Roadmap feasibility-detection benchmark harness"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="write instance files for a sweep")
    p_gen.add_argument("config")
    p_gen.add_argument("--out", help="output directory (overrides config)")
    p_gen.set_defaults(func=_cmd_generate)

    p_run = sub.add_parser("run", help="run algorithms, emit benchmark CSV")
    p_run.add_argument("config")
    p_run.add_argument("--instances", help="instance directory (overrides config)")
    p_run.add_argument("--out", help="CSV path; stdout when omitted")
    p_run.set_defaults(func=_cmd_run)

    p_cmp = sub.add_parser("compare", help="paired differences against a baseline")
    p_cmp.add_argument("csv")
    p_cmp.add_argument("--baseline", default="idpc")
    p_cmp.set_defaults(func=_cmd_compare)

    p_self = sub.add_parser("selftest", help="brute-force kernel cross-check")
    p_self.add_argument("--trials", type=int, default=200)
    p_self.add_argument("--seed", type=int, default=0)
    p_self.set_defaults(func=_cmd_selftest)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"missing input: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except AnalysisError as exc:
        print(f"analysis error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS


if __name__ == "__main__":
    sys.exit(main())
