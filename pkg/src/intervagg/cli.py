"""Command-line front end: ``intervagg solve|compare|sweep|bench|verify``.

Reports go to stdout as one JSON object per line (or CSV rows with
``--output csv``); diagnostics go to stderr.

Exit codes: 0 success, 1 bound violation, 2 input error, 3 parameter error,
4 resource guard.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .core import EPS_SUM, aggregate, entropy, validate_distribution
from .errors import InputError, InstanceTooLarge, InvalidM
from .exact_dp import solve_exact
from .greedy import GAP1, GAP2, greedy1, greedy2
from .inputs import InputSpec, load_input
from .metrics import metrics_report
from .oracle import MAX_CANDIDATES, brute_force, count_partitions

EXIT_OK, EXIT_BOUND, EXIT_INPUT, EXIT_PARAM, EXIT_GUARD = 0, 1, 2, 3, 4

BOUND_TOL = 1e-9
# exact DP refuses instances with n*n*m above this many cell-steps
DP_WORK_LIMIT = 4 * 10**10

CSV_FIELDS = ["n", "m", "algorithm", "boundaries", "q", "entropy_bits", "gap", "elapsed_ms"]

BENCH_GENERATOR = (
    "numpy PCG64 seeded with SeedSequence([seed, n]); n standard exponential "
    "draws, divided by their sum"
)


class ResourceGuard(Exception):
    pass


def _run(algorithm, p, m, max_candidates=MAX_CANDIDATES):
    n = len(p)
    if not 1 <= m <= n:
        raise InvalidM(m, n)
    if algorithm == "exact":
        if n * n * m > DP_WORK_LIMIT:
            raise ResourceGuard(f"exact DP on n={n}, m={m} exceeds the work limit")
        return solve_exact(p, m), None
    if algorithm == "greedy1":
        return greedy1(p, m)
    if algorithm == "greedy2":
        return greedy2(p, m)
    if algorithm == "oracle":
        return brute_force(p, m, max_candidates), None
    raise ValueError(algorithm)


def _timed(algorithm, p, m, **kw):
    t0 = time.perf_counter()
    res, diag = _run(algorithm, p, m, **kw)
    return res, diag, (time.perf_counter() - t0) * 1e3


def result_record(p, res, elapsed_ms=None, labels=None, nats=False):
    """Serializable view of one solver result, round-trip checked against ``aggregate``."""
    q = aggregate(p, res.partition)
    if np.max(np.abs(np.asarray(q) - np.asarray(res.q))) > 1e-12 or abs(entropy(q) - res.entropy) > 1e-9:
        raise RuntimeError(f"{res.algorithm}: boundaries do not reproduce the reported vector")
    rec = {
        "algorithm": res.algorithm,
        "boundaries": list(res.boundaries),
        "q": res.q.tolist(),
        "entropy_bits": res.entropy,
        "metrics": metrics_report(res.q).to_dict(),
        "elapsed_ms": elapsed_ms,
    }
    if nats:
        rec["entropy_nats"] = res.entropy * math.log(2)
    if labels is not None:
        rec["classes"] = [[labels[a - 1], labels[b - 1]] for a, b in res.partition.blocks()]
    return rec


def input_digest(loaded):
    p = loaded.p
    return {
        "n": len(p),
        "sum": loaded.raw_sum,
        "entropy_bits": entropy(p),
        "sha256": hashlib.sha256(p.weights.tobytes()).hexdigest(),
    }


def structure_flags(p, m, res, diag, algorithm):
    """Size-class checks on a greedy output."""
    cap = 2.0 / m
    blocks = res.partition.blocks()
    q = res.q.tolist()
    if algorithm == "greedy1":
        return {"composites_le_2_over_m": all(a == b or w <= cap + 1e-12 for (a, b), w in zip(blocks, q))}
    return {
        "large_are_singletons": all(a == b for (a, b), w in zip(blocks, q) if w > cap),
        "A2_ge_half_A": diag.A2 >= diag.A / 2 - 1e-12,
    }


def compare_report(loaded, m, timing=False, nats=False):
    p = loaded.p
    n = len(p)
    recs, results, diags = [], {}, {}
    for alg in ("exact", "greedy1", "greedy2"):
        res, diag, ms = _timed(alg, p, m)
        results[alg], diags[alg] = res, diag
        recs.append(result_record(p, res, ms if timing else None, loaded.labels, nats))
    h_star = results["exact"].entropy
    gaps = {alg: h_star - results[alg].entropy for alg in ("greedy1", "greedy2")}
    bounds = {
        "greedy1": {"limit": GAP1, "pass": results["greedy1"].entropy >= h_star - GAP1 - BOUND_TOL},
        "greedy2": {"limit": GAP2, "pass": results["greedy2"].entropy >= h_star - GAP2 - BOUND_TOL},
    }
    structure = {alg: structure_flags(p, m, results[alg], diags[alg], alg) for alg in ("greedy1", "greedy2")}
    for rec in recs:
        rec["gap"] = gaps.get(rec["algorithm"], 0.0)
    return {
        "n": n,
        "m": m,
        "algorithm": "compare",
        "input": input_digest(loaded),
        "results": recs,
        "gaps": gaps,
        "bounds": bounds,
        "structure": structure,
    }


def solve_report(loaded, m, algorithm, timing=False, nats=False, max_candidates=MAX_CANDIDATES):
    res, _, ms = _timed(algorithm, loaded.p, m, max_candidates=max_candidates)
    rec = result_record(loaded.p, res, ms if timing else None, loaded.labels, nats)
    out = {"n": len(loaded.p), "m": m, "input": input_digest(loaded)}
    out.update(rec)
    out["gaps"] = {}
    return out


def _csv_rows(report):
    recs = report["results"] if "results" in report else [report]
    for rec in recs:
        yield {
            "n": report["n"],
            "m": report["m"],
            "algorithm": rec["algorithm"],
            "boundaries": " ".join(map(str, rec["boundaries"])),
            "q": " ".join(repr(x) for x in rec["q"]),
            "entropy_bits": repr(rec["entropy_bits"]),
            "gap": "" if rec.get("gap") is None else repr(rec["gap"]),
            "elapsed_ms": "" if rec["elapsed_ms"] is None else repr(rec["elapsed_ms"]),
        }


class Emitter:
    def __init__(self, fmt, stream):
        self.fmt = fmt
        self.stream = stream
        self._writer = None

    def emit(self, report):
        if self.fmt == "json":
            self.stream.write(json.dumps(report, sort_keys=False) + "\n")
            return
        if self._writer is None:
            self._writer = csv.DictWriter(self.stream, fieldnames=CSV_FIELDS, lineterminator="\n")
            self._writer.writeheader()
        for row in _csv_rows(report):
            self._writer.writerow(row)


def parse_m_range(text):
    try:
        a, b = text.split("..")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _input_spec(args):
    return InputSpec(path=args.input, format=args.format, counts=args.counts,
                     normalize=args.normalize, eps_sum=args.tolerance)


def cmd_solve(args, out):
    loaded = load_input(_input_spec(args))
    out.emit(solve_report(loaded, args.m, args.algorithm, args.timing, args.nats, args.max_candidates))
    return EXIT_OK


def cmd_compare(args, out):
    loaded = load_input(_input_spec(args))
    report = compare_report(loaded, args.m, args.timing, args.nats)
    out.emit(report)
    if not all(b["pass"] for b in report["bounds"].values()):
        print("error: approximation bound violated", file=sys.stderr)
        return EXIT_BOUND
    return EXIT_OK


def cmd_sweep(args, out):
    loaded = load_input(_input_spec(args))
    lo, hi = args.m_range
    n = len(loaded.p)
    for m in (lo, hi):
        if not 1 <= m <= n:
            raise InvalidM(m, n)
    prev = -math.inf
    for m in range(lo, hi + 1):
        report = solve_report(loaded, m, args.algorithm, args.timing, args.nats, args.max_candidates)
        if args.algorithm in ("exact", "oracle") and report["entropy_bits"] < prev - 1e-12:
            print(f"warning: optimum decreased at m={m}", file=sys.stderr)
        prev = report["entropy_bits"]
        out.emit(report)
    return EXIT_OK


def bench_instance(seed, n):
    """Deterministic random distribution of length ``n`` for benchmark seed ``seed``."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, n])))
    return validate_distribution(rng.standard_exponential(n), "renormalize")


def bench_report(n_list, m_list, seed, algorithms, repeat=1):
    cells = []
    for n in n_list:
        p = bench_instance(seed, n)
        digest = hashlib.sha256(p.weights.tobytes()).hexdigest()
        for m in m_list:
            for alg in algorithms:
                cell = {"n": n, "m": m, "algorithm": alg, "instance_sha256": digest}
                if not 1 <= m <= n:
                    cell["skipped"] = "m out of range"
                    cells.append(cell)
                    continue
                try:
                    times = []
                    for _ in range(repeat):
                        res, _, ms = _timed(alg, p, m)
                        times.append(ms)
                except (ResourceGuard, InstanceTooLarge) as exc:
                    cell["skipped"] = str(exc)
                    cells.append(cell)
                    continue
                cell.update(
                    elapsed_ms=min(times),
                    entropy_bits=res.entropy,
                    boundaries_sha256=hashlib.sha256(
                        np.asarray(res.boundaries, dtype=np.int64).tobytes()).hexdigest(),
                )
                cells.append(cell)
    ratios = []
    timed = {(c["algorithm"], c["m"], c["n"]): c["elapsed_ms"] for c in cells if "elapsed_ms" in c}
    ns = sorted(set(n_list))
    for alg in algorithms:
        for m in m_list:
            for a, b in zip(ns, ns[1:]):
                if (alg, m, a) in timed and (alg, m, b) in timed:
                    ratios.append({"algorithm": alg, "m": m, "n_from": a, "n_to": b,
                                   "ratio": timed[(alg, m, b)] / max(timed[(alg, m, a)], 1e-9)})
    return {"algorithm": "bench", "seed": seed, "generator": BENCH_GENERATOR,
            "cells": cells, "ratios": ratios}


def cmd_bench(args, out):
    algs = args.algorithms.split(",")
    for a in algs:
        if a not in ("exact", "greedy1", "greedy2", "oracle"):
            raise argparse.ArgumentTypeError(f"unknown algorithm {a!r}")
    # bench reports carry their own nested structure; always JSON
    out.stream.write(json.dumps(bench_report(args.n_list, args.m_list, args.seed, algs, args.repeat)) + "\n")
    return EXIT_OK


def verify_instances(p, m_values):
    """Check DP optimality (against the oracle when small) and both greedy bounds."""
    tally = {"instances": 0, "oracle_mismatch": 0, "theorem1": 0, "theorem2": 0,
             "greedy1_composites": 0, "greedy2_large_singletons": 0, "greedy2_A2_half": 0,
             "max_gap1": 0.0, "max_gap2": 0.0}
    n = len(p)
    for m in m_values:
        tally["instances"] += 1
        h = solve_exact(p, m).entropy
        if count_partitions(n, m) <= 5000 and abs(brute_force(p, m).entropy - h) > 1e-9:
            tally["oracle_mismatch"] += 1
        r1, d1 = greedy1(p, m)
        r2, d2 = greedy2(p, m)
        tally["max_gap1"] = max(tally["max_gap1"], h - r1.entropy)
        tally["max_gap2"] = max(tally["max_gap2"], h - r2.entropy)
        tally["theorem1"] += r1.entropy < h - GAP1 - BOUND_TOL
        tally["theorem2"] += r2.entropy < h - GAP2 - BOUND_TOL
        f1 = structure_flags(p, m, r1, d1, "greedy1")
        f2 = structure_flags(p, m, r2, d2, "greedy2")
        tally["greedy1_composites"] += not f1["composites_le_2_over_m"]
        tally["greedy2_large_singletons"] += not f2["large_are_singletons"]
        tally["greedy2_A2_half"] += not f2["A2_ge_half_A"]
    return tally


def _merge(total, part):
    for k, v in part.items():
        total[k] = max(total.get(k, 0.0), v) if k.startswith("max_") else total.get(k, 0) + v
    return total


def cmd_verify(args, out):
    total = {}
    if args.input is not None:
        loaded = load_input(_input_spec(args))
        n = len(loaded.p)
        if args.m is not None:
            ms = [args.m]
        elif args.m_range is not None:
            ms = list(range(args.m_range[0], args.m_range[1] + 1))
        else:
            ms = list(range(1, n + 1))
        for m in ms:
            if not 1 <= m <= n:
                raise InvalidM(m, n)
        _merge(total, verify_instances(loaded.p, ms))
        source = {"input": input_digest(loaded)}
    else:
        rng = np.random.Generator(np.random.PCG64(args.seed))
        for _ in range(args.trials):
            n = int(rng.integers(3, args.n_max + 1))
            m = int(rng.integers(2, n))
            p = validate_distribution(rng.standard_exponential(n), "renormalize")
            _merge(total, verify_instances(p, [m]))
        source = {"seed": args.seed, "trials": args.trials, "n_max": args.n_max}
    failed = total["theorem1"] + total["theorem2"] + total["oracle_mismatch"]
    report = {"algorithm": "verify", **source, "tally": total, "pass": failed == 0}
    out.stream.write(json.dumps(report) + "\n")
    if failed:
        print("error: bound or optimality violation", file=sys.stderr)
        return EXIT_BOUND
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARAM, f"{self.prog}: error: {message}\n")


def _common_flags():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default="-", help="weights file, or - for stdin (default)")
    common.add_argument("--format", choices=("lines", "csv"), default="lines")
    common.add_argument("--counts", action="store_true", help="input holds histogram counts; normalize them")
    common.add_argument("--normalize", action="store_true", help="rescale probabilities to sum 1")
    common.add_argument("--tolerance", type=float, default=EPS_SUM, help="sum tolerance in strict mode")
    common.add_argument("--output", choices=("json", "csv"), default="json")
    common.add_argument("--nats", action="store_true", help="also display entropies in nats")
    common.add_argument("--timing", action="store_true",
                        help="record wall times (makes output non-reproducible)")
    common.add_argument("--max-candidates", type=int, default=MAX_CANDIDATES,
                        help="oracle enumeration limit")
    return common


def build_parser():
    parser = _Parser(prog="intervagg", description="Maximum-entropy contiguous aggregation of distributions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    algs = ("exact", "greedy1", "greedy2", "oracle")

    p = sub.add_parser("solve", parents=[_common_flags()], help="aggregate into m classes")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--algorithm", choices=algs, default="exact")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("compare", parents=[_common_flags()], help="exact vs both greedy solvers")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", parents=[_common_flags()], help="one report per m in a range")
    p.add_argument("--m-range", type=parse_m_range, required=True, metavar="A..B")
    p.add_argument("--algorithm", choices=algs, default="exact")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser(
        "bench", parents=[_common_flags()], help="time solvers on random instances",
        description="Instances: " + BENCH_GENERATOR + ".")
    p.add_argument("--n-list", type=_int_list, default=[500, 1000])
    p.add_argument("--m-list", type=_int_list, default=[16])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algorithms", default="exact,greedy1,greedy2")
    p.add_argument("--repeat", type=int, default=3)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser(
        "verify", parents=[_common_flags()], help="check optimality and greedy bounds",
        description="With --input, checks every m (or --m / --m-range) on that input. "
                    "Without it, runs --trials random instances from numpy PCG64(--seed).")
    p.set_defaults(input=None)
    p.add_argument("--m", type=int)
    p.add_argument("--m-range", type=parse_m_range, metavar="A..B")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--n-max", type=int, default=100)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, stdout=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Emitter(args.output, stdout or sys.stdout)
    try:
        return args.func(args, out)
    except InvalidM as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except (InstanceTooLarge, ResourceGuard) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InputError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
