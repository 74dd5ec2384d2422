"""Command-line front end.

Subcommands: ``generate``, ``reduce``, ``solve``, ``verify-reduction``,
``analyze`` and ``bench``. Exit codes: 0 success, 2 usage or configuration
error, 3 I/O error, 4 invariant violation (including malformed input files
and failed reduction checks). Failures print one JSON object on stderr.
"""

import argparse
import csv
import hashlib
import io
import itertools
import json
import os
import statistics
import sys
import time
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (LANDSCAPE_HEADER, landscape_curve, landscape_rows,
                       prange_expected_ratio)
from .errors import ConfigError, InvariantViolation, LinsatError, NotAPrimePower, RangeError
from .generators import KINDS, GenConfig, generate, parse_key_values
from .instance import (all_assignments, evaluate, parse, parse_assignment, serialize,
                       serialize_assignment)
from .reduction import reduce, reduction_table
from .rng import derive_seed
from .solvers import ALGORITHMS, DEFAULT_ENUMERATION_CAP, solve

OUT_DIR_ENV = "MAXLINSAT_OUT"

EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INVARIANT = 4


def _read(path):
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text, encoding="utf-8")


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _jsonl_text(records):
    return "".join(json.dumps(rec, sort_keys=True) + "\n" for rec in records)


def solve_record(result):
    s, m = result.eval.satisfied, result.eval.m
    return {
        "algorithm": result.algorithm,
        "seed": result.seed,
        "iterations": result.iterations,
        "s": s,
        "m": m,
        "ratio": repr(s / m),
        "fraction": f"{s}/{m}",
        "assignment": list(result.assignment),
        "wall_time_s": round(result.wall_time, 6),
    }


# -- subcommands ---------------------------------------------------------------


def cmd_generate(args):
    text = _read(args.manifest) if args.manifest else ""
    overrides = {
        "kind": args.kind, "q": args.q, "n": args.n, "m": args.m, "r": args.r,
        "seed": args.seed, "planted_fraction": args.planted_fraction,
    }
    cfg = GenConfig.from_manifest(text, **overrides)
    inst, x_star = generate(cfg)
    _write(args.output, serialize(inst))
    if args.assignment_out:
        if x_star is None:
            raise ConfigError("--assignment-out only applies to --kind planted")
        _write(args.assignment_out, serialize_assignment(x_star))


def cmd_reduce(args):
    inst = parse(_read(args.input))
    _write(args.output, serialize(reduce(inst, args.r)))


def cmd_solve(args):
    inst = parse(_read(args.input))
    seed = 0 if args.seed is None else args.seed
    result = solve(inst, args.algo, seed=seed, iterations=args.iters, cap=args.cap)
    rec = solve_record(result)
    if args.format == "csv":
        header = ("algorithm", "seed", "iterations", "s", "m", "ratio", "fraction", "assignment",
                  "wall_time_s")
        row = [rec[k] if k != "assignment" else " ".join(map(str, rec[k])) for k in header]
        _write(args.output, _csv_text(header, [row]))
    else:
        _write(args.output, _jsonl_text([rec]))


def cmd_verify_reduction(args):
    original = parse(_read(args.original))
    reduced = parse(_read(args.reduced))
    if args.assignment:
        xs = np.array([parse_assignment(_read(args.assignment), original)], dtype=np.int64)
    else:
        total = original.q**original.n
        if total > args.cap:
            raise ConfigError(f"q^n = {total} exceeds --cap {args.cap}; pass --assignment")
        xs = all_assignments(original.q, original.n)
    exact, predicted, actual = reduction_table(original, reduced, xs)
    rows = []
    for x, a, p, s in zip(xs.tolist(), exact.tolist(), predicted.tolist(), actual.tolist()):
        rows.append({
            "assignment": " ".join(map(str, x)),
            "mu": str(Fraction(a, original.m)),
            "predicted": p,
            "actual": s,
            "equal": p == s,
        })
    header = ("assignment", "mu", "predicted", "actual", "equal")
    if args.format == "jsonl":
        _write(args.output, _jsonl_text(rows))
    else:
        body = [[r[k] if k != "equal" else str(r[k]).lower() for k in header] for r in rows]
        _write(args.output, _csv_text(header, body))
    bad = sum(not r["equal"] for r in rows)
    if bad:
        raise InvariantViolation(f"{bad} assignments violate the predicted satisfaction count")


def cmd_analyze(args):
    if args.what == "semicircle":
        points = landscape_curve(args.r_over_q, args.steps)
        if args.format == "jsonl":
            recs = [dict(zip(LANDSCAPE_HEADER, row)) for row in landscape_rows(points)]
            _write(args.output, _jsonl_text(recs))
        else:
            _write(args.output, _csv_text(LANDSCAPE_HEADER, landscape_rows(points)))
    else:
        value = prange_expected_ratio(args.n_over_m, args.r_over_q)
        _write(args.output, f"{float(value)!r}\n")


# -- bench -------------------------------------------------------------------------


def _list(values, key, cast=str):
    raw = values.get(key)
    if raw is None:
        raise ConfigError(f"bench manifest is missing key {key!r}")
    try:
        return [cast(v.strip()) for v in raw.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"bad value for {key!r}: {raw!r}") from None


def load_bench_manifest(text, seed=None):
    """Parse a bench manifest into a plain config dict.

    Keys: ``kinds``, ``algos``, ``q``, ``r``, ``n``, ``m`` (comma-separated
    lists, crossed), ``instances`` (repetitions per cell), ``iters`` (Prange
    iterations), ``planted_fraction``, ``seed`` and ``cap``.
    """
    values = parse_key_values(text)
    try:
        cfg = {
            "kinds": _list(values, "kinds"),
            "algos": _list(values, "algos"),
            "q": _list(values, "q", int),
            "r": _list(values, "r", int),
            "n": _list(values, "n", int),
            "m": _list(values, "m", int),
            "instances": int(values.get("instances", 1)),
            "iters": int(values.get("iters", 1)),
            "planted_fraction": str(Fraction(values.get("planted_fraction", "1"))),
            "seed": int(values.get("seed", 0)) if seed is None else seed,
            "cap": int(values.get("cap", DEFAULT_ENUMERATION_CAP)),
        }
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad bench manifest value: {exc}") from None
    for kind in cfg["kinds"]:
        if kind not in KINDS:
            raise ConfigError(f"unknown kind {kind!r}")
    for algo in cfg["algos"]:
        if algo not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {algo!r}")
    if cfg["instances"] < 1:
        raise ConfigError("instances must be >= 1")
    return cfg


def run_bench(cfg, out_dir):
    """Run every (generator cell, repetition, algorithm) and persist the results.

    Writes ``instances/*.txt``, ``records.jsonl`` and ``summary.csv`` under
    ``out_dir`` and returns the list of record dicts. Seeds for instances and
    solver runs are derived from ``cfg["seed"]`` by cell/repetition/algorithm
    index, so files depend only on the config.
    """
    out_dir = Path(out_dir)
    (out_dir / "instances").mkdir(parents=True, exist_ok=True)
    cells = list(itertools.product(cfg["kinds"], cfg["q"], cfg["r"], cfg["n"], cfg["m"]))
    records = []
    instances = {}
    for c, (kind, q, r, n, m) in enumerate(cells):
        for rep in range(cfg["instances"]):
            inst_seed = derive_seed(cfg["seed"], "bench-instance", c, rep)
            gen = GenConfig(q=q, n=n, m=m, r=r, seed=inst_seed, kind=kind,
                            planted_fraction=Fraction(cfg["planted_fraction"]))
            inst, _ = generate(gen)
            name = f"c{c:03d}-{kind}-q{q}-r{r}-n{n}-m{m}-{rep:03d}.txt"
            (out_dir / "instances" / name).write_text(serialize(inst), encoding="utf-8")
            instances[(c, rep)] = inst
            for a, algo in enumerate(cfg["algos"]):
                algo_seed = derive_seed(cfg["seed"], "bench-solve", c, rep, a)
                result = solve(inst, algo, seed=algo_seed, iterations=cfg["iters"],
                               cap=cfg["cap"])
                rec = solve_record(result)
                rec.update({"cell": c, "rep": rep, "kind": kind, "q": q, "r": r, "n": n,
                            "instance_seed": inst_seed, "instance": name})
                records.append(rec)
    records.sort(key=lambda rec: (rec["cell"], rec["rep"], cfg["algos"].index(rec["algorithm"])))
    _write(out_dir / "records.jsonl", _jsonl_text(records))
    _write(out_dir / "summary.csv", summarize(records, instances))
    return records


def summarize(records, instances):
    """Per (cell, algorithm) mean and sample standard deviation of the ratio.

    Every record is re-evaluated against its instance first.
    """
    groups = {}
    for rec in records:
        s = evaluate(instances[(rec["cell"], rec["rep"])], rec["assignment"]).satisfied
        if s != rec["s"] or Fraction(rec["fraction"]) != Fraction(s, rec["m"]):
            raise InvariantViolation(
                f"record cell={rec['cell']} rep={rec['rep']} {rec['algorithm']}: "
                f"reported s={rec['s']}, re-evaluated s={s}")
        key = (rec["cell"], rec["kind"], rec["q"], rec["r"], rec["n"], rec["m"], rec["algorithm"])
        groups.setdefault(key, []).append(Fraction(s, rec["m"]))
    header = ("cell", "kind", "q", "r", "n", "m", "algorithm", "runs", "mean_ratio",
              "std_ratio", "r_over_q")
    rows = []
    for key in sorted(groups, key=lambda k: k[0]):
        ratios = groups[key]
        mean = statistics.mean(ratios)
        std = statistics.stdev(ratios) if len(ratios) > 1 else 0.0
        rows.append([*key, len(ratios), repr(float(mean)), repr(float(std)),
                     repr(key[3] / key[2])])
    rows.sort(key=lambda row: (row[0], ALGORITHMS.index(row[6])))
    return _csv_text(header, rows)


def cmd_bench(args):
    manifest_text = _read(args.manifest)
    cfg = load_bench_manifest(manifest_text, seed=args.seed)
    out_dir = Path(args.out_dir or os.environ.get(OUT_DIR_ENV) or "bench-out")
    started = datetime.now(timezone.utc)
    t0 = time.perf_counter()
    records = run_bench(cfg, out_dir)
    run = {
        "command": "bench",
        "config": cfg,
        "input_hashes": {str(args.manifest): hashlib.sha256(manifest_text.encode()).hexdigest()},
        "tool_version": __version__,
        "started_at": started.isoformat(),
        "duration_s": round(time.perf_counter() - t0, 6),
        "records": len(records),
    }
    _write(out_dir / "run.json", json.dumps(run, indent=2, sort_keys=True) + "\n")


# -- argument parsing ----------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="master seed; all randomness derives from it")
    common.add_argument("-o", "--output", default=None, help="output file (default stdout)")

    parser = argparse.ArgumentParser(prog="maxlinsat", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="generate a seeded instance")
    p.add_argument("--manifest", help="key = value file with GenConfig fields")
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--planted-fraction", type=_fraction)
    p.add_argument("--assignment-out", help="where to write the planted assignment")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reduce", parents=[common], help="singleton-to-r gadget reduction")
    p.add_argument("input")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", parents=[common], help="run one solver on an instance")
    p.add_argument("input")
    p.add_argument("--algo", choices=ALGORITHMS, required=True)
    p.add_argument("--iters", type=int, default=1)
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify-reduction", parents=[common],
                       help="check predicted vs. actual satisfied counts of a reduction")
    p.add_argument("original")
    p.add_argument("reduced")
    p.add_argument("--assignment", help="check one assignment file instead of all q^n")
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.set_defaults(func=cmd_verify_reduction)

    p = sub.add_parser("analyze", help="closed-form ratio curves")
    asub = p.add_subparsers(dest="what", required=True)
    a = asub.add_parser("semicircle", parents=[common])
    a.add_argument("--r-over-q", type=_fraction, required=True)
    a.add_argument("--steps", type=int, default=101)
    a.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    a = asub.add_parser("prange", parents=[common])
    a.add_argument("--n-over-m", type=_fraction, required=True)
    a.add_argument("--r-over-q", type=_fraction, required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bench", parents=[common], help="generators x solvers benchmark")
    p.add_argument("manifest")
    p.add_argument("--out-dir", help=f"output directory (default ${OUT_DIR_ENV} or ./bench-out)")
    p.set_defaults(func=cmd_bench)
    return parser


def _fail(code, kind, message):
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (ConfigError, RangeError, NotAPrimePower) as exc:
        return _fail(EXIT_USAGE, type(exc).__name__, str(exc))
    except OSError as exc:
        return _fail(EXIT_IO, type(exc).__name__, str(exc))
    except LinsatError as exc:
        return _fail(EXIT_INVARIANT, type(exc).__name__, str(exc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
