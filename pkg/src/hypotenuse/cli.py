"""Command-line entry point: one subcommand per experiment.

Each run writes one artifact (CSV or JSON) to ``--output`` or standard
output. Progress and timing go to standard error. Exit codes: 0 success,
2 usage error, 3 capacity error.
"""
import argparse
import io
import json
import math
import re
import sys
import time

from . import brun, legset, moment, sector, stats
from .arith import CONSTANTS
from .errors import CapacityError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAPACITY = 3

COMMANDS = ("legs", "density", "hr", "mertens", "exceptional", "brun-check",
            "sector", "dyadic", "moment", "conjecture")


class UsageError(Exception):
    pass


def parse_int(text):
    """Integer literal, also accepting ``b^k`` shorthand such as 10^6."""
    text = text.strip()
    m = re.fullmatch(r"(\d+)\^(\d+)", text)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    if re.fullmatch(r"\d+", text):
        return int(text)
    raise argparse.ArgumentTypeError(f"not a natural number: {text!r}")


def parse_checkpoints(text):
    return [parse_int(t) for t in text.split(",") if t.strip()]


def positive_int(text):
    n = parse_int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def build_parser():
    p = argparse.ArgumentParser(prog="hypotenuse", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--limit", type=parse_int)
    p.add_argument("--kind", choices=[k.value for k in legset.LegKind])
    p.add_argument("--checkpoints", type=parse_checkpoints)
    p.add_argument("--alpha", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--kappa", type=float)
    p.add_argument("--x", type=parse_int, dest="x")
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--c0", type=float)
    p.add_argument("--seed", type=parse_int, default=0)
    p.add_argument("--instances", type=positive_int, default=20)
    p.add_argument("--workers", type=positive_int, default=1)
    p.add_argument("--output")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--timing", action="store_true",
                   help="record timing_ms in JSON (makes output run-dependent)")
    return p


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def _jsonable(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, float):
        return None if not math.isfinite(v) else float(format(v, ".12g"))
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} requires " + ", ".join("--" + n for n in missing))


def _reject(args, *names):
    given = [n for n in names if getattr(args, n) is not None]
    if given:
        raise UsageError(f"{args.command} does not accept " + ", ".join("--" + n for n in given))


def _log(msg):
    print(msg, file=sys.stderr, flush=True)


def _decades(limit):
    out = [10**k for k in range(1, 19) if 10**k <= limit]
    return out if out and out[-1] == limit else out + [limit]


# Each runner returns (params, header, rows, json_results).

def run_legs(args):
    _need(args, "limit")
    kind = legset.LegKind(args.kind or "odd")
    table = legset.enumerate_legs(kind, args.limit, witness=False, workers=args.workers)
    legs = table.members().tolist()
    params = {"kind": kind.value, "limit": args.limit}
    return params, ["n"], [[n] for n in legs], legs


def run_density(args):
    kind = legset.LegKind(args.kind or "product")
    checkpoints = args.checkpoints
    if checkpoints is None:
        _need(args, "limit")
        checkpoints = _decades(args.limit)
    if args.limit is not None and max(checkpoints) > args.limit:
        raise UsageError("checkpoints exceed --limit")
    series = legset.density_series(kind, checkpoints, workers=args.workers)
    header = ["N", "count", "ratio", "delta"]
    rows = [[p.N, p.count, p.ratio, p.delta] for p in series]
    params = {"kind": kind.value, "checkpoints": checkpoints}
    return params, header, rows, [dict(zip(header, r)) for r in rows]


def run_hr(args):
    _need(args, "limit")
    c0 = 1.0 if args.c0 is None else args.c0
    h = stats.omega_histogram(args.limit, workers=args.workers)
    ratios = stats.hr_normalized_ratio(h, c0)
    header = ["i", "count", "ratio"]
    rows = [[0, h[0], math.nan]] + [[i, h[i], r] for i, r in ratios.items()]
    params = {"limit": args.limit, "c0": c0}
    return params, header, rows, [dict(zip(header, r)) for r in rows]


def run_mertens(args):
    checkpoints = args.checkpoints
    if checkpoints is None:
        _need(args, "limit")
        checkpoints = _decades(args.limit)
    series = stats.prime_power_reciprocal_series(checkpoints)
    header = ["limit", "sum", "gap"]
    rows = [list(r) for r in series]
    return {"checkpoints": sorted(checkpoints)}, header, rows, [dict(zip(header, r)) for r in rows]


def run_exceptional(args):
    _need(args, "limit")
    alpha = CONSTANTS.alpha_star if args.alpha is None else args.alpha
    r = stats.exceptional_sets(args.limit, alpha, workers=args.workers)
    header = ["limit", "alpha", "L", "e1_size", "smooth_threshold", "e2_size"]
    row = [r.limit, r.alpha, r.L, r.e1_size, r.smooth_threshold, r.e2_size]
    return {"limit": args.limit, "alpha": alpha}, header, [row], dict(zip(header, row))


def run_brun_check(args):
    X = 1000 if args.x is None else args.x
    d_max = 1000 if args.limit is None else args.limit
    ds = brun.squarefree_upto(d_max, 50)
    primes = [int(p) for p in brun.primes_below(1000)]
    header = ["a", "b0", "X", "checked", "violations", "worst_ratio", "local_mismatches"]
    rows = []
    for k, inst in enumerate(brun.sample_instances(args.instances, args.seed, X)):
        rep = brun.check_remainders(inst, ds)
        local = len(brun.check_local_counts(inst, primes))
        rows.append([inst.a, inst.b0, X, rep.checked, rep.violations,
                     float(rep.worst_ratio), local])
        _log(f"brun-check: instance {k + 1}/{args.instances}")
    params = {"X": X, "d_max": d_max, "z": 50.0, "seed": args.seed, "instances": args.instances}
    return params, header, rows, [dict(zip(header, r)) for r in rows]


def run_sector(args):
    _need(args, "x")
    beta = 0.0 if args.beta is None else args.beta
    gamma = math.pi / 2 if args.gamma is None else args.gamma
    q = sector.SectorQuery(args.x, beta, gamma)
    count = sector.sector_count(q, workers=args.workers)
    ratio = sector.hl_ratio(q, count) if q.X >= 100 else math.nan
    header = ["X", "beta", "gamma", "count", "hl_ratio", "in_hl_range"]
    row = [q.X, beta, gamma, count, ratio, q.in_hl_range]
    return {"X": q.X, "beta": beta, "gamma": gamma}, header, [row], dict(zip(header, row))


def run_dyadic(args):
    _need(args, "limit")
    total, sectors = sector.dyadic_l0_bound(args.limit, workers=args.workers)
    header = ["i", "beta", "gamma", "X", "count", "max_ab", "unit_pairs"]
    rows = [[s.i, s.beta, s.gamma, s.X, s.count, s.max_ab, s.unit_pairs] for s in sectors]
    rows.append(["total", "", "", "", total, "", ""])
    results = {"total": total, "sectors": [dict(zip(header, r)) for r in rows[:-1]]}
    return {"limit": args.limit}, header, rows, results


def run_moment(args):
    _need(args, "limit")
    eps = 0.1 if args.epsilon is None else args.epsilon
    cfg = moment.LConfig(args.limit, eps)
    rep = moment.build_l_sets(cfg, workers=args.workers)
    lower, c, ok = moment.cauchy_bound_check(cfg, workers=args.workers, report=rep)
    header = ["N", "epsilon", "T", "l0", "l1", "l2", "l3", "union", "l_size", "s_n",
              "diagonal", "off_diagonal", "cauchy_lower", "c_of_n", "pass",
              "normalized_moment"]
    row = [cfg.N, eps, cfg.T, rep.l0, rep.l1, rep.l2, rep.l3, rep.union, rep.l_size,
           rep.s_n, rep.diagonal, rep.off_diagonal, lower, c, ok, rep.normalized_moment]
    return {"limit": cfg.N, "epsilon": eps}, header, [row], dict(zip(header, row))


def run_conjecture(args):
    _need(args, "limit")
    kappa = 0.5 if args.kappa is None else args.kappa
    restricted = moment.restricted_first_moment(args.limit, kappa, workers=args.workers)
    l0 = moment.l0_pairs(args.limit, args.workers)[0].size
    header = ["N", "kappa", "l0", "restricted", "fraction"]
    row = [args.limit, kappa, int(l0), restricted, restricted / l0 if l0 else math.nan]
    return {"limit": args.limit, "kappa": kappa}, header, [row], dict(zip(header, row))


RUNNERS = {
    "legs": (run_legs, ("alpha", "epsilon", "kappa", "x", "beta", "gamma", "c0", "checkpoints")),
    "density": (run_density, ("alpha", "epsilon", "kappa", "x", "beta", "gamma", "c0")),
    "hr": (run_hr, ("kind", "alpha", "epsilon", "kappa", "x", "beta", "gamma", "checkpoints")),
    "mertens": (run_mertens, ("kind", "alpha", "epsilon", "kappa", "x", "beta", "gamma", "c0")),
    "exceptional": (run_exceptional, ("kind", "epsilon", "kappa", "x", "beta", "gamma", "c0",
                                      "checkpoints")),
    "brun-check": (run_brun_check, ("kind", "alpha", "epsilon", "kappa", "beta", "gamma", "c0",
                                    "checkpoints")),
    "sector": (run_sector, ("limit", "kind", "alpha", "epsilon", "kappa", "c0", "checkpoints")),
    "dyadic": (run_dyadic, ("kind", "alpha", "epsilon", "kappa", "x", "beta", "gamma", "c0",
                            "checkpoints")),
    "moment": (run_moment, ("kind", "alpha", "kappa", "x", "beta", "gamma", "c0", "checkpoints")),
    "conjecture": (run_conjecture, ("kind", "alpha", "epsilon", "x", "beta", "gamma", "c0",
                                    "checkpoints")),
}


def render(fmt, params, header, rows, results, timing_ms=None):
    if fmt == "json":
        doc = {"params": _jsonable(params), "results": _jsonable(results),
               "timing_ms": timing_ms}
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def run(argv=None):
    """Parse ``argv`` and run one experiment; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    runner, rejected = RUNNERS[args.command]
    start = time.perf_counter()
    try:
        _reject(args, *rejected)
        params, header, rows, results = runner(args)
    except CapacityError as exc:
        _log(f"capacity error: {exc}")
        return EXIT_CAPACITY
    except (UsageError, ValueError, OverflowError) as exc:
        _log(f"usage error: {exc}")
        return EXIT_USAGE
    elapsed = (time.perf_counter() - start) * 1000.0
    _log(f"{args.command}: {elapsed:.1f} ms")
    text = render(args.format, params, header, rows, results,
                  round(elapsed, 3) if args.timing else None)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
    return EXIT_OK


def main():
    sys.exit(run())
