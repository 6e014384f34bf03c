"""Command-line driver: ``verify``, ``compute`` and ``ingest``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .errors import AxiomViolation, InvalidValue, S2CobarError, SchemaError
from .rings import parse_ring
from .suites import RUNNERS, SUITES, Check, RunConfig, s1_products

REPORT_SCHEMA = "s2cobar.report/1"


def _ring(text):
    try:
        return parse_ring(text)
    except InvalidValue as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="s2cobar", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suite", nargs="*", help=f"suite names ({', '.join(SUITES)}) or 'all'")
    v.add_argument("--suite", dest="suite_opt", action="append", default=[], help="suite name (repeatable)")
    v.add_argument("--ring", type=_ring, default=None, help="z, q, zmod:m (default: the rings of each criterion)")
    v.add_argument("--max-degree", type=_positive, default=6)
    v.add_argument("--max-arity", type=_positive, default=4)
    v.add_argument("--op-degree", type=_positive, default=4)
    v.add_argument("--generators", type=_positive, default=3)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--input", action="append", default=[], help="structure-constant file to ingest and check")
    v.add_argument("--out", help="write the JSON report here")
    v.add_argument("--jobs", type=_positive, default=min(4, os.cpu_count() or 1),
                   help="suites to run in parallel worker processes")
    v.add_argument("--quiet", action="store_true")

    c = sub.add_parser("compute", help="showcase computations")
    c.add_argument("what", choices=["bar-s1"])
    c.add_argument("--n", type=_positive, default=5)
    c.add_argument("--ring", type=_ring, default=None)
    c.add_argument("--out")

    i = sub.add_parser("ingest", help="load and validate a structure-constant file")
    i.add_argument("path")
    return p


def _ingest_check(path):
    from .io import load

    obj = load(path)
    return Check(f"ingest[{path}]", "constructed object passes its type invariants", "pass",
                 type(obj).__name__)


def report_json(cfg: RunConfig, checks, inputs=()):
    counts = {s: sum(1 for c in checks if c.status == s) for s in ("pass", "fail", "skip")}
    doc = {
        "schema": REPORT_SCHEMA,
        "config": {"ring": str(cfg.ring) if cfg.ring is not None else None, "max_degree": cfg.max_degree,
                   "max_arity": cfg.max_arity, "op_degree": cfg.op_degree, "generators": cfg.generators,
                   "seed": cfg.seed, "suites": list(cfg.suites), "inputs": list(inputs)},
        "checks": [c.record() for c in checks],
        "summary": counts,
    }
    return json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=False) + "\n"


def cmd_verify(args, out=None):
    out = out or sys.stdout
    names = list(args.suite) + list(args.suite_opt)
    if not names or "all" in names:
        names = list(SUITES)
    unknown = [n for n in names if n not in RUNNERS]
    if unknown:
        print(f"error: unknown suite(s) {', '.join(unknown)}; choose from {', '.join(SUITES)}", file=sys.stderr)
        return 2
    cfg = RunConfig(ring=args.ring, max_degree=args.max_degree, max_arity=args.max_arity,
                    op_degree=args.op_degree, generators=args.generators, seed=args.seed, suites=tuple(names))
    checks = []
    for path in args.input:
        checks.append(_ingest_check(path))
    print(f"seed: {cfg.seed}", file=out)
    # workers run suites; this process alone assembles the report, in suite order
    pool = ProcessPoolExecutor(args.jobs) if args.jobs > 1 and len(names) > 1 else None
    pending = [pool.submit(RUNNERS[n], cfg) if pool else n for n in names]
    for name, job in zip(names, pending):
        results = job.result() if pool else RUNNERS[name](cfg)
        checks.extend(results)
        if not args.quiet:
            for c in results:
                print(f"{c.status.upper():4}  {c.id}  [{c.seconds:.1f}s]  {c.anchor}", file=out)
                if c.status == "fail":
                    print(f"      witness: {json.dumps(c.record()['witness'], ensure_ascii=False)[:400]}", file=out)
    if pool:
        pool.shutdown()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report_json(cfg, checks, args.input))
    failed = sum(1 for c in checks if c.status == "fail")
    if not args.quiet:
        print(f"{len(checks) - failed} passed, {failed} failed", file=out)
    return 1 if failed else 0


def cmd_compute(args, out=None):
    out = out or sys.stdout
    from .rings import ZZ

    ring = args.ring or ZZ
    cochains, cohom = s1_products(args.n, ring)

    def show(v):
        parts = [(f"t{len(w)}" if c == 1 else f"{c}*t{len(w)}")
                 for w, c in sorted(v.items(), key=lambda wc: len(wc[0]))]
        return " + ".join(parts) if parts else "0"

    rows = []
    print(f"bar construction of S^1 over {ring}: t_n = [x|...|x] (n letters)", file=out)
    print(f"{'n':>3}  {'t1 tn in B S*(S^1)':<28}{'tn t1 in B S*(S^1)':<28}{'t1 tn in B H*(S^1)'}", file=out)
    for n in range(1, args.n + 1):
        a, b = cochains[n]
        print(f"{n:>3}  {show(a):<28}{show(b):<28}{show(cohom[n])}", file=out)
        rows.append({"n": n, "cochains_t1tn": show(a), "cochains_tnt1": show(b), "cohomology_t1tn": show(cohom[n])})
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({"schema": REPORT_SCHEMA, "ring": str(ring), "rows": rows}, fh, indent=2)
            fh.write("\n")
    return 0


def cmd_ingest(args, out=None):
    out = out or sys.stdout
    from .io import load

    obj = load(args.path)
    print(f"ok: {args.path} -> {type(obj).__name__} {getattr(obj, 'name', '')}", file=out)
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "compute":
            return cmd_compute(args)
        return cmd_ingest(args)
    except (SchemaError, AxiomViolation, InvalidValue, OSError) as e:
        print(f"input error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except S2CobarError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
