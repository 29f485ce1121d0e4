"""``hilb`` command line: verify statements, print weight tables, compute classes."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__, cache
from .laurent import IntegralityError
from .localization import box_weights, kirwan_H, kirwan_K, nested_weight_table, reading_order
from .operators import BasisError, SoundnessError, nakajima_basis, nonequiv_reduce, q1_H, qK_1m, qm_H, rho
from .partitions import Box, Partition
from .pushforward import push_Q_power
from .symfunc import parse as parse_expr
from .theorems import M_MAX, M_MIN, REGISTRY, CaseResult, Params, instances, run_instance

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
SCHEMA = 1


class UsageError(Exception):
    pass


# --- verify ------------------------------------------------------------------------

def _init_worker(cache_path):
    cache.set_cache_dir(cache_path)


def run_verify(ids: list[str], params: Params, jobs: int = 1, cache_path=None) -> list[CaseResult]:
    work = [inst for tid in ids for inst in instances(tid, params)]
    if jobs <= 1:
        return [run_instance(*w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(cache_path,)) as pool:
        return list(pool.map(run_instance, *zip(*work), chunksize=1)) if work else []


def build_report(ids, params: Params, results: list[CaseResult], wall: float | None = None) -> dict:
    counts = {"pass": 0, "fail": 0, "error": 0}
    for r in results:
        counts[r.status] += 1
    report = {
        "schema": SCHEMA,
        "engine": cache.ENGINE_VERSION,
        "parameters": {"theorems": list(ids), "n_max": params.n_max, "m_min": params.m_min,
                       "m_max": params.m_max},
        "summary": counts,
        "cases": [r.to_json() for r in results],
    }
    if wall is not None:
        report["wall_time_seconds"] = round(wall, 3)
    return report


def format_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["theorem", "n", "m", "status", "witnesses"])
        for case in report["cases"]:
            writer.writerow([case["theorem"], _blank(case["n"]), _blank(case["m"]), case["status"],
                             json.dumps(case["witnesses"], sort_keys=True) if case["witnesses"] else ""])
        return buf.getvalue()
    lines = []
    by_id: dict[str, list] = {}
    for case in report["cases"]:
        by_id.setdefault(case["theorem"], []).append(case)
    for tid in report["parameters"]["theorems"]:
        cases = by_id.get(tid, [])
        ok = sum(c["status"] == "pass" for c in cases)
        status = "pass" if ok == len(cases) else ("error" if any(c["status"] == "error" for c in cases) else "fail")
        lines.append(f"{tid:<24} {status:<5} {ok}/{len(cases)}")
        for c in cases:
            if c["status"] != "pass":
                lines.append(f"    n={_blank(c['n'])} m={_blank(c['m'])}: {json.dumps(c['witnesses'], sort_keys=True)}")
    s = report["summary"]
    lines.append(f"total: {s['pass']} pass, {s['fail']} fail, {s['error']} error")
    if "wall_time_seconds" in report:
        lines.append(f"wall time: {report['wall_time_seconds']} s")
    return "\n".join(lines) + "\n"


def _blank(v):
    return "" if v is None else v


def exit_code(results: list[CaseResult]) -> int:
    if any(r.status == "error" for r in results):
        return EXIT_INTERNAL
    if any(r.status == "fail" for r in results):
        return EXIT_FAIL
    return EXIT_PASS


def cmd_verify(args) -> int:
    if args.theorem == "all":
        ids = list(REGISTRY)
    elif args.theorem in REGISTRY:
        ids = [args.theorem]
    else:
        raise UsageError(f"unknown theorem id {args.theorem!r}; try 'hilb list'")
    if args.m_min > args.m_max:
        raise UsageError("--m-min exceeds --m-max")
    if args.n_max is not None and args.n_max < 1:
        raise UsageError("--n-max must be at least 1")
    params = Params(args.n_max, args.m_min, args.m_max)
    start = time.perf_counter()
    results = run_verify(ids, params, args.jobs, args.cache_dir)
    wall = time.perf_counter() - start if args.timing else None
    _emit(format_report(build_report(ids, params, results, wall), args.format), args.output)
    return exit_code(results)


def cmd_list(args) -> int:
    for tid, case in REGISTRY.items():
        print(f"{tid:<24} {case.mode:<18} {case.summary}")
    return EXIT_PASS


# --- weights -------------------------------------------------------------------------

def _fmt_weight(w, marked: bool) -> str:
    return ("*" if marked else "") + f"({w[0]},{w[1]})"


def weight_table(lam: Partition, corner=None) -> str:
    """One line per box in reading order: label and both weights, ``*`` marks modified ones."""
    if corner is None:
        rows = []
        for box in reading_order(lam):
            w1, w2 = box_weights(lam, box)
            rows.append((box, w1, w2, (False, False)))
    else:
        rows = nested_weight_table(lam, corner)
    lines = []
    for label, (box, w1, w2, changed) in enumerate(rows, start=1):
        lines.append(f"{label}  {_fmt_weight(w1, changed[0])}, {_fmt_weight(w2, changed[1])}")
    return "\n".join(lines) + "\n"


def _parse_partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}: {exc}") from None


def _parse_box(text: str) -> Box:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad box {text!r}; expected 'i,j'") from None
    return Box(i, j)


def cmd_weights(args) -> int:
    lam = _parse_partition(args.partition)
    corner = _parse_box(args.corner) if args.corner else None
    try:
        sys.stdout.write(weight_table(lam, corner))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return EXIT_PASS


# --- compute -------------------------------------------------------------------------

def _expr(text: str | None, default: str = "1"):
    try:
        return parse_expr(text if text is not None else default)
    except ValueError as exc:
        raise UsageError(f"bad expression: {exc}") from None


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.kind} needs {', '.join(missing)}")


def compute(args) -> dict:
    kind = args.kind
    if kind == "push-q":
        _need(args, "n", "m")
        theory = args.theory or "K"
        if theory == "H" and args.m < 0:
            raise UsageError("cohomology pushes c1(Q)^m with m >= 0")
        cl = push_Q_power(args.n, args.m, theory)
        return {"class": cl.to_json(), "source_n": args.n, "target_n": args.n + 1, "provenance": "localization"}
    if kind == "kirwan":
        _need(args, "n")
        theory = args.theory or "K"
        expr = _expr(args.expr)
        try:
            cl = kirwan_K(expr, args.n) if theory == "K" else kirwan_H(expr, args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return {"class": cl.to_json(), "provenance": "localization"}
    _need(args, "n")
    if kind in ("q1", "rho", "qm"):
        if args.theory not in (None, "H"):
            raise UsageError(f"{kind} acts on cohomology")
        source = kirwan_H(_expr(args.expr), args.n)
        if kind == "q1":
            out, shift = q1_H(source), 1
        elif kind == "rho":
            out, shift = rho(source), 1
        else:
            _need(args, "m")
            if args.m < 1:
                raise UsageError("qm needs --m >= 1")
            out, shift = qm_H(args.m, source), args.m
        tag = "recursion" if kind == "qm" and args.m > 1 else "localization"
    elif kind == "qK":
        _need(args, "m")
        if args.theory not in (None, "K"):
            raise UsageError("qK acts on K-theory")
        out, shift, tag = qK_1m(args.m, kirwan_K(_expr(args.expr), args.n)), 1, "localization"
    else:
        raise UsageError(f"unknown kind {kind!r}")
    return {"class": out.to_json(), "source_n": args.n, "target_n": args.n + shift, "provenance": tag}


def cmd_compute(args) -> int:
    result = compute(args)
    _emit(json.dumps(result, indent=2, sort_keys=True) + "\n", args.output)
    return EXIT_PASS


# --- basis ---------------------------------------------------------------------------

def cmd_basis(args) -> int:
    if args.n < 1:
        raise UsageError("n must be at least 1")
    basis = nakajima_basis(args.n)
    out = {"n": args.n, "partitions": [str(p) for p in basis.partitions],
           "determinant_at_t1": str(basis.determinant())}
    if args.expr is not None:
        vec = nonequiv_reduce(kirwan_H(_expr(args.expr), args.n))
        out["expr"] = args.expr
        out["coordinates"] = [str(x) for x in vec]
    if args.format == "json":
        text = json.dumps(out, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"n = {args.n}", f"determinant (t = 1): {out['determinant_at_t1']}"]
        coords = out.get("coordinates", [None] * len(out["partitions"]))
        for p, v in zip(out["partitions"], coords):
            lines.append(f"q_({p})(1)" + (f"  {v}" if v is not None else ""))
        text = "\n".join(lines) + "\n"
    _emit(text, None)
    return EXIT_PASS


# --- entry point ---------------------------------------------------------------------

def _emit(text: str, path) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hilb", description=__doc__)
    parser.add_argument("--version", action="version", version=f"hilb {__version__}")
    parser.add_argument("--cache-dir", help="directory for cached pushforwards (default: $HILB_CACHE_DIR)")
    parser.add_argument("-v", "--verbose", action="store_true")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="check a registered statement over a parameter grid")
    v.add_argument("theorem", help="registry id or 'all'")
    v.add_argument("--n-max", type=int, help="largest number of points (default 8 or 6 by suite)")
    v.add_argument("--m-min", type=int, default=M_MIN)
    v.add_argument("--m-max", type=int, default=M_MAX)
    v.add_argument("--format", choices=("json", "csv", "text"), default="text")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--timing", action="store_true", help="include wall time (reports stop being byte-identical)")
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_verify)

    sub.add_parser("list", parents=[common], help="list registry ids").set_defaults(func=cmd_list)

    w = sub.add_parser("weights", parents=[common], help="tangent weight table at a fixed point")
    w.add_argument("partition", help="column lengths, e.g. '3,1'")
    w.add_argument("--corner", help="added box 'k,l' for the nested fixed point")
    w.set_defaults(func=cmd_weights)

    c = sub.add_parser("compute", parents=[common], help="compute a class and print it as JSON")
    c.add_argument("kind", choices=("push-q", "q1", "rho", "qm", "qK", "kirwan"))
    c.add_argument("--theory", choices=("K", "H"))
    c.add_argument("--n", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--expr", help="symmetric function, e.g. 'p1^2*p3 - 2*e2' (default 1)")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_compute)

    b = sub.add_parser("basis", parents=[common], help="Nakajima basis determinant and coordinates")
    b.add_argument("n", type=int)
    b.add_argument("--expr", help="reduce the cohomological Kirwan image of this expression")
    b.add_argument("--format", choices=("json", "text"), default="text")
    b.set_defaults(func=cmd_basis)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.cache_dir:
        cache.set_cache_dir(args.cache_dir)
    else:
        args.cache_dir = str(cache.cache_dir()) if cache.cache_dir() else None
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hilb: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IntegralityError, SoundnessError, BasisError) as exc:
        print(f"hilb: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
