"""Command-line front end.

Every command prints one JSON envelope (``tool``, ``version``, ``command``,
``seed``, ``payload``) unless it streams records or CSV.  Output is
byte-identical for identical arguments; wall-clock timing is only added with
``--timing``.

Exit codes: 0 pass, 1 mismatch between the two dimension computations (or a
failed check), 2 usage or cap violation, 3 verification budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from bredon import __version__
from bredon.characters import COUNTING_CAP, ENUMERATION_CAP, Subgroup, check_rank
from bredon.circuits import count_circuits_closed_form, count_circuits_streaming, enumerate_circuits
from bredon.errors import InvalidInputError, ResourceError
from bredon.localization import build_local_presentation, gfp_stabilization_check, verify_local_relations
from bredon.oracle import OracleCache, compare_degree, table_degrees
from bredon.ring import RepDegree, format_rep, parse_rep
from bredon.suites import SUITES

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

TABLE_COLUMNS = ["rank", "m", "rep", "monomials", "relation_rank", "dim_linear", "dim_oracle", "match"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _envelope(args, payload, started: float) -> dict:
    env = {
        "tool": "bredon",
        "version": __version__,
        "command": args.argv,
        "seed": getattr(args, "seed", None),
        "payload": payload,
    }
    if args.timing:
        env["elapsed_s"] = round(time.perf_counter() - started, 6)
    return env


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=False) + "\n")


def _cache(args) -> OracleCache | None:
    if getattr(args, "cache", None) is None:
        return None
    return OracleCache(args.cache, verify=args.verify_cache)


# ------------------------------------------------------------------ commands


def cmd_circuits(args, out) -> int:
    if args.count_only:
        check_rank(args.rank, COUNTING_CAP)
        count = count_circuits_closed_form(args.rank)
        by_size = {k: v for k, v in count.by_size.items() if args.max_size is None or k <= args.max_size}
        total = sum(by_size.values())
        if args.format == "csv":
            w = csv.writer(out, lineterminator="\n")
            w.writerow(["rank", "size", "count"])
            for k, v in sorted(by_size.items()):
                w.writerow([args.rank, k, v])
            return EXIT_OK
        payload = {"rank": args.rank, "total": total, "by_size": {str(k): v for k, v in sorted(by_size.items())}}
        _emit(_envelope(args, payload, args.started), out)
        return EXIT_OK
    check_rank(args.rank, ENUMERATION_CAP)
    stream = enumerate_circuits(args.rank, args.max_size)
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["size", "members"])
        for c in stream:
            w.writerow([len(c), " ".join(map(str, c))])
    else:
        for c in stream:
            out.write('{"members":[' + ",".join(map(str, c)) + "]}\n")
    return EXIT_OK


def cmd_count(args, out) -> int:
    check_rank(args.rank, ENUMERATION_CAP if args.enumerate else COUNTING_CAP)
    closed = count_circuits_closed_form(args.rank)
    payload = {"closed_form": closed.to_json()}
    code = EXIT_OK
    if args.enumerate:
        streamed = count_circuits_streaming(args.rank, args.threads)
        payload["enumerated"] = streamed.to_json()
        payload["match"] = streamed.by_size == closed.by_size
        if not payload["match"]:
            code = EXIT_MISMATCH
    _emit(_envelope(args, payload, args.started), out)
    return code


def _parse_degree(args) -> RepDegree:
    check_rank(args.rank)
    rep = parse_rep(args.rep, args.rank)
    return RepDegree(args.m, rep)


def cmd_dim(args, out) -> int:
    d = _parse_degree(args)
    cache = _cache(args)
    row = compare_degree(args.rank, d, cache, max_total=args.max_total)
    payload = {**row.to_json(), "rep_spec": format_rep(d.rep)}
    if cache is not None and cache.mismatches:
        payload["cache_mismatches"] = cache.mismatches
    _emit(_envelope(args, payload, args.started), out)
    return EXIT_OK if row.match and not (cache and cache.mismatches) else EXIT_MISMATCH


def _table_chunk(job):
    rank, degrees = job
    return [compare_degree(rank, d) for d in degrees]


def cmd_table(args, out) -> int:
    check_rank(args.rank)
    max_m = args.max_total if args.max_m is None else args.max_m
    degrees = table_degrees(args.rank, args.max_total, max_m)
    cache = _cache(args)
    if args.threads > 1 and cache is None:
        step = max(1, len(degrees) // (4 * args.threads))
        jobs = [(args.rank, degrees[i : i + step]) for i in range(0, len(degrees), step)]
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            rows = [r for chunk in pool.map(_table_chunk, jobs) for r in chunk]
    else:
        rows = [compare_degree(args.rank, d, cache) for d in degrees]
    ok = all(r.match for r in rows) and not (cache and cache.mismatches)
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(TABLE_COLUMNS)
        for r in rows:
            w.writerow(
                [r.rank, r.degree.m, format_rep(r.degree.rep), r.monomials, r.relation_rank, r.dim_linear, r.dim_oracle,
                 str(r.match).lower()]
            )
    else:
        payload = {"rows": [r.to_json() for r in rows], "all_match": ok}
        if cache is not None and cache.mismatches:
            payload["cache_mismatches"] = cache.mismatches
        _emit(_envelope(args, payload, args.started), out)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify(args, out) -> int:
    check_rank(args.rank)
    suite = SUITES[args.suite]
    kwargs = {} if args.max_total is None else {"max_total": args.max_total}
    deadline = None if args.budget is None else time.monotonic() + args.budget
    checked = passed = 0
    failures = []
    exhausted = False
    for check in suite(args.rank, args.seed, **kwargs):
        checked += 1
        if check.passed:
            passed += 1
        elif len(failures) < 50:
            failures.append({"name": check.name, **check.detail})
        if deadline is not None and time.monotonic() > deadline:
            exhausted = True
            break
    payload = {
        "suite": args.suite,
        "rank": args.rank,
        "checked": checked,
        "passed": passed,
        "failed": checked - passed,
        "complete": not exhausted,
        "failures": failures,
    }
    _emit(_envelope(args, payload, args.started), out)
    if exhausted:
        return EXIT_BUDGET
    return EXIT_OK if passed == checked else EXIT_MISMATCH


def cmd_gfp(args, out) -> int:
    check_rank(args.rank)
    reports = [gfp_stabilization_check(args.rank, m, args.n) for m in range(args.max_m + 1)]
    payload = {"rank": args.rank, "reports": [r.to_json() for r in reports]}
    _emit(_envelope(args, payload, args.started), out)
    return EXIT_OK if all(r.verdict == "pass" for r in reports) else EXIT_MISMATCH


def cmd_localize(args, out) -> int:
    check_rank(args.rank)
    try:
        gens = [int(x) for x in args.subgroup.split(",") if x.strip()] if args.subgroup else []
    except ValueError:
        raise InvalidInputError(f"bad subgroup list {args.subgroup!r}")
    sub = Subgroup.generated_by(args.rank, gens)
    payload = build_local_presentation(args.rank, sub).to_json()
    code = EXIT_OK
    if args.verify:
        rep = verify_local_relations(args.rank, sub)
        payload["check"] = rep.to_json()
        code = EXIT_OK if rep.passed else EXIT_MISMATCH
    _emit(_envelope(args, payload, args.started), out)
    return code


def cmd_cache(args, out) -> int:
    cache = OracleCache(args.cache, verify=args.verify_cache)
    payload = {"path": str(args.cache), "entries": len(cache), "mismatches": cache.mismatches}
    _emit(_envelope(args, payload, args.started), out)
    return EXIT_MISMATCH if cache.mismatches else EXIT_OK


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bredon", description="Graded pieces of H(A, *) for elementary abelian 2-groups.")
    p.add_argument("--version", action="version", version=f"bredon {__version__}")
    p.add_argument("--timing", action="store_true", help="add elapsed seconds to the envelope")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cache_flags(sp):
        sp.add_argument("--cache", metavar="PATH", help="oracle JSON-lines cache")
        sp.add_argument("--verify-cache", action="store_true", help="recompute cached values and compare")

    sp = sub.add_parser("circuits", help="enumerate minimally dependent character sets")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--max-size", type=int)
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.set_defaults(func=cmd_circuits)

    sp = sub.add_parser("count", help="count circuits by size")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--enumerate", action="store_true", help="also count by streaming enumeration")
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("dim", help="dimension of one graded piece, both ways")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--rep", required=True, help="e.g. 1,2,3 or 1^2,3")
    sp.add_argument("--max-total", type=int, help="override the |W| cap")
    cache_flags(sp)
    sp.set_defaults(func=cmd_dim)

    sp = sub.add_parser("table", help="dimension table over all small degrees")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--max-total", type=int, default=4)
    sp.add_argument("--max-m", type=int)
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.add_argument("--threads", type=int, default=1)
    cache_flags(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", choices=sorted(SUITES), required=True)
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=float, help="seconds; exit 3 with a partial report when exceeded")
    sp.add_argument("--max-total", type=int, help="|W| bound for sweeping suites")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gfp", help="compare stabilized dimensions with the geometric fixed points")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--max-m", type=int, default=3)
    sp.add_argument("--n", type=int, help="multiple of the reduced regular representation (default m+1)")
    sp.set_defaults(func=cmd_gfp)

    sp = sub.add_parser("localize", help="presentation of the localization at a subgroup")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--subgroup", default="", help="comma list of element masks")
    sp.add_argument("--verify", action="store_true", help="check every relation clears into the ideal")
    sp.set_defaults(func=cmd_localize)

    sp = sub.add_parser("cache", help="inspect or verify an oracle cache file")
    sp.add_argument("--cache", metavar="PATH", required=True)
    sp.add_argument("--verify-cache", action="store_true")
    sp.set_defaults(func=cmd_cache)
    return p


def main(argv=None, out=None, err=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    started = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"bredon: {exc}\n")
        return EXIT_USAGE
    args.argv = argv
    args.started = started
    try:
        return args.func(args, out)
    except (InvalidInputError, ResourceError) as exc:
        err.write(f"bredon: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
