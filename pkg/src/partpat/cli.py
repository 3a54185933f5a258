"""Command-line front end: enumerate, count, verify, wilf, guess."""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
from typing import Sequence

from .core import PartitionError, PartitionSyntaxError, SetPartition, parse_partition
from .formulas import UnsupportedFamily, bell_counts, closed_form_counts, count_12_3_etc, count_max_pattern, count_min_pattern
from .generate import SizeSet, enumerate_partitions
from .patterns import Notion, avoidance_profile, wilf_classes
from .precursive import PreconditionError, guess
from .suites import SUITES, run_suite

FORMAT_VERSION = "1"
DEFAULT_CAP = 14

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _workers(args) -> int:
    if getattr(args, "workers", None):
        return args.workers
    try:
        return max(1, int(os.environ.get("PARTPAT_THREADS", "1")))
    except ValueError:
        raise UsageError("PARTPAT_THREADS must be a positive integer") from None


def _check_cap(value: int, args, what: str = "n") -> None:
    if value > args.cap and not args.force:
        raise UsageError(f"{what}={value} exceeds the safety cap {args.cap}; pass --force to override")


def _emit_json(command: str, params: dict, result: dict, out) -> None:
    json.dump({"command": command, "params": params, "result": result, "version": FORMAT_VERSION}, out, ensure_ascii=False)
    out.write("\n")


def _parse_pattern(text: str) -> SetPartition:
    try:
        return parse_partition(text)
    except PartitionSyntaxError as e:
        raise UsageError(f"pattern syntax error: {e}") from None


# families


def family_sequence(name: str, N: int, cap: int = DEFAULT_CAP) -> list[int]:
    """Terms n = 0..N-1 of a named family.

    Names: ``bell``, ``min:m=4``, ``max:m=4``, ``12_3:m=4``, ``sub:<pattern>``
    and ``rgf:<pattern>``.  Pattern families use a closed form when one is
    known and brute force (length limited by ``cap``) otherwise.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    name = name.strip()
    if name == "bell":
        return bell_counts(N - 1) if N else []
    m_match = re.fullmatch(r"(min|max|12_3):m=(\d+)", name)
    if m_match:
        kind, m = m_match.group(1), int(m_match.group(2))
        fn = {"min": count_min_pattern, "max": count_max_pattern, "12_3": count_12_3_etc}[kind]
        return [fn(n, m) for n in range(N)]
    p_match = re.fullmatch(r"(sub|rgf):(.+)", name)
    if p_match:
        notion = Notion(p_match.group(1))
        pi = parse_partition(p_match.group(2))
        try:
            return closed_form_counts(pi, notion, N - 1) if N else []
        except UnsupportedFamily:
            if N - 1 > cap:
                raise UsageError(f"no closed form for {name}; brute force beyond n={cap} needs --force") from None
            return list(avoidance_profile(pi, notion, N - 1).counts) if N else []
    raise UsageError(f"unknown family {name!r}")


# commands


def cmd_enumerate(args, out) -> int:
    _check_cap(args.n, args)
    filters = set(args.filter or [])
    sizes = SizeSet.of(int(x) for x in args.sizes.split(",")) if args.sizes else None
    parts = enumerate_partitions(
        args.n,
        max_blocks=args.max_blocks,
        sizes=sizes,
        layered="layered" in filters,
        matching="matching" in filters,
    )
    params = {"n": args.n, "filters": sorted(filters), "max_blocks": args.max_blocks, "sizes": args.sizes}
    if args.format == "json":
        _emit_json("enumerate", params, {"partitions": [str(p) for p in parts]}, out)
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["index", "partition", "rgf"])
        for i, p in enumerate(parts):
            w.writerow([i, str(p), "".join(map(str, p.rgf)) if p.num_blocks < 10 else ",".join(map(str, p.rgf))])
    else:
        for p in parts:
            out.write(f"{p}\n")
    return EXIT_OK


def cmd_count(args, out) -> int:
    patterns = tuple(_parse_pattern(p) for p in args.pattern)
    notion = Notion(args.notion)
    _check_cap(args.N, args, "N")
    profile = avoidance_profile(patterns, notion, args.N, _workers(args))
    start = args.start
    closed = None
    if args.closed_form:
        if len(patterns) != 1:
            raise UsageError("--closed-form needs exactly one pattern")
        try:
            closed = closed_form_counts(patterns[0], notion, args.N)
        except UnsupportedFamily as e:
            raise UsageError(str(e.args[0])) from None
    rows = []
    for n in range(start, args.N + 1):
        row = {"n": n, "count": profile.counts[n]}
        if closed is not None:
            row["closed_form"] = closed[n]
            row["match"] = closed[n] == profile.counts[n]
        rows.append(row)
    params = {"patterns": [str(p) for p in patterns], "notion": notion.value, "N": args.N, "start": start}
    status = EXIT_OK if closed is None or all(r["match"] for r in rows) else EXIT_FAIL
    if args.format == "json":
        result = {"profile": profile.to_dict(), "rows": [
            {k: (str(v) if k in ("count", "closed_form") else v) for k, v in r.items()} for r in rows]}
        _emit_json("count", params, result, out)
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(list(rows[0].keys()) if rows else ["n", "count"])
        for r in rows:
            w.writerow([str(v).lower() if isinstance(v, bool) else v for v in r.values()])
    else:
        for r in rows:
            line = f"{r['n']}\t{r['count']}"
            if closed is not None:
                line += f"\t{r['closed_form']}\t{'match' if r['match'] else 'MISMATCH'}"
            out.write(line + "\n")
    return status


def cmd_verify(args, out) -> int:
    _check_cap(args.max_n, args, "max-n")
    try:
        checks = run_suite(args.suite, args.max_n, args.m)
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None
    ok = all(c.ok for c in checks)
    params = {"suite": args.suite, "max_n": args.max_n, "m": args.m}
    if args.format == "json":
        _emit_json("verify", params, {"passed": ok, "checks": [c.to_dict() for c in checks]}, out)
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["check", "ok", "counterexample"])
        for c in checks:
            w.writerow([c.name, str(c.ok).lower(), c.counterexample or ""])
    else:
        for c in checks:
            out.write(c.line() + "\n")
        out.write(f"{'ALL PASS' if ok else 'FAILURES'}: {sum(c.ok for c in checks)}/{len(checks)}\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_wilf(args, out) -> int:
    if args.m > 5 and not args.force:
        raise UsageError("m > 5 needs --force")
    _check_cap(args.N, args, "N")
    notion = Notion(args.notion)
    classes = wilf_classes(args.m, notion, args.N, _workers(args))
    params = {"m": args.m, "notion": notion.value, "N": args.N}
    if args.format == "json":
        result = {
            "empirical_up_to": args.N,
            "classes": [{"patterns": [str(p) for p in pats], "counts": [str(c) for c in counts]}
                        for counts, pats in classes],
        }
        _emit_json("wilf", params, result, out)
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["class", "patterns", "counts"])
        for i, (counts, pats) in enumerate(classes, start=1):
            w.writerow([i, " ".join(p.compact() for p in pats), " ".join(map(str, counts))])
    else:
        out.write(f"# {len(classes)} classes (profiles equal for n <= {args.N}; empirical)\n")
        for counts, pats in classes:
            out.write(f"{{{', '.join(p.compact() for p in pats)}}}: {','.join(map(str, counts))}\n")
    return EXIT_OK


def _read_sequence(text: str) -> list[int]:
    items = [t for t in re.split(r"[\s,]+", text.strip()) if t]
    try:
        return [int(t) for t in items]
    except ValueError as e:
        raise UsageError(f"bad sequence term: {e}") from None


def cmd_guess(args, out) -> int:
    sources = [s for s in (args.seq, args.file, args.family) if s is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --seq, --file, --family")
    if args.seq is not None:
        a, source = _read_sequence(args.seq), "inline"
    elif args.file is not None:
        with open(args.file) as fh:
            a, source = _read_sequence(fh.read()), args.file
    else:
        if args.N is None:
            raise UsageError("--family needs -N (number of terms)")
        a, source = family_sequence(args.family, args.N, args.cap if not args.force else 10**9), args.family
    try:
        report = guess(a, args.K, args.D)
    except PreconditionError as e:
        raise UsageError(str(e)) from None
    params = {"source": source, "terms": len(a), "K": args.K, "D": args.D}
    result = report.to_dict()
    result["sequence"] = [str(x) for x in a]
    if args.format == "json":
        _emit_json("guess", params, result, out)
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["outcome", "order", "degree", "recurrence", "kernel_dim", "held_out_verified"])
        rec = report.recurrence
        w.writerow([report.outcome, rec.order if rec else "", rec.degree if rec else "", str(rec) if rec else "",
                    report.kernel_dim, report.held_out])
    else:
        out.write(f"sequence: {','.join(map(str, a))}\n")
        out.write(f"searched order <= {args.K}, degree <= {args.D} ({len(report.searched)} cells)\n")
        if report.found:
            rec = report.recurrence
            out.write(f"found: {rec}\n")
            out.write(f"order {rec.order}, degree {rec.degree}, kernel dimension {report.kernel_dim}, "
                      f"{report.held_out} held-out terms verified\n")
        else:
            out.write("exhausted-bounds: no recurrence survived held-out validation "
                      "(not a proof that none exists)\n")
        out.write(json.dumps(result["recurrence"]) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="safety cap on n (default %(default)s)")
    common.add_argument("--force", action="store_true", help="ignore the safety cap")
    common.add_argument("--workers", type=int, default=None, help="worker processes (default: PARTPAT_THREADS or 1)")

    parser = argparse.ArgumentParser(prog="partpat", description="Pattern avoidance in set partitions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list partitions of [n]")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--filter", action="append", choices=["layered", "matching"])
    p.add_argument("--max-blocks", type=int, default=None)
    p.add_argument("--sizes", default=None, help="comma-separated allowed block sizes")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", parents=[common], help="count avoiders of one or more patterns")
    p.add_argument("-p", "--pattern", action="append", required=True)
    p.add_argument("--notion", choices=["sub", "rgf"], required=True)
    p.add_argument("-N", type=int, required=True, help="largest n")
    p.add_argument("--start", type=int, default=0, help="smallest n to print")
    p.add_argument("--closed-form", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help=f"one of {', '.join(list(SUITES) + ['all'])}")
    p.add_argument("--max-n", type=int, default=9)
    p.add_argument("-m", type=int, default=5, help="largest pattern size for families indexed by m")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("wilf", parents=[common], help="group patterns of [m] into empirical Wilf classes")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--notion", choices=["sub", "rgf"], required=True)
    p.add_argument("-N", type=int, default=8)
    p.set_defaults(func=cmd_wilf)

    p = sub.add_parser("guess", parents=[common], help="guess a P-recurrence")
    p.add_argument("--seq", default=None, help="comma-separated terms")
    p.add_argument("--file", default=None, help="file with whitespace/comma separated terms")
    p.add_argument("--family", default=None, help="bell, min:m=4, max:m=4, 12_3:m=4, sub:<pattern>, rgf:<pattern>")
    p.add_argument("-N", type=int, default=None, help="number of terms for --family")
    p.add_argument("-K", type=int, default=2, help="largest order")
    p.add_argument("-D", type=int, default=2, help="largest polynomial degree")
    p.set_defaults(func=cmd_guess)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, PartitionError) as e:
        print(f"partpat {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
