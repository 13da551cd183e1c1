"""Command-line interface.

Commands: terms, primes, roots, census, verify, bench.  Structured output
comes as line-delimited JSON records (--format json-lines) or CSV with a
fixed, documented column order (--format csv); the default is a plain
table for reading.  Exit codes: 0 success, 1 verification failure or
oracle mismatch, 2 bad input or range error.

All limits are term indices n, never term values: `--limit 30` means the
30 terms up to 4*30*30 + 1 = 3601.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

from . import oracle
from ._kernels import HAVE_NUMBA, resolve_engine
from .census import census
from .errors import QuadsieveError
from .roots import all_roots, root_summary
from .sieve import (
    CHUNK_FLOOR,
    DEFAULT_SEGMENT_SIZE,
    enumerate_primes,
    primes_1mod4,
    sieve_range,
    term_value,
    terms_digest,
)
from .suites import DEFAULT_LIMITS, SUITES, run_suite

# fixed CSV column orders; never reorder within a release
CSV_COLUMNS = {
    "term": ["n", "value", "factors"],
    "prime": ["n", "value"],
    "summary": ["count"],
    "roots": ["m", "least_root", "cofactor", "roots"],
    "census": [
        "k",
        "primes",
        "n_product",
        "horizon",
        "ie_count",
        "exact_count",
        "product_value",
        "counts_agree",
        "product_matches",
        "nu_table",
    ],
    "verify": ["suite", "limit", "cases", "failures", "examples"],
    "bench": [
        "limit",
        "segment_size",
        "chunk",
        "workers",
        "engine",
        "seconds",
        "terms_per_second",
        "digest",
        "peak_segment_bytes",
    ],
}


def _factors_str(factors) -> str:
    return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in factors)


class Emitter:
    """Serializes typed records in one of the three output formats."""

    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout
        self._csv_header_done: set[str] = set()

    def _csv_cell(self, key, value):
        if key in ("factors",):
            return _factors_str(value)
        if key in ("roots", "examples"):
            return " ".join(str(v) for v in value)
        if key == "primes":
            return " ".join(str(v) for v in value)
        if key == "nu_table":
            return ";".join(f"{d}:{nu}" for d, nu in value.items())
        return value

    def write(self, rtype: str, record: dict) -> None:
        if self.fmt == "json-lines":
            self.out.write(json.dumps({"type": rtype, **record}) + "\n")
            return
        if self.fmt == "csv":
            cols = CSV_COLUMNS[rtype]
            writer = csv.writer(self.out, lineterminator="\n")
            if rtype not in self._csv_header_done:
                writer.writerow(cols)
                self._csv_header_done.add(rtype)
            writer.writerow([self._csv_cell(c, record.get(c, "")) for c in cols])
            return
        self._write_table(rtype, record)

    def _write_table(self, rtype: str, record: dict) -> None:
        if rtype == "term":
            tail = "prime" if len(record["factors"]) == 1 and record["factors"][0][1] == 1 \
                and record["factors"][0][0] == record["value"] else _factors_str(record["factors"])
            self.out.write(f"{record['n']:>10}  {record['value']:>14}  {tail}\n")
        elif rtype == "prime":
            self.out.write(f"{record['n']:>10}  {record['value']:>14}\n")
        elif rtype == "summary":
            self.out.write(f"count: {record['count']}\n")
        else:
            parts = []
            for key, value in record.items():
                if key == "examples":
                    continue
                parts.append(f"{key}={self._csv_cell(key, value)}")
            self.out.write("  ".join(str(p) for p in parts) + "\n")
            for ex in record.get("examples", []):
                self.out.write(f"    counterexample: {ex}\n")


def _parse_range(args) -> tuple[int, int]:
    if args.range is not None:
        text = args.range
        if ".." in text:
            left, right = text.split("..", 1)
            return int(left), int(right)
        return 1, int(text)
    lo = args.from_ if args.from_ is not None else 1
    hi = args.to if args.to is not None else lo
    return lo, hi


def cmd_terms(args) -> int:
    lo, hi = _parse_range(args)
    if not (1 <= lo <= hi):
        raise ValueError(f"need 1 <= from <= to, got {lo}..{hi}")
    emit = Emitter(args.format)
    for term in sieve_range(
        hi, args.segment_size, workers=args.workers, engine=args.engine
    ):
        if term.n < lo:
            continue
        if args.oracle and list(term.factors) != oracle.naive_factor(term.value):
            print(
                f"oracle mismatch at n={term.n}: sieve said {term.factors}, "
                f"trial division said {oracle.naive_factor(term.value)}",
                file=sys.stderr,
            )
            return 1
        emit.write("term", {"n": term.n, "value": term.value, "factors": [list(f) for f in term.factors]})
    return 0


def cmd_primes(args) -> int:
    emit = Emitter(args.format)
    indices = enumerate_primes(
        args.limit, args.segment_size, workers=args.workers, engine=args.engine
    )
    for n in indices:
        emit.write("prime", {"n": n, "value": term_value(n)})
    if args.format == "csv":
        print(f"count: {len(indices)}", file=sys.stderr)
    else:
        emit.write("summary", {"count": len(indices)})
    return 0


def cmd_roots(args) -> int:
    emit = Emitter(args.format)
    summary = root_summary(args.m)
    record = {
        "m": args.m,
        "least_root": summary.least_root,
        "cofactor": summary.cofactor,
        "roots": [],
    }
    if args.all:
        record["roots"] = list(all_roots(args.m).roots)
    if args.oracle:
        scanned = oracle.naive_root_scan(args.m)
        built = record["roots"] or list(all_roots(args.m).roots)
        if built != scanned:
            print(
                f"oracle mismatch for m={args.m}: built {built}, scan {scanned}",
                file=sys.stderr,
            )
            return 1
    if not args.all:
        record.pop("roots")
    emit.write("roots", record)
    return 0


def cmd_census(args) -> int:
    if (args.k is None) == (args.primes is None):
        raise ValueError("give exactly one of --k or --primes")
    if args.k is not None:
        from .sieve import first_k_basis

        basis = first_k_basis(args.k)
    else:
        from .sieve import basis_from_primes

        basis = basis_from_primes(int(p) for p in args.primes.split(","))
    report = census(basis, args.horizon)
    emit = Emitter(args.format)
    emit.write(
        "census",
        {
            "k": len(report.basis),
            "primes": [b.prime for b in report.basis],
            "n_product": report.n_product,
            "horizon": report.horizon,
            "ie_count": report.ie_count,
            "exact_count": report.exact_count,
            "product_value": report.product_value,
            "counts_agree": report.counts_agree,
            "product_matches": report.product_matches,
            "nu_table": {str(d): nu for d, nu in sorted(report.nu_table.items())},
        },
    )
    return 0 if report.counts_agree else 1


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    emit = Emitter(args.format)
    worst = 0
    for name in names:
        result = run_suite(name, args.limit, args.engine)
        emit.write(
            "verify",
            {
                "suite": result.suite,
                "limit": result.limit,
                "cases": result.cases,
                "failures": result.failures,
                "examples": result.examples,
            },
        )
        if not result.ok:
            worst = 1
    return worst


def _bench_once(args, engine: str) -> dict:
    eng = resolve_engine(engine)
    chunk = max(args.segment_size, CHUNK_FLOOR)
    n_primes = int(primes_1mod4(2 * args.limit).size)
    start = time.perf_counter()
    digest = terms_digest(
        args.limit, args.segment_size, workers=args.workers, engine=eng
    )
    elapsed = time.perf_counter() - start
    return {
        "limit": args.limit,
        "segment_size": args.segment_size,
        "chunk": chunk,
        "workers": args.workers,
        "engine": eng,
        "seconds": round(elapsed, 4),
        "terms_per_second": int(args.limit / elapsed) if elapsed > 0 else 0,
        "digest": digest,
        "peak_segment_bytes": chunk * 8 + chunk * 12 * 24 + n_primes * 16,
    }


def cmd_bench(args) -> int:
    emit = Emitter(args.format)
    if args.engine == "both":
        engines = ["numba", "numpy"] if HAVE_NUMBA else ["numpy"]
        records = [_bench_once(args, e) for e in engines]
        for rec in records:
            emit.write("bench", rec)
        if len({rec["digest"] for rec in records}) != 1:
            print("engine digests disagree", file=sys.stderr)
            return 1
        return 0
    emit.write("bench", _bench_once(args, args.engine))
    return 0


def _add_common(p, stream: bool = False) -> None:
    p.add_argument(
        "--format",
        choices=["json-lines", "csv", "table"],
        default="table",
        help="output format (default: table)",
    )
    if stream:
        p.add_argument("--segment-size", type=int, default=DEFAULT_SEGMENT_SIZE)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument(
            "--engine",
            choices=["auto", "numba", "numpy"],
            default=None,
            help="kernel engine (default: QUADSIEVE_ENGINE or auto)",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadsieve",
        description="Factor, enumerate, and count terms of the sequence 4*n*n + 1. "
        "All limits are indices n, not term values.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("terms", help="factored terms for a range of indices")
    p.add_argument("range", nargs="?", help="index range like 1..30 (or a single index)")
    p.add_argument("--from", dest="from_", type=int, default=None)
    p.add_argument("--to", type=int, default=None)
    p.add_argument("--oracle", action="store_true", help="cross-check against trial division")
    _add_common(p, stream=True)
    p.set_defaults(func=cmd_terms)

    p = sub.add_parser("primes", help="indices whose term value is prime")
    p.add_argument("--limit", type=int, required=True)
    _add_common(p, stream=True)
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("roots", help="least root and cofactor of a modulus")
    p.add_argument("m", type=int)
    p.add_argument("--all", action="store_true", help="print the full root set")
    p.add_argument("--oracle", action="store_true", help="cross-check against exhaustive scan")
    _add_common(p)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("census", help="coprime counts for a basis of primes")
    p.add_argument("--k", type=int, default=None, help="use the first k basis primes")
    p.add_argument("--primes", default=None, help="comma-separated primes, e.g. 5,13")
    p.add_argument("--horizon", type=int, default=None, help="defaults to the basis product")
    _add_common(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument(
        "--suite",
        default="all",
        choices=["all", *SUITES],
        help="which suite to run (default: all)",
    )
    p.add_argument(
        "--limit",
        type=int,
        default=None,
        help=f"suite-specific scale; defaults: {DEFAULT_LIMITS}",
    )
    p.add_argument("--engine", choices=["auto", "numba", "numpy"], default=None)
    p.add_argument(
        "--format",
        choices=["json-lines", "csv", "table"],
        default="table",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time the sieve and report a content digest")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--segment-size", type=int, default=DEFAULT_SEGMENT_SIZE)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument(
        "--engine",
        choices=["auto", "numba", "numpy", "both"],
        default=None,
        help="'both' runs the compiled and fallback engines and compares digests",
    )
    p.add_argument(
        "--format",
        choices=["json-lines", "csv", "table"],
        default="table",
    )
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QuadsieveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
