"""Command-line front end and corpus engine.

Subcommands: ``check`` (class membership report), ``color`` (coloring
certificate), ``oracle`` (exact omega and chi), ``witness`` (built-in
tightness witnesses), ``scan`` (exhaustive small-n verification) and
``sample`` (seeded rejection sampling of class members).  Data goes to
stdout, diagnostics to stderr; exit code 0 on success, 1 when a violation
or out-of-class input is found, 2 on usage or parse errors.

The random generator is splitmix64 over the seed; a graph on n vertices
consumes one 64-bit word per vertex pair in lexicographic order (0,1),
(0,2), ..., (n-2,n-1), and the edge is present when the word is below
p * 2^64.  Seeds are therefore portable across implementations.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from dataclasses import dataclass, field

from .colorer import (
    ColorerError,
    NotInClass,
    certificate_to_json,
    check_certificate,
    color_bounded,
)
from .graphs import Graph, GraphParseError, _graph_nocheck, graph6_decode, graph6_encode
from .oracles import chromatic_number, clique_number
from .patterns import class_membership, is_class_member
from .witnesses import EXPECTED_REPORTS, WITNESS_BUILDERS, verify_witness


@dataclass
class RunConfig:
    mode: str = "check"
    input: str = "-"
    n: int | None = None
    p: float = 0.5
    count: int = 1
    seed: int = 1
    strict: bool = False
    assert_proofs: bool = False
    oracle: bool = False
    fmt: str = "json"
    workers: int = 1


@dataclass
class CorpusRecord:
    graph6: str
    n: int
    omega: int
    chi: int | None
    colors_used: int
    branch: str
    ok: bool
    millis: float


@dataclass
class ScanSummary:
    graphs_seen: int = 0
    members: int = 0
    violations: int = 0
    branch_histogram: dict = field(default_factory=dict)


CSV_FIELDS = ["graph6", "n", "omega", "chi", "colors_used", "branch", "ok", "millis"]


# -- deterministic RNG --------------------------------------------------------

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64: x += 0x9E3779B97F4A7C15; mix with shifts/multiplies."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)


def random_graph(n: int, p: float, rng: SplitMix64) -> Graph:
    """One G(n, p) draw, consuming one word per pair in lexicographic order."""
    threshold = int(p * (1 << 64))
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.next() < threshold:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return _graph_nocheck(n, tuple(rows))


@dataclass
class SampleStats:
    drawn: int = 0
    accepted: int = 0

    @property
    def rejection_rate(self) -> float:
        return 1.0 - self.accepted / self.drawn if self.drawn else 0.0


class SampleGiveUp(RuntimeError):
    pass


_GIVE_UP_WINDOW = 1_000_000


def sample_class(n: int, p: float, count: int, seed: int):
    """Rejection-sample ``count`` class members from G(n, p); deterministic
    under the seed.  Returns (graphs, stats); gives up if the acceptance
    rate over a million draws falls below 1e-6."""
    if not 0 < p < 1:
        raise ValueError("edge probability must be strictly between 0 and 1")
    rng = SplitMix64(seed)
    stats = SampleStats()
    out: list[Graph] = []
    window = 0
    while len(out) < count:
        g = random_graph(n, p, rng)
        stats.drawn += 1
        window += 1
        if is_class_member(g):
            out.append(g)
            stats.accepted += 1
            window = 0
        elif window >= _GIVE_UP_WINDOW:
            raise SampleGiveUp(
                f"acceptance rate below 1e-6 at n={n}, p={p}: "
                f"{stats.accepted}/{stats.drawn} accepted"
            )
    return out, stats


# -- scan ---------------------------------------------------------------------

_PAIRS = {n: [(i, j) for i in range(n) for j in range(i + 1, n)] for n in range(8)}

SCAN_MAX_N = 7


def _graph_from_mask(n: int, mask: int) -> Graph:
    rows = [0] * n
    t = 0
    pairs = _PAIRS[n]
    while mask:
        if mask & 1:
            i, j = pairs[t]
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        mask >>= 1
        t += 1
    return _graph_nocheck(n, tuple(rows))


def _process_member(g: Graph, cfg: RunConfig) -> CorpusRecord:
    t0 = time.perf_counter()
    try:
        cert = color_bounded(g, strict=cfg.strict, assert_proofs=cfg.assert_proofs)
        ok = bool(check_certificate(g, cert))
        used = cert.coloring.palette_size
        omega = cert.omega
        branch = cert.trace.branch_id
        ok = ok and used <= 2 * omega
    except ColorerError:
        cert = None
        ok = False
        used = 0
        branch = "error"
        omega, _ = clique_number(g)
    chi = None
    if cfg.oracle:
        chi = chromatic_number(g).chi
        if chi is not None and chi > 2 * omega:
            ok = False
    millis = (time.perf_counter() - t0) * 1000.0
    return CorpusRecord(
        graph6=graph6_encode(g),
        n=g.n,
        omega=omega,
        chi=chi,
        colors_used=used,
        branch=branch,
        ok=ok,
        millis=round(millis, 3),
    )


def _scan_masks(args) -> tuple[int, list[CorpusRecord]]:
    n, lo, hi, cfg = args
    seen = 0
    records = []
    for mask in range(lo, hi):
        seen += 1
        g = _graph_from_mask(n, mask)
        if not is_class_member(g):
            continue
        records.append(_process_member(g, cfg))
    return seen, records


def scan_exhaustive(n: int, cfg: RunConfig | None = None):
    """Color-and-verify every labeled n-vertex class member.

    Returns (records, summary): ``records`` is a generator of CorpusRecord
    in deterministic input order, and ``summary`` fills in as the stream is
    consumed (complete after exhaustion).  Built-in generation is capped at
    n=7 (2^21 labeled graphs); feed larger graphs through scan_stream.
    """
    cfg = cfg or RunConfig(mode="scan")
    if n > SCAN_MAX_N:
        raise ValueError(
            f"exhaustive generation is capped at n={SCAN_MAX_N}; "
            f"stream graph6 input for larger n"
        )
    total = 1 << (n * (n - 1) // 2)
    summary = ScanSummary()

    def run():
        workers = max(1, cfg.workers)
        if workers == 1 or total < 1 << 10:
            summary.graphs_seen = total
            for mask in range(total):
                g = _graph_from_mask(n, mask)
                if not is_class_member(g):
                    continue
                yield _tally(_process_member(g, cfg), summary)
        else:
            import multiprocessing as mp

            # pool.imap keeps chunk order, so records stay in input order
            chunk = max(1 << 8, total // (workers * 16))
            ranges = [
                (n, lo, min(lo + chunk, total), cfg)
                for lo in range(0, total, chunk)
            ]
            with mp.Pool(workers) as pool:
                for seen, recs in pool.imap(_scan_masks, ranges):
                    summary.graphs_seen += seen
                    for rec in recs:
                        yield _tally(rec, summary)

    return run(), summary


def _tally(rec: CorpusRecord, summary: ScanSummary) -> CorpusRecord:
    summary.members += 1
    summary.branch_histogram[rec.branch] = (
        summary.branch_histogram.get(rec.branch, 0) + 1
    )
    if not rec.ok:
        summary.violations += 1
    return rec


def scan_stream(graphs, cfg: RunConfig | None = None):
    """Scan an arbitrary iterable of graphs (e.g. a graph6 stream).
    Returns (record generator, live summary) like scan_exhaustive."""
    cfg = cfg or RunConfig(mode="scan")
    summary = ScanSummary()

    def run():
        for g in graphs:
            summary.graphs_seen += 1
            if not is_class_member(g):
                continue
            yield _tally(_process_member(g, cfg), summary)

    return run(), summary


# -- emitters -----------------------------------------------------------------


def _record_dict(rec: CorpusRecord) -> dict:
    return {
        "graph6": rec.graph6,
        "n": rec.n,
        "omega": rec.omega,
        "chi": rec.chi,
        "colors_used": rec.colors_used,
        "branch": rec.branch,
        "ok": rec.ok,
        "millis": rec.millis,
    }


def emit_records(records, fmt: str, out) -> None:
    if fmt == "json":
        for rec in records:
            out.write(json.dumps(_record_dict(rec), separators=(",", ":")) + "\n")
    else:
        writer = csv.writer(out)
        writer.writerow(CSV_FIELDS)
        for rec in records:
            d = _record_dict(rec)
            writer.writerow(["" if d[k] is None else d[k] for k in CSV_FIELDS])


# -- CLI ----------------------------------------------------------------------


def _read_graphs(path: str):
    stream = sys.stdin if path == "-" else open(path, "r", encoding="ascii")
    try:
        for lineno, line in enumerate(stream, 1):
            s = line.strip()
            if not s or s == ">>graph6<<":
                continue
            try:
                yield graph6_decode(s)
            except GraphParseError as exc:
                raise GraphParseError(f"line {lineno}: {exc}") from None
    finally:
        if stream is not sys.stdin:
            stream.close()


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="twoomega",
        description="Bounded coloring of (p3up2, w4)-free graphs with certificates",
    )
    sub = ap.add_subparsers(dest="mode", required=True)

    p_check = sub.add_parser("check", help="class membership report per input graph")
    p_check.add_argument("input", help="graph6 file, or - for stdin")

    p_color = sub.add_parser("color", help="coloring certificate per input graph")
    p_color.add_argument("input", help="graph6 file, or - for stdin")
    p_color.add_argument("--strict", action="store_true",
                         help="reject graphs outside the class")
    p_color.add_argument("--assert-proofs", action="store_true",
                         help="verify every structural claim of the fired branch")

    p_oracle = sub.add_parser("oracle", help="exact omega and chi per input graph")
    p_oracle.add_argument("input", help="graph6 file, or - for stdin")

    p_wit = sub.add_parser("witness", help="emit a built-in tightness witness")
    p_wit.add_argument("name", choices=sorted(WITNESS_BUILDERS))
    p_wit.add_argument("--verify", action="store_true",
                       help="recompute the report instead of using pinned values")

    p_scan = sub.add_parser("scan", help="exhaustive verification over all labeled graphs")
    p_scan.add_argument("--n", type=int, help="vertex count for built-in generation (<= 7)")
    p_scan.add_argument("--input", help="graph6 stream instead of built-in generation")
    p_scan.add_argument("--oracle", action="store_true", help="also compute exact chi")
    p_scan.add_argument("--assert-proofs", action="store_true")
    p_scan.add_argument("--format", choices=["json", "csv"], default="json")
    p_scan.add_argument("--summary-only", action="store_true",
                        help="suppress per-member records")

    p_sample = sub.add_parser("sample", help="rejection-sample class members")
    p_sample.add_argument("--n", type=int, required=True)
    p_sample.add_argument("--p", type=float, required=True)
    p_sample.add_argument("--count", type=int, required=True)
    p_sample.add_argument("--seed", type=int, default=1)
    return ap


def cli_main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _dispatch(args)
    except GraphParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, SampleGiveUp, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    out = sys.stdout
    if args.mode == "check":
        worst = 0
        for g in _read_graphs(args.input):
            report = class_membership(g)
            obj = {
                "member": report.member,
                "violations": [
                    {"pattern": v.pattern_id, "map": list(v.map)}
                    for v in report.violations
                ],
            }
            out.write(json.dumps(obj, separators=(",", ":")) + "\n")
            if not report.member:
                worst = 1
        return worst

    if args.mode == "color":
        for g in _read_graphs(args.input):
            try:
                cert = color_bounded(
                    g, strict=args.strict, assert_proofs=args.assert_proofs
                )
            except NotInClass as exc:
                print(f"not in class: {exc}", file=sys.stderr)
                return 1
            except ColorerError as exc:
                print(f"coloring failed: {exc}", file=sys.stderr)
                return 1
            out.write(certificate_to_json(cert) + "\n")
            if not check_certificate(g, cert):
                print("certificate failed independent check", file=sys.stderr)
                return 1
        return 0

    if args.mode == "oracle":
        for g in _read_graphs(args.input):
            omega, witness = clique_number(g)
            res = chromatic_number(g)
            obj = {"n": g.n, "omega": omega, "chi": res.chi, "clique": list(witness)}
            out.write(json.dumps(obj, separators=(",", ":")) + "\n")
        return 0

    if args.mode == "witness":
        g = WITNESS_BUILDERS[args.name]()
        expected = EXPECTED_REPORTS[args.name]
        if args.verify:
            report, mismatches = verify_witness(g, expected)
            if mismatches:
                print(f"witness mismatch on fields: {mismatches}", file=sys.stderr)
                return 1
        else:
            report = expected
        out.write(graph6_encode(g) + "\n")
        obj = {
            "name": report.name,
            "n": report.n,
            "m": report.m,
            "class_member": report.class_member,
            "omega": report.omega,
            "chi": report.chi,
            "bound_tight": report.bound_tight,
        }
        out.write(json.dumps(obj, separators=(",", ":")) + "\n")
        return 0

    if args.mode == "scan":
        cfg = RunConfig(
            mode="scan",
            oracle=args.oracle,
            assert_proofs=args.assert_proofs,
            fmt=args.format,
            workers=int(os.environ.get("TWOOMEGA_WORKERS", "1")),
        )
        if args.input:
            records, summary = scan_stream(_read_graphs(args.input), cfg)
        elif args.n is not None:
            records, summary = scan_exhaustive(args.n, cfg)
        else:
            print("scan needs --n or --input", file=sys.stderr)
            return 2
        writer = None
        if not args.summary_only and args.format == "csv":
            writer = csv.writer(out)
            writer.writerow(CSV_FIELDS)
        reproducer = None
        for rec in records:
            if not args.summary_only:
                if writer is not None:
                    d = _record_dict(rec)
                    writer.writerow(["" if d[k] is None else d[k] for k in CSV_FIELDS])
                else:
                    out.write(json.dumps(_record_dict(rec), separators=(",", ":")) + "\n")
            if not rec.ok:
                reproducer = rec
                break
        out.write(json.dumps({
            "graphs_seen": summary.graphs_seen,
            "members": summary.members,
            "violations": summary.violations,
            "branch_histogram": dict(sorted(summary.branch_histogram.items())),
        }, separators=(",", ":")) + "\n")
        if reproducer is not None:
            print(f"violation reproducer: {reproducer.graph6}", file=sys.stderr)
            return 1
        return 0

    if args.mode == "sample":
        graphs, stats = sample_class(args.n, args.p, args.count, args.seed)
        for g in graphs:
            out.write(graph6_encode(g) + "\n")
        print(
            f"drawn={stats.drawn} accepted={stats.accepted} "
            f"rejection_rate={stats.rejection_rate:.4f} seed={args.seed}",
            file=sys.stderr,
        )
        return 0

    return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
