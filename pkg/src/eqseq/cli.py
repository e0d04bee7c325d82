"""Command-line front end and the on-disk sequence formats.

Exit codes are a stable contract: 0 success/match, 1 usage error, 2 pair
outside the closed form's hypotheses, 3 mismatch or failed audit, 4 I/O or
parse failure.

ASCII format: optional comment lines starting '#', then '0'/'1' characters
with arbitrary whitespace ignored.  Generated files carry the header
`# eqseq p=<p> q=<q> N=<N>`.

Packed format: magic "EQSEQ\\x00\\x01\\x00", p and q as 32-bit little-endian,
N as 64-bit little-endian, then ceil(N/8) payload bytes with bit t stored at
bit (t mod 8) of byte (t div 8); trailing bits are zero.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .errors import DomainError, EqseqError, ParseError, ResourceError
from .limits import max_period
from .lincomp import AnalysisReport, berlekamp_massey, linear_complexity, minimal_polynomial_gcd, verify_theorem
from .ntcore import PrimePair, is_prime
from .sequence import BitSequence, generate_threshold, least_period
from .structverify import DEFAULT_SEED, audit_structure

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INAPPLICABLE = 2
EXIT_MISMATCH = 3
EXIT_IO = 4

PACKED_MAGIC = b"EQSEQ\x00\x01\x00"

CSV_HEADER = [
    "p", "q", "q_mod_4", "wieferich_ok", "divisibility_ok", "period",
    "lc_empirical", "lc_predicted", "match", "sigma", "millis",
]


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits with the package's usage code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------------------
# file formats


def write_ascii(seq: BitSequence, p: int, q: int) -> str:
    return f"# eqseq p={p} q={q} N={seq.length}\n{seq.to01()}\n"


def parse_ascii(text: str) -> list[int]:
    """Bits from ASCII text; raises ParseError with a 1-based position."""
    bits: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.lstrip().startswith("#"):
            continue
        for colno, ch in enumerate(line, start=1):
            if ch in "01":
                bits.append(ord(ch) - ord("0"))
            elif not ch.isspace():
                raise ParseError(
                    f"unexpected character {ch!r} in sequence file",
                    line=lineno, column=colno,
                )
    return bits


def write_packed(seq: BitSequence, p: int, q: int) -> bytes:
    n = seq.length
    header = PACKED_MAGIC + p.to_bytes(4, "little") + q.to_bytes(4, "little") + n.to_bytes(8, "little")
    return header + seq.bits.to_bytes((n + 7) // 8, "little")


def parse_packed(data: bytes) -> tuple[int, int, BitSequence]:
    if data[:8] != PACKED_MAGIC:
        raise ParseError("bad magic, not a packed eqseq file", column=1)
    if len(data) < 24:
        raise ParseError("truncated packed header", column=len(data))
    p = int.from_bytes(data[8:12], "little")
    q = int.from_bytes(data[12:16], "little")
    n = int.from_bytes(data[16:24], "little")
    if n < 1:
        raise ParseError(f"packed header declares N={n}", column=17)
    payload = data[24:]
    expected = (n + 7) // 8
    if len(payload) != expected:
        raise ParseError(
            f"payload is {len(payload)} bytes, header implies {expected}",
            column=25,
        )
    bits = int.from_bytes(payload, "little")
    if bits >> n:
        raise ParseError("trailing bits beyond N are not zero", column=25)
    return p, q, BitSequence(bits=bits, length=n, origin=(p, q))


# ---------------------------------------------------------------------------
# pair enumeration and helpers


def enumerate_pairs(max_period_bound: int) -> list[tuple[int, int]]:
    """All odd prime pairs with p | q-1 and p*q^2 <= the bound, sorted."""
    pairs: list[tuple[int, int]] = []
    p = 3
    while p * (2 * p + 1) ** 2 <= max_period_bound:
        if is_prime(p):
            q = 2 * p + 1  # q = kp + 1 with k even keeps q odd
            while p * q * q <= max_period_bound:
                if is_prime(q):
                    pairs.append((p, q))
                q += 2 * p
        p += 2
    return sorted(pairs)


def _fail(code: int, message: str) -> int:
    print(f"eqseq: error: {message}", file=sys.stderr)
    return code


def _make_pair(p: int, q: int) -> PrimePair:
    return PrimePair.create(p, q)


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


# ---------------------------------------------------------------------------
# subcommands


def _cmd_generate(args) -> int:
    try:
        pair = _make_pair(args.p, args.q)
    except DomainError as exc:
        return _fail(EXIT_USAGE, str(exc))
    if not pair.divides:
        return _fail(EXIT_INAPPLICABLE, "p must divide q-1")
    try:
        seq = generate_threshold(pair)
    except ResourceError as exc:
        return _fail(EXIT_USAGE, str(exc))
    try:
        if args.format == "ascii":
            text = write_ascii(seq, pair.p, pair.q)
            if args.out == "-":
                sys.stdout.write(text)
            else:
                with open(args.out, "w", encoding="ascii") as fh:
                    fh.write(text)
        else:
            blob = write_packed(seq, pair.p, pair.q)
            if args.out == "-":
                sys.stdout.buffer.write(blob)
            else:
                with open(args.out, "wb") as fh:
                    fh.write(blob)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write {args.out}: {exc}")
    return EXIT_OK


def _load_sequence(path: str) -> BitSequence:
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:8] == PACKED_MAGIC:
        _, _, seq = parse_packed(data)
        return seq
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not ASCII and not packed: {exc}") from None
    bits = parse_ascii(text)
    if not bits:
        raise ParseError("no sequence bits found in file")
    packed = 0
    for i, b in enumerate(bits):
        packed |= b << i
    return BitSequence(bits=packed, length=len(bits), origin="external")


def _cmd_analyze(args) -> int:
    have_pair = args.p is not None or args.q is not None
    if have_pair == (args.infile is not None):
        return _fail(EXIT_USAGE, "provide either --in or both --p and --q")
    if have_pair:
        if args.p is None or args.q is None:
            return _fail(EXIT_USAGE, "--p and --q must be given together")
        try:
            pair = _make_pair(args.p, args.q)
        except DomainError as exc:
            return _fail(EXIT_USAGE, str(exc))
        if not pair.divides:
            return _fail(EXIT_INAPPLICABLE, "p must divide q-1")
        seq = generate_threshold(pair)
    else:
        seq = _load_sequence(args.infile)

    if args.period is not None:
        t = args.period
        if t < 1 or t > seq.length:
            return _fail(EXIT_USAGE, f"--period {t} out of range 1..{seq.length}")
        for i in range(seq.length):
            if seq.bit(i) != seq.bit(i % t):
                return _fail(
                    EXIT_USAGE,
                    f"file content is not {t}-periodic (first break at index {i})",
                )
        seq = BitSequence(bits=seq.bits & ((1 << t) - 1), length=t, origin=seq.origin)

    lc_gcd = linear_complexity(seq)
    two = BitSequence(bits=seq.bits | (seq.bits << seq.length),
                      length=2 * seq.length, origin=seq.origin)
    lc_bm, _ = berlekamp_massey(two)
    _print_json({
        "n": seq.length,
        "least_period": least_period(seq),
        "lc_gcd": lc_gcd,
        "lc_berlekamp_massey": lc_bm,
        "minpoly": minimal_polynomial_gcd(seq).render(),
    })
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        pair = _make_pair(args.p, args.q)
    except DomainError as exc:
        return _fail(EXIT_USAGE, str(exc))
    try:
        report = verify_theorem(pair)
    except ResourceError as exc:
        return _fail(EXIT_USAGE, str(exc))
    _print_json(report.to_json_dict())
    if not (report.divisibility_ok and report.wieferich_ok):
        return EXIT_INAPPLICABLE
    return EXIT_OK if report.match else EXIT_MISMATCH


def _cmd_structure(args) -> int:
    try:
        pair = _make_pair(args.p, args.q)
    except DomainError as exc:
        return _fail(EXIT_USAGE, str(exc))
    if not pair.divides:
        return _fail(EXIT_INAPPLICABLE, "p must divide q-1")
    try:
        report = audit_structure(pair, seed=args.seed)
    except ResourceError as exc:
        return _fail(EXIT_USAGE, str(exc))
    print(report.format_table(), file=sys.stderr)
    _print_json(report.to_json_dict())
    return EXIT_OK if report.all_ok else EXIT_MISMATCH


def _scan_worker(pq: tuple[int, int]) -> dict:
    p, q = pq
    try:
        report = verify_theorem(PrimePair.create(p, q))
    except EqseqError as exc:
        return {"p": p, "q": q, "error": str(exc)}
    return {"p": p, "q": q, "report": report}


def _scan_row(result: dict) -> tuple[list, bool]:
    p, q = result["p"], result["q"]
    if "error" in result:
        print(f"eqseq: scan error for ({p}, {q}): {result['error']}", file=sys.stderr)
        row = [p, q, q % 4, "n/a", "n/a", "n/a", "n/a", "n/a", "false", "n/a", "n/a"]
        return row, False

    report: AnalysisReport = result["report"]

    def boolean(v: bool) -> str:
        return "true" if v else "false"

    def opt(v):
        return "n/a" if v is None else v

    row = [
        p, q, report.q_mod_4, boolean(report.wieferich_ok),
        boolean(report.divisibility_ok), report.period_found,
        report.lc_empirical, opt(report.lc_predicted), boolean(report.match),
        opt(report.sigma), int(round(report.elapsed * 1000)),
    ]
    return row, report.match


def _cmd_scan(args) -> int:
    budget = max_period()
    if args.max_period > budget:
        return _fail(
            EXIT_USAGE,
            f"--max-period {args.max_period} exceeds budget {budget} "
            "(raise EQSEQ_MAX_PERIOD to allow it)",
        )
    pairs = enumerate_pairs(args.max_period)
    if args.jobs > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_scan_worker, pairs))
    else:
        results = [_scan_worker(pq) for pq in pairs]
    results.sort(key=lambda r: (r["p"], r["q"]))

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    all_match = True
    for result in results:
        row, ok = _scan_row(result)
        writer.writerow(row)
        all_match = all_match and ok
    try:
        if args.csv == "-":
            sys.stdout.write(buf.getvalue())
        else:
            with open(args.csv, "w", encoding="ascii", newline="") as fh:
                fh.write(buf.getvalue())
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write {args.csv}: {exc}")
    return EXIT_OK if all_match else EXIT_MISMATCH


# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="eqseq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="write one period of a threshold sequence")
    gen.add_argument("--p", type=int, required=True)
    gen.add_argument("--q", type=int, required=True)
    gen.add_argument("--out", default="-", help="output path, '-' for stdout")
    gen.add_argument("--format", choices=("ascii", "packed"), default="ascii")
    gen.set_defaults(func=_cmd_generate)

    ana = sub.add_parser("analyze", help="period/LC/minimal polynomial of a sequence")
    ana.add_argument("--in", dest="infile", help="sequence file (ascii or packed)")
    ana.add_argument("--p", type=int)
    ana.add_argument("--q", type=int)
    ana.add_argument("--period", type=int, help="treat the first PERIOD bits as one period")
    ana.set_defaults(func=_cmd_analyze)

    ver = sub.add_parser("verify", help="compare empirical LC against the closed form")
    ver.add_argument("--p", type=int, required=True)
    ver.add_argument("--q", type=int, required=True)
    ver.set_defaults(func=_cmd_verify)

    struct = sub.add_parser("structure", help="run the eight structural checks")
    struct.add_argument("--p", type=int, required=True)
    struct.add_argument("--q", type=int, required=True)
    struct.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for sampled checks above the exhaustive limit")
    struct.set_defaults(func=_cmd_structure)

    scan = sub.add_parser("scan", help="verify every qualifying pair up to a period bound")
    scan.add_argument("--max-period", type=int, required=True)
    scan.add_argument("--jobs", type=int, default=1)
    scan.add_argument("--csv", default="-", help="output path, '-' for stdout")
    scan.set_defaults(func=_cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as exc:
        return _fail(EXIT_IO, str(exc))
    except OSError as exc:
        return _fail(EXIT_IO, str(exc))
    except ResourceError as exc:
        return _fail(EXIT_USAGE, str(exc))
    except EqseqError as exc:
        return _fail(EXIT_USAGE, str(exc))


if __name__ == "__main__":
    raise SystemExit(main())
