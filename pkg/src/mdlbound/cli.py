"""Command-line interface.

Exit status: 0 on success, 1 for data or computation errors, 2 for usage
errors (bad flags, unknown model labels).
"""

import argparse
import json
import logging
import sys
from contextlib import contextmanager

from . import __version__
from .analysis import LZ78, analyze, resolve_models, scan
from .ingest import read_fasta, to_sequence, write_raw, write_rate_table, write_report
from .nml import OracleTooLargeError, asymptotic_lognormalizer, shtarkov_lognormalizer_exact
from .parsing import ParsingModel, table_models
from .randomize import permutation_study, simulate_iid

log = logging.getLogger("mdlbound")


class UsageError(Exception):
    pass


def _input_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    src = p.add_argument_group("input")
    src.add_argument("--input", "-i", metavar="PATH", help="sequence file ('-' for stdin)")
    src.add_argument("--sequence", metavar="TEXT", help="inline sequence instead of a file")
    src.add_argument("--format", choices=("fasta", "raw"), help="input format (default: detect from first character)")
    src.add_argument("--record", metavar="ID", help="FASTA record to analyze (default: first)")
    src.add_argument("--alphabet", metavar="SYMBOLS", help="declared alphabet, e.g. ACGT or 01")
    src.add_argument("--skip-ambiguous", action="store_true", help="drop IUPAC ambiguity codes instead of failing")
    src.add_argument("--raw-bits-per-symbol", type=float, metavar="F", help="override log2 |alphabet| for rates")
    return p


def _output_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    out = p.add_argument_group("output")
    out.add_argument("--output", "-o", metavar="PATH", help="write here instead of standard output")
    out.add_argument("--json", action="store_true", help="JSON instead of TSV")
    return p


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _quantiles(text: str) -> tuple:
    try:
        lo, hi = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected LO,HI") from None
    if not 0 <= lo <= hi <= 1:
        raise argparse.ArgumentTypeError("need 0 <= LO <= HI <= 1")
    return lo, hi


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdlbound", description="Compression bounds of symbol sequences under competing parsing models."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    inp, out = _input_options(), _output_options()

    p = sub.add_parser("analyze", parents=[inp, out], help="NML code length under each model")
    p.add_argument(
        "--models",
        metavar="LIST",
        help="comma-separated: fixed:K (all phases), fixed:K.P, 3.1, aa, lz78 "
        "(default: fixed:1..4 plus aa for DNA)",
    )

    p = sub.add_parser("scan", parents=[inp, out], help="MDL selection over fixed-length models")
    p.add_argument("--max-word-length", type=_positive_int, default=4, metavar="K")
    p.add_argument("--include-aa", action="store_true", help="also try codon translation in all frames")

    p = sub.add_parser("simulate", parents=[out], help="draw an i.i.d. random sequence")
    p.add_argument("--length", "-n", type=int, default=3000, metavar="N")
    p.add_argument("--alphabet", default="01", metavar="SYMBOLS")
    p.add_argument("--probs", metavar="P1,P2,...", help="symbol probabilities (default: uniform)")
    p.add_argument("--seed", type=_seed, default=0, metavar="U64")
    p.add_argument("--analyze", action="store_true", help="emit a rate table for word lengths 1..K instead")
    p.add_argument("--max-word-length", type=_positive_int, default=9, metavar="K")
    p.add_argument("--save-sequence", metavar="PATH", help="with --analyze, also write the sequence here")

    p = sub.add_parser("permute", parents=[inp, out], help="permutation null distribution of rates")
    p.add_argument("--models", metavar="LIST", help="default: fixed:1..4, all phases")
    p.add_argument("--replicates", type=_positive_int, default=1000, metavar="N")
    p.add_argument("--quantiles", type=_quantiles, default=(0.01, 0.99), metavar="LO,HI")
    p.add_argument("--seed", type=_seed, default=0, metavar="U64")

    p = sub.add_parser("exact-nml", parents=[out], help="exact vs asymptotic multinomial normalizer")
    p.add_argument("--cells", "-m", type=_positive_int, required=True, metavar="M")
    p.add_argument("--length", "-n", type=int, required=True, metavar="N")
    return parser


@contextmanager
def _sink(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _read_sequence(args):
    if (args.input is None) == (args.sequence is None):
        raise UsageError("give exactly one of --input or --sequence")
    if args.sequence is not None:
        text = args.sequence
    elif args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input) as fh:
            text = fh.read()
    fmt = args.format or ("fasta" if text.lstrip().startswith(">") else "raw")
    if fmt == "fasta":
        records = read_fasta(text)
        if not records:
            raise ValueError("no FASTA records in input")
        if args.record is None:
            rec = records[0]
        else:
            matches = [r for r in records if r.identifier == args.record]
            if not matches:
                raise ValueError(f"no record named {args.record!r}")
            rec = matches[0]
        log.info("record %s, %d symbols", rec.identifier, len(rec.sequence))
        text = rec.sequence
    alphabet = tuple(args.alphabet) if args.alphabet else None
    return to_sequence(text, alphabet, args.skip_ambiguous)


def _parse_models(text, default):
    if text is None:
        return default
    labels = [t for t in (s.strip() for s in text.split(",")) if t]
    if not labels:
        raise UsageError("empty model list")
    try:
        return resolve_models(labels)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_analyze(args):
    seq = _read_sequence(args)
    models = _parse_models(args.models, table_models(4, amino_acid=seq.is_nucleotide))
    reports = analyze(seq, models, args.raw_bits_per_symbol)
    with _sink(args.output) as fh:
        write_report(reports, "json" if args.json else "tsv", fh)
    return reports


def cmd_scan(args):
    seq = _read_sequence(args)
    result = scan(seq, args.max_word_length, args.include_aa, args.raw_bits_per_symbol)
    best, rep = result.best_model, result.best_report
    with _sink(args.output) as fh:
        if args.json:
            payload = {
                "reports": [r.to_dict() for r in result.reports],
                "best": {"model": best.label, "spec": best.spec, **rep.to_dict()},
            }
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        else:
            write_report(result.reports, "tsv", fh)
            fh.write(f"# best\t{best.label}\t{best.spec}\t{rep.total_bits:.4f}\t{rep.rate:.4f}\n")
    return result


def cmd_simulate(args):
    alphabet = tuple(args.alphabet)
    if args.probs is None:
        probs = [1.0 / len(alphabet)] * len(alphabet)
    else:
        probs = [float(x) for x in args.probs.split(",")]
    seq = simulate_iid(args.length, alphabet, probs, args.seed)
    if not args.analyze:
        with _sink(args.output) as fh:
            write_raw(seq, fh)
        return seq
    if args.save_sequence:
        with open(args.save_sequence, "w") as fh:
            write_raw(seq, fh)
    models = [ParsingModel.fixed(k, 0) for k in range(1, args.max_word_length + 1)]
    reports = [r for r in analyze(seq, [m for m in models if m.covered_symbols(len(seq)) > 0])]
    with _sink(args.output) as fh:
        write_rate_table(reports, "json" if args.json else "tsv", fh)
    return reports


def cmd_permute(args):
    seq = _read_sequence(args)
    models = _parse_models(args.models, table_models(4, amino_acid=False))
    if LZ78 in models:
        raise UsageError("lz78 is not available in permutation studies")
    summary = permutation_study(seq, models, args.replicates, args.quantiles, args.seed, args.raw_bits_per_symbol)
    with _sink(args.output) as fh:
        write_report(summary, "json" if args.json else "tsv", fh)
    return summary


def cmd_exact_nml(args):
    if args.length < 0:
        raise UsageError("--length must be >= 0")
    exact = shtarkov_lognormalizer_exact(args.cells, args.length)
    asym = asymptotic_lognormalizer(args.cells, max(args.length, 1))
    row = {"m": args.cells, "n": args.length, "exact_bits": exact, "asymptotic_bits": asym, "gap_bits": exact - asym}
    with _sink(args.output) as fh:
        if args.json:
            json.dump(row, fh, indent=2)
            fh.write("\n")
        else:
            fh.write("\t".join(row) + "\n")
            fh.write("\t".join(str(v) if isinstance(v, int) else f"{v:.6f}" for v in row.values()) + "\n")
    return row


COMMANDS = {
    "analyze": cmd_analyze,
    "scan": cmd_scan,
    "simulate": cmd_simulate,
    "permute": cmd_permute,
    "exact-nml": cmd_exact_nml,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, OSError, OracleTooLargeError) as exc:
        print(f"mdlbound: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
