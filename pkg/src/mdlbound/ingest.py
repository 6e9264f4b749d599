"""Sequence readers (FASTA, raw text) and report writers (TSV, JSON)."""

import io
import json
import logging
import textwrap
from dataclasses import dataclass
from importlib import resources
from typing import IO, Iterable, Sequence

from .nml import REPORT_FIELDS, CodeLengthReport
from .parsing import NUCLEOTIDES, SymbolSequence, infer_alphabet
from .randomize import STATISTICS, PermutationSummary

log = logging.getLogger(__name__)

IUPAC_AMBIGUOUS = frozenset("NRYKMSWBDHVU")


class FastaParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class FastaRecord:
    identifier: str
    description: str
    sequence: str


def _text_lines(source) -> Iterable[str]:
    if isinstance(source, (bytes, bytearray)):
        source = io.BytesIO(source)
    elif isinstance(source, str):
        source = io.StringIO(source)
    for line in source:
        yield line.decode("ascii") if isinstance(line, bytes) else line


def read_fasta(source) -> list[FastaRecord]:
    """Parse FASTA from a text or byte stream (or the file's contents).

    Sequence lines may wrap; blank lines are ignored.
    """
    records = []
    header = None
    header_line = None
    chunks: list[str] = []

    def flush():
        seq = "".join(chunks)
        if not seq:
            raise FastaParseError(f"record {header[0]!r} has no sequence", header_line)
        records.append(FastaRecord(header[0], header[1], seq))

    for lineno, line in enumerate(_text_lines(source), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith(">"):
            if header is not None:
                flush()
            ident, _, desc = line[1:].strip().partition(" ")
            if not ident:
                raise FastaParseError("header without identifier", lineno)
            header, header_line, chunks = (ident, desc.strip()), lineno, []
        elif line.startswith(";"):
            continue
        else:
            if header is None:
                raise FastaParseError("sequence data before the first '>' header", lineno)
            chunks.append("".join(line.split()))
    if header is not None:
        flush()
    return records


def write_fasta(records: Iterable[FastaRecord], sink: IO[str], width: int = 70) -> None:
    for rec in records:
        head = f">{rec.identifier} {rec.description}".rstrip()
        sink.write(head + "\n")
        sink.write("\n".join(textwrap.wrap(rec.sequence, width)) + "\n")


def clean_symbols(text: str, skip_ambiguous: bool = False) -> str:
    """Strip whitespace; optionally drop IUPAC ambiguity codes from nucleotide data."""
    text = "".join(text.split())
    if skip_ambiguous:
        upper = text.upper()
        kept = "".join(c for c, u in zip(text, upper) if u not in IUPAC_AMBIGUOUS)
        dropped = len(text) - len(kept)
        if dropped:
            log.warning("dropped %d ambiguous nucleotide symbols", dropped)
        text = kept
    return text


def to_sequence(text: str, alphabet: Sequence[str] | None = None, skip_ambiguous: bool = False) -> SymbolSequence:
    """Validate raw symbol text into a ``SymbolSequence``.

    Text made only of A/C/G/T (any case) gets the full nucleotide alphabet
    when no alphabet is declared, so an absent base still costs 2 bits.
    """
    text = clean_symbols(text, skip_ambiguous)
    if not text:
        raise ValueError("empty input")
    if alphabet is None and set(text.upper()) <= set(NUCLEOTIDES):
        alphabet = NUCLEOTIDES
    return infer_alphabet(text, alphabet)


def read_raw(source, alphabet: Sequence[str] | None = None, skip_ambiguous: bool = False) -> SymbolSequence:
    """Read a raw symbol dump; whitespace is ignored.

    Raises ``AlphabetError`` (naming offset and symbol) for a symbol outside
    a declared alphabet.
    """
    text = "".join(_text_lines(source))
    text = clean_symbols(text, skip_ambiguous)
    if not text:
        raise ValueError("empty input")
    return infer_alphabet(text, alphabet)


def write_raw(seq: SymbolSequence, sink: IO[str]) -> None:
    sink.write(seq.symbols + "\n")


def load_fixture(name: str) -> FastaRecord:
    """A bundled gene sequence: ``'b0059'`` or ``'b0060'``."""
    path = resources.files("mdlbound") / "data" / f"{name}.fasta"
    with path.open("r") as fh:
        return read_fasta(fh)[0]


def _fmt(value) -> str:
    if isinstance(value, float):
        # avoid printing "-0.0000"
        return f"{value + 0.0:.4f}".replace("-0.0000", "0.0000")
    return str(value)


def write_report(reports, fmt: str, sink: IO[str]) -> None:
    """Write code-length reports or a permutation summary as TSV or JSON.

    TSV numbers use 4 decimals; JSON keeps full double precision.
    """
    if fmt not in ("tsv", "json"):
        raise ValueError(f"unknown report format {fmt!r}")
    if isinstance(reports, PermutationSummary):
        if fmt == "json":
            json.dump(reports.to_dict(), sink, indent=2)
            sink.write("\n")
        else:
            _write_summary_tsv(reports, sink)
        return
    reports = list(reports)
    if fmt == "json":
        json.dump([r.to_dict() for r in reports], sink, indent=2)
        sink.write("\n")
        return
    sink.write("\t".join(REPORT_FIELDS) + "\n")
    for r in reports:
        d = r.to_dict()
        sink.write("\t".join(_fmt(d[f]) for f in REPORT_FIELDS) + "\n")


def read_report_json(source) -> list[CodeLengthReport]:
    return [CodeLengthReport.from_dict(d) for d in json.load(source)]


RATE_FIELDS = ("model", "n_words", "dict_size", "rate_entropy", "rate_entropy_plus_dim", "rate_nml")


def write_rate_table(reports: Iterable[CodeLengthReport], fmt: str, sink: IO[str]) -> None:
    """Three compression rates per model: entropy only, plus ``(d/2) log2 n``, and NML."""
    rows = [
        {
            "model": r.model_label,
            "n_words": r.n_words,
            "dict_size": r.dict_size_m,
            "rate_entropy": r.rate_entropy,
            "rate_entropy_plus_dim": r.rate_bic,
            "rate_nml": r.rate,
        }
        for r in reports
    ]
    if fmt == "json":
        json.dump(rows, sink, indent=2)
        sink.write("\n")
        return
    sink.write("\t".join(RATE_FIELDS) + "\n")
    for row in rows:
        sink.write("\t".join(f"{row[f]:.6f}" if isinstance(row[f], float) else str(row[f]) for f in RATE_FIELDS) + "\n")


def _write_summary_tsv(summary: PermutationSummary, sink: IO[str]) -> None:
    lo, hi = summary.quantile_levels
    sink.write("\t".join(["statistic", "measure", *summary.labels]) + "\n")
    sink.write("\t".join(["rate_nml", "original", *(_fmt(float(v)) for v in summary.original["rate_nml"])]) + "\n")
    for stat in STATISTICS:
        cells = [summary.cell(stat, j) for j in range(len(summary.models))]
        # lower tail for rates expected above 1, upper tail for the entropy-only rate
        use_upper = stat == "rate_entropy"
        level = hi if use_upper else lo
        rows = [
            ("average", [c.mean for c in cells]),
            ("sd_x1e3", [c.sd * 1e3 for c in cells]),
            (f"q{level * 100:g}%", [c.upper if use_upper else c.lower for c in cells]),
        ]
        for measure, values in rows:
            sink.write("\t".join([stat, measure, *(_fmt(float(v)) for v in values)]) + "\n")
