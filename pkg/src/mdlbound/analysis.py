"""Evaluate parsing models on a sequence and pick the shortest description."""

from dataclasses import dataclass
from typing import Iterable, Sequence

from .lz78 import lz78_codelength, lz78_parse
from .nml import CodeLengthReport, nml_codelength_multinomial
from .parsing import ParsingModel, SymbolSequence, count_words, expand_model_labels, table_models

LZ78 = "lz78"


def raw_bits(seq: SymbolSequence, model: ParsingModel, bits_per_symbol: float | None = None) -> float:
    """Uncompressed size of the symbols a model's parse covers.

    A k-mer parse drops up to ``k - 1`` symbols at each end; only the
    covered ones count.  For codon translation that is ``3 * words`` input
    symbols, not the amino-acid string.
    """
    bps = seq.bits_per_symbol if bits_per_symbol is None else bits_per_symbol
    return model.covered_symbols(len(seq)) * bps


def evaluate_model(
    seq: SymbolSequence, model: ParsingModel, bits_per_symbol: float | None = None
) -> CodeLengthReport:
    """NML code length of ``seq`` parsed by ``model``."""
    if model.kind == "amino_acid" and not seq.is_nucleotide:
        raise ValueError("the amino-acid model needs a nucleotide alphabet (A, C, G, T)")
    counts = count_words(model.parse(seq))
    return nml_codelength_multinomial(counts, raw_bits(seq, model, bits_per_symbol), model.label)


def evaluate_lz78(seq: SymbolSequence, bits_per_symbol: float | None = None) -> CodeLengthReport:
    bps = seq.bits_per_symbol if bits_per_symbol is None else bits_per_symbol
    return lz78_codelength(lz78_parse(seq), seq.bits_per_symbol, raw_bits=len(seq) * bps)


def resolve_models(labels: Iterable[str]) -> list:
    """Model labels to ``ParsingModel`` objects, with ``'lz78'`` passed through."""
    out = []
    for label in labels:
        if label.strip().lower() == LZ78:
            out.append(LZ78)
        else:
            out.extend(expand_model_labels([label]))
    return out


def default_models(seq: SymbolSequence, max_word_length: int = 4) -> list[ParsingModel]:
    return table_models(max_word_length, amino_acid=seq.is_nucleotide)


def analyze(
    seq: SymbolSequence, models: Sequence | None = None, bits_per_symbol: float | None = None
) -> list[CodeLengthReport]:
    """One report per model, in the given order.

    ``models`` may mix ``ParsingModel`` objects, label strings and ``'lz78'``.
    """
    if models is None:
        models = default_models(seq)
    resolved = []
    for model in models:
        resolved.extend(resolve_models([model]) if isinstance(model, str) else [model])
    reports = []
    for model in resolved:
        if model == LZ78:
            reports.append(evaluate_lz78(seq, bits_per_symbol))
        else:
            reports.append(evaluate_model(seq, model, bits_per_symbol))
    return reports


@dataclass(frozen=True)
class ScanResult:
    models: tuple
    reports: tuple
    best_index: int

    @property
    def best_model(self) -> ParsingModel:
        return self.models[self.best_index]

    @property
    def best_report(self) -> CodeLengthReport:
        return self.reports[self.best_index]


def scan(
    seq: SymbolSequence,
    max_word_length: int = 4,
    include_amino_acid: bool = False,
    bits_per_symbol: float | None = None,
) -> ScanResult:
    """Evaluate every fixed-length model up to ``max_word_length``.

    The winner is the model with the fewest total bits.
    Models are ordered by word length then phase and the first minimum wins,
    so ties go to the smaller k, then the smaller phase.  Translation models
    are lossy and are only added on request.
    """
    if max_word_length < 1:
        raise ValueError(f"max word length must be >= 1, got {max_word_length}")
    models = table_models(max_word_length, amino_acid=False)
    if include_amino_acid and seq.is_nucleotide:
        models += [ParsingModel.amino_acid(p) for p in range(3)]
    reports = [evaluate_model(seq, m, bits_per_symbol) for m in models]
    best = min(range(len(reports)), key=lambda i: reports[i].total_bits)
    return ScanResult(tuple(models), tuple(reports), best)
