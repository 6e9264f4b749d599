"""Empirical compression bounds of symbol sequences under competing parsing models."""

__version__ = "0.1.0"

from .analysis import analyze, evaluate_model, scan
from .estimators import (
    LZ78CodeLength,
    MDLModelSelector,
    MixtureCodeLength,
    NMLCodeLength,
    PermutationTest,
    WordParser,
)
from .ingest import load_fixture, read_fasta, read_raw
from .expfam import WordCounts, empirical_entropy_bits, multinomial_mle
from .nml import CodeLengthReport, nml_codelength_multinomial, shtarkov_lognormalizer_exact
from .parsing import ParsingModel, SymbolSequence, infer_alphabet

__all__ = [
    "CodeLengthReport",
    "LZ78CodeLength",
    "MDLModelSelector",
    "MixtureCodeLength",
    "NMLCodeLength",
    "ParsingModel",
    "PermutationTest",
    "SymbolSequence",
    "WordCounts",
    "WordParser",
    "analyze",
    "empirical_entropy_bits",
    "evaluate_model",
    "infer_alphabet",
    "load_fixture",
    "multinomial_mle",
    "nml_codelength_multinomial",
    "read_fasta",
    "read_raw",
    "scan",
    "shtarkov_lognormalizer_exact",
]
