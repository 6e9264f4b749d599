"""Parsers that turn a symbol sequence into a word sequence."""

import re
from dataclasses import dataclass
from itertools import product
from math import log2
from typing import Iterable, Sequence

from .expfam import WordCounts

NUCLEOTIDES = ("A", "C", "G", "T")

# NCBI translation table 1; stop codons map to '*'
_BASES = "TCAG"
_AMINO = "FFLLSSSSYY**CC*WLLLLPPPPHHQQRRRRIIIMTTTTNNKKSSRRVVVVAAAADDEEGGGG"
GENETIC_CODE = {
    a + b + c: _AMINO[16 * i + 4 * j + k]
    for i, a in enumerate(_BASES)
    for j, b in enumerate(_BASES)
    for k, c in enumerate(_BASES)
}


class AlphabetError(ValueError):
    """A symbol is not in the declared alphabet."""

    def __init__(self, symbol, offset):
        self.symbol = symbol
        self.offset = offset
        super().__init__(f"symbol {symbol!r} at offset {offset} is not in the alphabet")


@dataclass(frozen=True)
class SymbolSequence:
    """A string of symbols together with the alphabet it is drawn from."""

    symbols: str
    alphabet: tuple

    def __post_init__(self):
        alphabet = tuple(self.alphabet)
        if not alphabet:
            raise ValueError("alphabet must contain at least one symbol")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError(f"alphabet has repeated symbols: {alphabet}")
        object.__setattr__(self, "alphabet", alphabet)
        allowed = set(alphabet)
        if not set(self.symbols) <= allowed:
            offset, s = next((i, s) for i, s in enumerate(self.symbols) if s not in allowed)
            raise AlphabetError(s, offset)

    @property
    def bits_per_symbol(self) -> float:
        return log2(len(self.alphabet))

    @property
    def is_nucleotide(self) -> bool:
        return set(self.alphabet) <= set(NUCLEOTIDES)

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return self.symbols


def infer_alphabet(raw: str, alphabet: Sequence[str] | None = None) -> SymbolSequence:
    """Wrap raw symbols, inferring the alphabet unless one is declared.

    When every declared symbol is upper case the input is upper-cased first,
    so ``acgt`` validates against ``ACGT``.
    """
    if raw is None or len(raw) == 0:
        raise ValueError("empty input")
    if alphabet is None:
        return SymbolSequence(raw, tuple(sorted(set(raw))))
    alphabet = tuple(alphabet)
    if all(a.isupper() for a in alphabet):
        raw = raw.upper()
    return SymbolSequence(raw, alphabet)


def parse_fixed(seq: SymbolSequence | str, k: int, p: int = 0) -> list[str]:
    """Non-overlapping words of length ``k`` starting at offset ``p``.

    A trailing partial word is dropped.
    """
    if k < 1:
        raise ValueError(f"word length must be >= 1, got {k}")
    if not 0 <= p < k:
        raise ValueError(f"phase must satisfy 0 <= p < {k}, got {p}")
    s = str(seq)
    n_words = max(len(s) - p, 0) // k
    return [s[p + i * k : p + (i + 1) * k] for i in range(n_words)]


def translate_codons(seq: SymbolSequence | str, p: int = 0) -> list[str]:
    """Translate in-frame codons to one-letter amino acids ('*' for stop)."""
    if not 0 <= p < 3:
        raise ValueError(f"phase must satisfy 0 <= p < 3, got {p}")
    s = str(seq).upper()
    bad = re.search(r"[^ACGT]", s)
    if bad:
        raise AlphabetError(bad.group(), bad.start())
    return [GENETIC_CODE[c] for c in parse_fixed(s, 3, p)]


def count_words(words: Iterable) -> WordCounts:
    return WordCounts.from_words(words)


_FIXED = re.compile(r"^(?:fixed:)?(\d+)(?:\.(\d+))?$")
_AMINO_ACID = re.compile(r"^(?:aa|a\.\s?a\.?)(?::(\d+))?$")


@dataclass(frozen=True)
class ParsingModel:
    """Fixed-length parsing (``kind='fixed'``) or codon translation (``kind='amino_acid'``).

    ``fixed`` with ``k=1`` is the identity parse.
    """

    kind: str
    k: int = 1
    phase: int = 0

    def __post_init__(self):
        if self.kind == "amino_acid":
            object.__setattr__(self, "k", 3)
        elif self.kind != "fixed":
            raise ValueError(f"unknown parsing kind {self.kind!r}")
        if self.k < 1:
            raise ValueError(f"word length must be >= 1, got {self.k}")
        if not 0 <= self.phase < self.k:
            raise ValueError(f"phase must satisfy 0 <= p < {self.k}, got {self.phase}")

    @classmethod
    def fixed(cls, k: int, phase: int = 0) -> "ParsingModel":
        return cls("fixed", k, phase)

    @classmethod
    def amino_acid(cls, phase: int = 0) -> "ParsingModel":
        return cls("amino_acid", 3, phase)

    @classmethod
    def from_label(cls, label: str) -> "ParsingModel":
        """Parse one model label: ``fixed:3.1``, ``3.1``, ``1``, ``aa``, ``a.a.``, ``aa:2``."""
        text = label.strip()
        m = _FIXED.match(text)
        if m:
            return cls.fixed(int(m.group(1)), int(m.group(2) or 0))
        m = _AMINO_ACID.match(text.lower())
        if m:
            return cls.amino_acid(int(m.group(1) or 0))
        raise ValueError(f"unknown model label {label!r}")

    @property
    def label(self) -> str:
        """Table label: ``1``, ``3.0``, ``a.a.`` (``a.a.1`` for a shifted frame)."""
        if self.kind == "amino_acid":
            return "a.a." if self.phase == 0 else f"a.a.{self.phase}"
        if self.k == 1:
            return "1"
        return f"{self.k}.{self.phase}"

    @property
    def spec(self) -> str:
        if self.kind == "amino_acid":
            return "aa" if self.phase == 0 else f"aa:{self.phase}"
        return f"fixed:{self.k}.{self.phase}"

    def parse(self, seq: SymbolSequence | str) -> list[str]:
        if self.kind == "amino_acid":
            return translate_codons(seq, self.phase)
        return parse_fixed(seq, self.k, self.phase)

    def covered_symbols(self, length: int) -> int:
        """Number of input symbols consumed by the parse of a length-``length`` string."""
        return (max(length - self.phase, 0) // self.k) * self.k


def expand_model_labels(labels: Iterable[str]) -> list[ParsingModel]:
    """Expand ``fixed:K`` to all K phases; other labels map to one model."""
    models = []
    for label in labels:
        text = label.strip()
        m = re.match(r"^fixed:(\d+)$", text)
        if m:
            k = int(m.group(1))
            if k < 1:
                raise ValueError(f"unknown model label {label!r}")
            models.extend(ParsingModel.fixed(k, p) for p in range(k))
        else:
            models.append(ParsingModel.from_label(text))
    return models


def table_models(max_word_length: int = 4, amino_acid: bool = True) -> list[ParsingModel]:
    """Every fixed-length model up to ``max_word_length``, all phases, then a.a."""
    models = [ParsingModel.fixed(k, p) for k in range(1, max_word_length + 1) for p in range(k)]
    if amino_acid:
        models.append(ParsingModel.amino_acid(0))
    return models


def word_alphabet(model: ParsingModel, alphabet: Sequence[str]) -> list[str]:
    """Every word the model can emit over ``alphabet``, sorted."""
    if model.kind == "amino_acid":
        return sorted(set(GENETIC_CODE.values()))
    return sorted("".join(w) for w in product(alphabet, repeat=model.k))
