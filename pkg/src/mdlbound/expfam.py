"""Multinomial and Gaussian-location primitives.

All code lengths are in bits.  Natural-log intermediates (``gammaln``) are
converted once with ``LOG2E``.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

import numpy as np
from scipy.special import gammaln, xlogy

LOG2E = 1.0 / np.log(2.0)


class EmptySequenceError(ValueError):
    """Raised when a computation needs at least one word."""


class BoundaryParameterError(ValueError):
    """Raised when a parameter sits on the boundary of the simplex."""


@dataclass(frozen=True)
class WordCounts:
    """Observed words and their counts.

    Zero counts are dropped on construction, so ``m`` is the number of
    observed distinct words.  Cells are ordered by sorted word.
    """

    counts: Mapping[Hashable, int] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for word, c in self.counts.items():
            c = int(c)
            if c < 0:
                raise ValueError(f"negative count {c} for word {word!r}")
            if c > 0:
                cleaned[word] = c
        object.__setattr__(self, "counts", dict(sorted(cleaned.items(), key=_sort_key)))

    @classmethod
    def from_words(cls, words: Iterable[Hashable]) -> "WordCounts":
        return cls(Counter(words))

    @property
    def n(self) -> int:
        return sum(self.counts.values())

    @property
    def m(self) -> int:
        return len(self.counts)

    @property
    def words(self) -> list:
        return list(self.counts)

    def as_array(self) -> np.ndarray:
        return np.fromiter(self.counts.values(), dtype=np.int64, count=self.m)

    def __getitem__(self, word):
        return self.counts.get(word, 0)

    def __len__(self):
        return self.m

    def __iter__(self):
        return iter(self.counts)


def _sort_key(item):
    word = item[0]
    return (type(word).__name__, word)


def _require_words(counts: WordCounts) -> np.ndarray:
    arr = counts.as_array()
    if arr.sum() == 0:
        raise EmptySequenceError("empty sequence: no words to code")
    return arr


def multinomial_mle(counts: WordCounts) -> np.ndarray:
    """Relative frequencies ``n_k / n`` in sorted-word cell order."""
    arr = _require_words(counts)
    return arr / arr.sum()


def empirical_entropy_bits(counts: WordCounts) -> float:
    """Entropy of the observed word frequencies, in bits per word."""
    p = multinomial_mle(counts)
    h = -float(np.sum(xlogy(p, p))) * LOG2E
    # rounding can leave -0.0 or a hair below zero for a single cell
    return max(h, 0.0)


def log_likelihood_bits(counts: WordCounts, probs) -> float:
    """``-sum_k n_k log2 q_k`` for ``probs`` aligned with the counts' cells.

    ``probs`` may be an array in sorted-word order or a mapping word -> q.
    Returns ``inf`` when an observed word has probability zero.
    """
    arr = _require_words(counts)
    if isinstance(probs, Mapping):
        q = np.array([probs.get(w, 0.0) for w in counts.words], dtype=float)
    else:
        q = np.asarray(probs, dtype=float)
        if q.shape != arr.shape:
            raise ValueError(f"expected {arr.size} probabilities, got {q.size}")
    with np.errstate(divide="ignore"):
        return float(-np.sum(arr * np.log2(q)))


def fisher_det_multinomial(p) -> float:
    """Determinant of the multinomial Fisher information, ``1 / prod p_k``."""
    p = check_prob_vector(p)
    if np.any(p == 0.0):
        raise BoundaryParameterError("boundary parameter: Fisher information is unbounded at p_k = 0")
    return float(np.exp(-np.sum(np.log(p))))


def jeffreys_log_integral_multinomial(m: int) -> float:
    """``log2`` of the integral of ``|I(p)|^{1/2}`` over the simplex with m cells.

    This is the Dirichlet(1/2, ..., 1/2) normalizer,
    ``(m/2) log2(pi) - log2 Gamma(m/2)``.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return 0.5 * m * np.log2(np.pi) - gammaln(0.5 * m) * LOG2E


def check_prob_vector(p, atol: float = 1e-12) -> np.ndarray:
    """Validate a probability vector and return it as a float array."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size < 1:
        raise ValueError("probability vector must be one-dimensional and nonempty")
    if np.any(p < 0.0) or np.any(p > 1.0):
        raise ValueError("probabilities must lie in [0, 1]")
    if abs(p.sum() - 1.0) > atol:
        raise ValueError(f"probabilities sum to {p.sum():.15g}, not 1")
    return p


def entropy_bits(p) -> float:
    """Shannon entropy of a probability vector, in bits."""
    p = check_prob_vector(p, atol=1e-9)
    return max(-float(np.sum(xlogy(p, p))) * LOG2E, 0.0)


@dataclass(frozen=True)
class GaussianLocationFamily:
    """Unit-variance normal with mean restricted to ``[a, b]``.

    In canonical form ``p(x; t) = exp(t x - t^2/2) phi(x)`` with base measure
    the standard normal density, so the log-partition is ``t^2/2`` and the
    Fisher information is identically 1.
    """

    a: float
    b: float

    def __post_init__(self):
        if not self.b - self.a > 0:
            raise ValueError(f"degenerate interval [{self.a}, {self.b}]")

    def log_partition(self, theta):
        return 0.5 * np.square(theta)

    def mean(self, theta):
        return theta

    def fisher_information(self, theta):
        return np.ones_like(np.asarray(theta, dtype=float))

    def log_jeffreys_integral(self) -> float:
        return float(np.log2(self.b - self.a))

    def mle(self, x) -> float:
        """Unrestricted MLE (the sample mean)."""
        x = np.asarray(x, dtype=float)
        if x.size == 0:
            raise EmptySequenceError("empty sample")
        return float(x.mean())

    def neg_log_likelihood_bits(self, x, theta: float) -> float:
        """``-log2`` of the joint density of ``x`` at mean ``theta``."""
        x = np.asarray(x, dtype=float)
        nats = 0.5 * x.size * np.log(2 * np.pi) + 0.5 * np.sum(np.square(x - theta))
        return float(nats * LOG2E)
