"""Normalized maximum likelihood code lengths."""

from dataclasses import asdict, dataclass
from math import comb
from typing import Mapping

import numpy as np
from scipy.special import gammaln, logsumexp, xlogy
from scipy.stats import norm

from .expfam import (
    LOG2E,
    EmptySequenceError,
    GaussianLocationFamily,
    WordCounts,
    check_prob_vector,
    empirical_entropy_bits,
    entropy_bits,
    jeffreys_log_integral_multinomial,
    log_likelihood_bits,
)

#: Largest number of count vectors the exact normalizer will enumerate.
MAX_COMPOSITIONS = 10**8

REPORT_FIELDS = (
    "model",
    "n_words",
    "dict_size",
    "entropy_bits_per_word",
    "entropy_term_bits",
    "complexity_bits",
    "total_bits",
    "raw_bits",
    "rate",
)


class OracleTooLargeError(ValueError):
    """The exact normalizer would enumerate too many compositions."""


@dataclass(frozen=True)
class CodeLengthReport:
    """Code-length breakdown of one sequence under one model."""

    model_label: str
    n_words: int
    dict_size_m: int
    entropy_bits_per_word: float
    entropy_term_bits: float
    complexity_bits: float
    total_bits: float
    raw_bits: float
    rate: float

    @property
    def dimension(self) -> int:
        return max(self.dict_size_m - 1, 0)

    @property
    def bic_bits(self) -> float:
        """Entropy term plus ``(d/2) log2 n``, the two-part code length."""
        if self.n_words == 0:
            return self.entropy_term_bits
        return self.entropy_term_bits + 0.5 * self.dimension * np.log2(self.n_words)

    @property
    def rate_entropy(self) -> float:
        return self.entropy_term_bits / self.raw_bits

    @property
    def rate_bic(self) -> float:
        return self.bic_bits / self.raw_bits

    @property
    def small_sample_warning(self) -> bool:
        """True when the dictionary is large relative to the word count."""
        return self.dict_size_m > self.n_words / 5

    def to_dict(self) -> dict:
        d = asdict(self)
        return {
            "model": d["model_label"],
            "n_words": d["n_words"],
            "dict_size": d["dict_size_m"],
            "entropy_bits_per_word": d["entropy_bits_per_word"],
            "entropy_term_bits": d["entropy_term_bits"],
            "complexity_bits": d["complexity_bits"],
            "total_bits": d["total_bits"],
            "raw_bits": d["raw_bits"],
            "rate": d["rate"],
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "CodeLengthReport":
        return cls(
            model_label=d["model"],
            n_words=int(d["n_words"]),
            dict_size_m=int(d["dict_size"]),
            entropy_bits_per_word=float(d["entropy_bits_per_word"]),
            entropy_term_bits=float(d["entropy_term_bits"]),
            complexity_bits=float(d["complexity_bits"]),
            total_bits=float(d["total_bits"]),
            raw_bits=float(d["raw_bits"]),
            rate=float(d["rate"]),
        )


def multinomial_complexity_bits(m: int, n: int) -> float:
    """Parametric complexity of the m-cell multinomial at sample size n.

    ``(d/2) log2 n - d/2 - log2 Gamma((d+1)/2) + (1/2) log2 pi`` with
    ``d = m - 1``.  The ``-d/2`` is ``(d/2) log2(1/2)``, i.e. it is already
    in bits.  Zero when ``m == 1``.
    """
    if m < 1 or n < 1:
        raise ValueError(f"need m >= 1 and n >= 1, got m={m}, n={n}")
    d = m - 1
    return (
        0.5 * d * np.log2(n)
        - 0.5 * d
        - gammaln(0.5 * (d + 1)) * LOG2E
        + 0.5 * np.log2(np.pi)
    )


def nml_codelength_multinomial(
    counts: WordCounts, raw_bits: float, model_label: str = "", m: int | None = None
) -> CodeLengthReport:
    """Asymptotic NML code length of a word sequence given its counts.

    Parameters
    ----------
    counts : WordCounts
        Word counts of the parsed sequence.
    raw_bits : float
        Uncompressed length used for the compression rate.
    model_label : str
        Label copied into the report.
    m : int, optional
        Dictionary size override.  Defaults to the number of observed words.
    """
    if counts.n == 0:
        raise EmptySequenceError("empty sequence: no words to code")
    if not raw_bits > 0:
        raise ValueError(f"raw_bits must be positive, got {raw_bits}")
    m = counts.m if m is None else int(m)
    if m < counts.m:
        raise ValueError(f"dictionary size {m} is smaller than the {counts.m} observed words")
    n = counts.n
    h = empirical_entropy_bits(counts)
    entropy_term = n * h
    complexity = float(multinomial_complexity_bits(m, n))
    total = entropy_term + complexity
    return CodeLengthReport(
        model_label=model_label,
        n_words=n,
        dict_size_m=m,
        entropy_bits_per_word=h,
        entropy_term_bits=entropy_term,
        complexity_bits=complexity,
        total_bits=total,
        raw_bits=float(raw_bits),
        rate=total / raw_bits,
    )


def nml_codelength_asymptotic(d: int, n: int, entropy_term: float, log_jeffreys_integral: float) -> float:
    """Generic three-term NML expansion for a d-dimensional family."""
    if d < 0 or n < 1:
        raise ValueError(f"need d >= 0 and n >= 1, got d={d}, n={n}")
    return entropy_term + 0.5 * d * np.log2(n / (2 * np.pi)) + log_jeffreys_integral


def asymptotic_lognormalizer(m: int, n: int) -> float:
    """Asymptotic log2 Shtarkov sum of the m-cell multinomial."""
    return nml_codelength_asymptotic(m - 1, n, 0.0, jeffreys_log_integral_multinomial(m))


def _compositions_prefix(n: int, parts: int):
    """Yield (prefix tuple, remainder) for the first ``parts`` coordinates."""
    if parts == 0:
        yield (), n
        return
    for first in range(n + 1):
        for rest, rem in _compositions_prefix(n - first, parts - 1):
            yield (first,) + rest, rem


def shtarkov_lognormalizer_exact(m: int, n: int) -> float:
    """Exact ``log2`` of the multinomial Shtarkov sum.

    Sums ``multinomial(n; n_1..n_m) * prod (n_k/n)^{n_k}`` over every count
    vector, in a fixed order, with log-sum-exp.  The last two coordinates are
    vectorized; the rest are enumerated.
    """
    if m < 1 or n < 0:
        raise ValueError(f"need m >= 1 and n >= 0, got m={m}, n={n}")
    if n == 0 or m == 1:
        return 0.0
    n_comp = comb(n + m - 1, m - 1)
    if n_comp > MAX_COMPOSITIONS:
        raise OracleTooLargeError(
            f"instance too large for exact oracle: {n_comp} compositions for m={m}, n={n}"
        )
    log_n = np.log(n)
    lg = gammaln(np.arange(n + 1) + 1.0)
    # n_k log(n_k / n) with 0 log 0 = 0
    ent = xlogy(np.arange(n + 1), np.arange(n + 1)) - np.arange(n + 1) * log_n
    partial = []
    for prefix, rem in _compositions_prefix(n, m - 2):
        base = sum(ent[k] - lg[k] for k in prefix)
        a = np.arange(rem + 1)
        b = rem - a
        partial.append(logsumexp(base + ent[a] - lg[a] + ent[b] - lg[b]))
    total = lg[n] + logsumexp(np.asarray(partial))
    return max(float(total * LOG2E), 0.0)


def exact_nml_codelength(counts: WordCounts, m: int | None = None) -> float:
    """Exact NML code length ``n H(theta_hat) + log2 C(m, n)``."""
    m = counts.m if m is None else m
    return counts.n * empirical_entropy_bits(counts) + shtarkov_lognormalizer_exact(m, counts.n)


def gaussian_location_regret(n: int, interval) -> float:
    """NML regret of the unit-variance Gaussian location family on ``[a, b]``.

    With the sample mean restricted to ``[a, b]`` the Shtarkov integral is
    ``int_a^b sqrt(n / 2 pi) d(xbar)``: the maximized density of a sample
    factors as ``p(x; xbar)`` and the sample mean is ``N(t, 1/n)``, so
    ``p(x; xbar)`` integrates to the density of ``xbar`` evaluated at its own
    mean.  The regret ``(1/2) log2(n / 2 pi) + log2(b - a)`` is therefore
    exact at every n, not only asymptotically.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    a, b = interval
    fam = GaussianLocationFamily(a, b)
    return 0.5 * np.log2(n / (2 * np.pi)) + fam.log_jeffreys_integral()


def gaussian_location_mixture_codelength(x, interval) -> float:
    """Code length of ``x`` under the uniform (Jeffreys) mixture on ``[a, b]``.

    Closed form: completing the square in the mean gives
    ``-log2 p(x; xbar) + (1/2) log2(n/2pi) + log2(b-a) - log2[Phi(sqrt(n)(b-xbar)) - Phi(sqrt(n)(a-xbar))]``.
    """
    a, b = interval
    fam = GaussianLocationFamily(a, b)
    x = np.asarray(x, dtype=float)
    n = x.size
    xbar = fam.mle(x)
    s = np.sqrt(n)
    # log of Phi(hi) - Phi(lo) computed from whichever tail is more accurate
    hi, lo = s * (b - xbar), s * (a - xbar)
    if lo > 0:
        log_mass = logsumexp([norm.logsf(lo), norm.logsf(hi)], b=[1.0, -1.0])
    else:
        log_mass = logsumexp([norm.logcdf(hi), norm.logcdf(lo)], b=[1.0, -1.0])
    return (
        fam.neg_log_likelihood_bits(x, xbar)
        + gaussian_location_regret(n, interval)
        - log_mass * LOG2E
    )


@dataclass(frozen=True)
class RedundancyReport:
    """Code length excess against a hypothesised source ``theta0``."""

    theta0: dict
    n: int
    nH_hat_bits: float
    nloglik_theta0_bits: float
    Cn_realized: float
    R_nml_bits: float


def redundancy_report(counts: WordCounts, theta0) -> RedundancyReport:
    """Compare maximized likelihood and NML length with a known source.

    ``theta0`` is a mapping word -> probability (it may cover words that were
    not observed) or an array aligned with ``counts``' sorted cells.
    """
    n = counts.n
    if n < 3:
        raise ValueError(f"redundancy needs n >= 3, got {n}")
    if isinstance(theta0, Mapping):
        theta0 = dict(theta0)
    else:
        theta0 = dict(zip(counts.words, np.asarray(theta0, dtype=float)))
    p0 = check_prob_vector(list(theta0.values()), atol=1e-9)
    missing = [w for w in counts.words if theta0.get(w, 0.0) <= 0.0]
    if missing:
        raise ValueError(f"theta0 has no support for observed words {missing[:5]!r}")
    nH_hat = n * empirical_entropy_bits(counts)
    nll0 = log_likelihood_bits(counts, theta0)
    cn = (nll0 - nH_hat) / np.log2(np.log2(n))
    total_nml = nH_hat + float(multinomial_complexity_bits(counts.m, n))
    return RedundancyReport(
        theta0=theta0,
        n=n,
        nH_hat_bits=nH_hat,
        nloglik_theta0_bits=nll0,
        Cn_realized=float(cn),
        R_nml_bits=total_nml - n * entropy_bits(p0),
    )
