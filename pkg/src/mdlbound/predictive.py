"""Bayesian predictive (Dirichlet mixture) code lengths."""

from dataclasses import dataclass
from math import log2
from typing import Hashable, Iterable, Sequence

import numpy as np
from scipy.special import gammaln, logsumexp

from .expfam import LOG2E, BoundaryParameterError, WordCounts, empirical_entropy_bits, fisher_det_multinomial


@dataclass(frozen=True)
class DirichletPrior:
    """Dirichlet prior with one concentration per alphabet cell."""

    alpha: tuple

    def __post_init__(self):
        alpha = tuple(float(a) for a in self.alpha)
        if not alpha:
            raise ValueError("Dirichlet prior needs at least one cell")
        if any(not a > 0 for a in alpha):
            raise ValueError(f"concentrations must be positive, got {alpha}")
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def jeffreys(cls, m: int) -> "DirichletPrior":
        return cls((0.5,) * m)

    @classmethod
    def uniform(cls, m: int) -> "DirichletPrior":
        return cls((1.0,) * m)

    @property
    def m(self) -> int:
        return len(self.alpha)

    def log_density(self, p) -> float:
        """Natural-log density at ``p`` w.r.t. Lebesgue measure on the first m-1 coordinates."""
        a = np.asarray(self.alpha)
        p = np.asarray(p, dtype=float)
        return float(gammaln(a.sum()) - gammaln(a).sum() + np.sum((a - 1.0) * np.log(p)))


@dataclass(frozen=True)
class MixturePrior:
    """Finite mixture of Dirichlet priors over the same alphabet."""

    components: tuple

    def __post_init__(self):
        comps = tuple((float(w), prior) for w, prior in self.components)
        if not comps:
            raise ValueError("mixture needs at least one component")
        weights = np.array([w for w, _ in comps])
        if np.any(weights <= 0):
            raise ValueError("mixture weights must be positive")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise ValueError(f"mixture weights sum to {weights.sum():.15g}, not 1")
        if len({prior.m for _, prior in comps}) != 1:
            raise ValueError("mixture components must share one alphabet size")
        object.__setattr__(self, "components", comps)

    @property
    def m(self) -> int:
        return self.components[0][1].m


def _alphabet_index(alphabet: Sequence[Hashable], m: int) -> dict:
    index = {a: i for i, a in enumerate(alphabet)}
    if len(index) != len(alphabet):
        raise ValueError("alphabet has repeated symbols")
    if len(index) != m:
        raise ValueError(f"alphabet has {len(index)} symbols but the prior has {m} cells")
    return index


def _as_mixture(prior) -> MixturePrior:
    if isinstance(prior, MixturePrior):
        return prior
    return MixturePrior(((1.0, prior),))


def sequential_predictive_codelength(
    words: Iterable[Hashable], alphabet: Sequence[Hashable], prior: DirichletPrior | None = None
) -> float:
    """Code length of sequential posterior-predictive coding, in bits.

    Each word is coded with ``(count so far + alpha_x) / (k - 1 + sum alpha)``
    and then added to the counts.
    """
    if prior is None:
        prior = DirichletPrior.jeffreys(len(alphabet))
    index = _alphabet_index(alphabet, prior.m)
    seen = list(prior.alpha)
    total = sum(prior.alpha)
    bits = 0.0
    for word in words:
        try:
            i = index[word]
        except KeyError:
            raise ValueError(f"word {word!r} is not in the alphabet") from None
        bits -= log2(seen[i] / total)
        seen[i] += 1.0
        total += 1.0
    return bits


def mixture_codelength_closed_form(
    counts: WordCounts, alphabet: Sequence[Hashable], prior: DirichletPrior | MixturePrior | None = None
) -> float:
    """``-log2`` of the Dirichlet-multinomial marginal of the ordered sequence.

    For a mixture the component marginals are combined with their weights.
    No multinomial coefficient: this is the probability of one specific
    sequence with these counts.
    """
    if prior is None:
        prior = DirichletPrior.jeffreys(len(alphabet))
    mix = _as_mixture(prior)
    index = _alphabet_index(alphabet, mix.m)
    n_x = np.zeros(mix.m)
    for word, c in counts.counts.items():
        if word not in index:
            raise ValueError(f"word {word!r} is not in the alphabet")
        n_x[index[word]] = c
    n = n_x.sum()
    logs, weights = [], []
    for w, comp in mix.components:
        a = np.asarray(comp.alpha)
        logs.append(
            gammaln(a.sum()) - gammaln(n + a.sum()) + np.sum(gammaln(n_x + a) - gammaln(a))
        )
        weights.append(w)
    return float(-logsumexp(logs, b=weights) * LOG2E)


def plugin_predictive_codelength(
    words: Iterable[Hashable], alphabet: Sequence[Hashable], epsilon: float = 0.5
) -> float:
    """Sequential plug-in coding with additive smoothing ``epsilon``.

    ``epsilon = 1/2`` is the Krichevsky-Trofimov estimator, ``epsilon = 1``
    Laplace's rule.  The unsmoothed MLE plug-in is infinite on any sequence
    with two distinct symbols, hence ``epsilon > 0`` is required.
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    return sequential_predictive_codelength(
        words, alphabet, DirichletPrior((epsilon,) * len(alphabet))
    )


def mixture_expansion_terms(
    counts: WordCounts, prior: DirichletPrior, alphabet: Sequence[Hashable] | None = None
) -> tuple[float, float, float]:
    """Three-term large-sample expansion of the mixture code length.

    Returns ``(n H(theta_hat), (d/2) log2(n / 2 pi), log2(|I(theta_hat)|^{1/2} / w(theta_hat)))``.
    Every cell of the alphabet must have been observed.
    """
    if alphabet is None:
        alphabet = counts.words
    index = _alphabet_index(alphabet, prior.m)
    n_x = np.zeros(prior.m)
    for word, c in counts.counts.items():
        if word not in index:
            raise ValueError(f"word {word!r} is not in the alphabet")
        n_x[index[word]] = c
    if np.any(n_x == 0):
        raise BoundaryParameterError("expansion needs an interior MLE: some cells were never observed")
    n = n_x.sum()
    p_hat = n_x / n
    d = prior.m - 1
    entropy_term = n * empirical_entropy_bits(counts)
    dim_term = 0.5 * d * np.log2(n / (2 * np.pi))
    fisher_prior = 0.5 * np.log2(fisher_det_multinomial(p_hat)) - prior.log_density(p_hat) * LOG2E
    return float(entropy_term), float(dim_term), float(fisher_prior)
