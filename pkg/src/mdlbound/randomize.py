"""Seeded simulation and permutation null distributions.

Random streams come from numpy's PCG64 bit generator seeded through
``SeedSequence``.  Replicate ``r`` of a study with seed ``s`` uses
``SeedSequence([s, r])``, so each replicate depends only on ``(s, r)`` and
the output is reproducible across platforms and execution orders.
"""

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .analysis import evaluate_model
from .expfam import check_prob_vector
from .parsing import ParsingModel, SymbolSequence

STATISTICS = ("rate_nml", "rate_entropy", "rate_entropy_plus_dim")


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), *stream])))


def simulate_iid(n: int, alphabet: Sequence[str], probs, seed: int) -> SymbolSequence:
    """Draw ``n`` i.i.d. symbols from ``alphabet`` with probabilities ``probs``."""
    alphabet = tuple(alphabet)
    probs = check_prob_vector(probs, atol=1e-9)
    if len(probs) != len(alphabet):
        raise ValueError(f"{len(probs)} probabilities for {len(alphabet)} symbols")
    if n < 0:
        raise ValueError(f"length must be >= 0, got {n}")
    idx = make_rng(seed).choice(len(alphabet), size=n, p=probs)
    return SymbolSequence("".join(alphabet[i] for i in idx), alphabet)


def permute_sequence(seq: SymbolSequence, seed: int, *stream: int) -> SymbolSequence:
    """Uniformly random reordering of the symbols (Fisher-Yates shuffle)."""
    symbols = list(seq.symbols)
    make_rng(seed, *stream).shuffle(symbols)
    return SymbolSequence("".join(symbols), seq.alphabet)


def nearest_rank_quantile(values, level: float) -> float:
    """Type-1 (inverse empirical CDF) quantile."""
    return float(np.quantile(np.asarray(values, dtype=float), level, method="inverted_cdf"))


@dataclass(frozen=True)
class CellSummary:
    mean: float
    sd: float
    lower: float
    upper: float


@dataclass
class PermutationSummary:
    """Replicate statistics for each model under random permutation.

    ``values[stat]`` is a ``(replicates, models)`` array in replicate order.
    ``original`` holds the unpermuted sequence's statistics, same layout
    without the replicate axis.
    """

    models: list
    replicates: int
    seed: int
    quantile_levels: tuple
    values: dict = field(repr=False)
    original: dict = field(repr=False)

    def cell(self, stat: str, model) -> CellSummary:
        j = self._model_index(model)
        col = self.values[stat][:, j]
        lo, hi = self.quantile_levels
        # sample SD; a single replicate has SD 0 by convention
        sd = float(np.std(col, ddof=1)) if col.size > 1 else 0.0
        return CellSummary(
            mean=float(np.mean(col)),
            sd=sd,
            lower=nearest_rank_quantile(col, lo),
            upper=nearest_rank_quantile(col, hi),
        )

    def _model_index(self, model) -> int:
        if isinstance(model, int):
            return model
        label = model.label if isinstance(model, ParsingModel) else ParsingModel.from_label(model).label
        for j, m in enumerate(self.models):
            if m.label == label:
                return j
        raise KeyError(model)

    @property
    def labels(self) -> list[str]:
        return [m.label for m in self.models]

    def to_dict(self) -> dict:
        cells = {}
        for stat in STATISTICS:
            cells[stat] = {
                m.label: {**vars(self.cell(stat, j)), "original": float(self.original[stat][j])}
                for j, m in enumerate(self.models)
            }
        return {
            "models": self.labels,
            "replicates": self.replicates,
            "seed": self.seed,
            "quantile_levels": list(self.quantile_levels),
            "statistics": cells,
        }


def _statistics(seq: SymbolSequence, models, bits_per_symbol) -> np.ndarray:
    out = np.empty((len(STATISTICS), len(models)))
    for j, model in enumerate(models):
        rep = evaluate_model(seq, model, bits_per_symbol)
        out[:, j] = (rep.rate, rep.rate_entropy, rep.rate_bic)
    return out


def permutation_study(
    seq: SymbolSequence,
    models: Sequence[ParsingModel],
    replicates: int = 1000,
    quantile_levels: tuple = (0.01, 0.99),
    seed: int = 0,
    bits_per_symbol: float | None = None,
) -> PermutationSummary:
    """Rates of every model on ``replicates`` random permutations of ``seq``."""
    if replicates < 1:
        raise ValueError(f"replicates must be >= 1, got {replicates}")
    lo, hi = quantile_levels
    if not 0 <= lo <= hi <= 1:
        raise ValueError(f"bad quantile levels {quantile_levels}")
    models = list(models)
    stats = np.empty((replicates, len(STATISTICS), len(models)))
    for r in range(replicates):
        stats[r] = _statistics(permute_sequence(seq, seed, r), models, bits_per_symbol)
    original = _statistics(seq, models, bits_per_symbol)
    return PermutationSummary(
        models=models,
        replicates=replicates,
        seed=seed,
        quantile_levels=(float(lo), float(hi)),
        values={s: stats[:, i, :] for i, s in enumerate(STATISTICS)},
        original={s: original[i] for i, s in enumerate(STATISTICS)},
    )
