"""Scikit-learn style front ends.

Each estimator is fitted on one symbol sequence (a string, a
``SymbolSequence`` or a FASTA record).  ``score`` returns the negated code
length in bits so that larger is better, as elsewhere in scikit-learn.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .analysis import evaluate_model, raw_bits, scan
from .lz78 import lz78_codelength, lz78_parse
from .nml import nml_codelength_multinomial
from .parsing import count_words, table_models, word_alphabet
from .predictive import DirichletPrior, mixture_codelength_closed_form
from .randomize import permutation_study
from .validation import check_model, check_positive_int, check_positive_real, check_sequence


class WordParser(TransformerMixin, BaseEstimator):
    """Split a sequence into words with a parsing model.

    Parameters
    ----------
    model : str or ParsingModel, default="1"
        ``"fixed:K.P"``, a table label such as ``"3.0"``, or ``"aa"``.
    """

    def __init__(self, model="1"):
        self.model = model

    def fit(self, X=None, y=None):
        self.model_ = check_model(self.model)
        return self

    def transform(self, X):
        check_is_fitted(self, "model_")
        return self.model_.parse(check_sequence(X))


class NMLCodeLength(BaseEstimator):
    """NML code length of a sequence under one parsing model.

    Parameters
    ----------
    model : str or ParsingModel, default="1"
    alphabet : sequence of str, optional
        Declared symbol alphabet; inferred from the data when omitted.
    raw_bits_per_symbol : float, optional
        Overrides ``log2 |alphabet|`` when computing the compression rate.

    Attributes
    ----------
    counts_ : WordCounts
    report_ : CodeLengthReport
    codelength_ : float
        Total bits.
    rate_ : float
    """

    def __init__(self, model="1", alphabet=None, raw_bits_per_symbol=None):
        self.model = model
        self.alphabet = alphabet
        self.raw_bits_per_symbol = raw_bits_per_symbol

    def fit(self, X, y=None):
        model = check_model(self.model)
        seq = check_sequence(X, self.alphabet)
        if self.raw_bits_per_symbol is not None:
            check_positive_real(self.raw_bits_per_symbol, "raw_bits_per_symbol")
        self.model_ = model
        self.counts_ = count_words(model.parse(seq))
        self.report_ = nml_codelength_multinomial(
            self.counts_, raw_bits(seq, model, self.raw_bits_per_symbol), model.label
        )
        self.codelength_ = self.report_.total_bits
        self.rate_ = self.report_.rate
        return self

    def predict_proba(self, X=None):
        """Maximum-likelihood word distribution, in ``counts_.words`` order."""
        check_is_fitted(self, "counts_")
        return self.counts_.as_array() / self.counts_.n

    def transform(self, X):
        check_is_fitted(self, "model_")
        return self.model_.parse(check_sequence(X, self.alphabet))

    def score(self, X, y=None):
        seq = check_sequence(X, self.alphabet)
        model = check_model(self.model)
        return -evaluate_model(seq, model, self.raw_bits_per_symbol).total_bits


class MixtureCodeLength(BaseEstimator):
    """Bayesian mixture code length with a symmetric Dirichlet prior over all possible words.

    Parameters
    ----------
    model : str or ParsingModel, default="1"
    concentration : float, default=0.5
        Dirichlet concentration per word; 0.5 is the Jeffreys prior.
    alphabet : sequence of str, optional
    """

    def __init__(self, model="1", concentration=0.5, alphabet=None):
        self.model = model
        self.concentration = concentration
        self.alphabet = alphabet

    def fit(self, X, y=None):
        check_positive_real(self.concentration, "concentration")
        model = check_model(self.model)
        seq = check_sequence(X, self.alphabet)
        self.model_ = model
        self.words_ = word_alphabet(model, seq.alphabet)
        self.prior_ = DirichletPrior((float(self.concentration),) * len(self.words_))
        self.counts_ = count_words(model.parse(seq))
        self.codelength_ = mixture_codelength_closed_form(self.counts_, self.words_, self.prior_)
        self.posterior_alpha_ = np.array(self.prior_.alpha) + np.array(
            [self.counts_[w] for w in self.words_], dtype=float
        )
        return self

    def predict_proba(self, X=None):
        """Posterior predictive probability of the next word, in ``words_`` order."""
        check_is_fitted(self, "posterior_alpha_")
        return self.posterior_alpha_ / self.posterior_alpha_.sum()

    def score(self, X, y=None):
        check_is_fitted(self, "words_")
        counts = count_words(self.model_.parse(check_sequence(X, self.alphabet)))
        return -mixture_codelength_closed_form(counts, self.words_, self.prior_)


class LZ78CodeLength(BaseEstimator):
    """LZ78 phrase count and (address + symbol) code length.

    Parameters
    ----------
    accounting : {"flat", "incremental"}, default="flat"
    alphabet : sequence of str, optional
    """

    def __init__(self, accounting="flat", alphabet=None):
        self.accounting = accounting
        self.alphabet = alphabet

    def fit(self, X, y=None):
        seq = check_sequence(X, self.alphabet)
        self.parse_ = lz78_parse(seq)
        self.report_ = lz78_codelength(self.parse_, seq.bits_per_symbol, accounting=self.accounting)
        self.n_phrases_ = self.parse_.phrase_count
        self.codelength_ = self.report_.total_bits
        self.rate_ = self.report_.rate
        return self

    def score(self, X, y=None):
        seq = check_sequence(X, self.alphabet)
        return -lz78_codelength(lz78_parse(seq), seq.bits_per_symbol, accounting=self.accounting).total_bits


class MDLModelSelector(BaseEstimator):
    """Pick the fixed-length parsing with the shortest NML code length.

    Parameters
    ----------
    max_word_length : int, default=4
    include_amino_acid : bool, default=False
        Also try codon translation in all three frames (nucleotide input only).
        Translation discards information, so it is off by default.
    alphabet : sequence of str, optional
    raw_bits_per_symbol : float, optional

    Attributes
    ----------
    reports_ : list of CodeLengthReport
    best_model_ : ParsingModel
    best_report_ : CodeLengthReport
    """

    def __init__(self, max_word_length=4, include_amino_acid=False, alphabet=None, raw_bits_per_symbol=None):
        self.max_word_length = max_word_length
        self.include_amino_acid = include_amino_acid
        self.alphabet = alphabet
        self.raw_bits_per_symbol = raw_bits_per_symbol

    def fit(self, X, y=None):
        check_positive_int(self.max_word_length, "max_word_length")
        seq = check_sequence(X, self.alphabet)
        result = scan(seq, self.max_word_length, self.include_amino_acid, self.raw_bits_per_symbol)
        self.scan_ = result
        self.models_ = list(result.models)
        self.reports_ = list(result.reports)
        self.best_index_ = result.best_index
        self.best_model_ = result.best_model
        self.best_report_ = result.best_report
        return self

    def transform(self, X):
        check_is_fitted(self, "best_model_")
        return self.best_model_.parse(check_sequence(X, self.alphabet))

    def score(self, X, y=None):
        check_is_fitted(self, "best_model_")
        seq = check_sequence(X, self.alphabet)
        return -evaluate_model(seq, self.best_model_, self.raw_bits_per_symbol).total_bits


class PermutationTest(BaseEstimator):
    """Null distribution of compression rates under random permutation.

    Parameters
    ----------
    models : list of str or ParsingModel, optional
        Defaults to every fixed-length model up to word length 4.
    replicates : int, default=1000
    quantile_levels : (float, float), default=(0.01, 0.99)
    random_state : int, default=0
    alphabet : sequence of str, optional
    """

    def __init__(self, models=None, replicates=1000, quantile_levels=(0.01, 0.99), random_state=0, alphabet=None):
        self.models = models
        self.replicates = replicates
        self.quantile_levels = quantile_levels
        self.random_state = random_state
        self.alphabet = alphabet

    def fit(self, X, y=None):
        check_positive_int(self.replicates, "replicates")
        seq = check_sequence(X, self.alphabet)
        models = table_models(4, amino_acid=False) if self.models is None else [check_model(m) for m in self.models]
        self.summary_ = permutation_study(
            seq, models, self.replicates, tuple(self.quantile_levels), int(self.random_state)
        )
        return self
