import itertools
import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdlbound.expfam import WordCounts, empirical_entropy_bits, jeffreys_log_integral_multinomial
from mdlbound.nml import (
    OracleTooLargeError,
    asymptotic_lognormalizer,
    exact_nml_codelength,
    gaussian_location_mixture_codelength,
    gaussian_location_regret,
    nml_codelength_asymptotic,
    nml_codelength_multinomial,
    redundancy_report,
    shtarkov_lognormalizer_exact,
)

# log2 of sum_k C(n,k) (k/n)^k ((n-k)/n)^(n-k), evaluated with mpmath at 40 digits
SHTARKOV_BERNOULLI = {
    1: 1.0,
    2: 1.32192809488736,
    10: 2.22039672596665,
    100: 3.72355426179937,
    1000: 5.33282294822869,
    10000: 6.97726986888897,
}
SHTARKOV_M3 = {6: 3.28905114914357, 50: 5.89586308478192}


def test_report_table2_model1():
    counts = WordCounts({"A": 700, "C": 750, "G": 700, "T": 757})
    rep = nml_codelength_multinomial(counts, 5814)
    assert rep.total_bits == pytest.approx(rep.entropy_term_bits + rep.complexity_bits, abs=1e-9)
    assert rep.complexity_bits == pytest.approx(16.58, abs=0.005)
    assert rep.rate == rep.total_bits / 5814


def test_complexity_model_2x():
    counts = WordCounts({f"w{i}": 90 for i in range(15)} | {"w15": 103})
    assert counts.n == 1453
    rep = nml_codelength_multinomial(counts, 5812)
    assert rep.complexity_bits == pytest.approx(59.81, abs=0.005)


@pytest.mark.parametrize("n", [1, 2, 17, 3000])
def test_single_word_costs_nothing(n):
    rep = nml_codelength_multinomial(WordCounts({"a": n}), 10.0)
    assert rep.total_bits == pytest.approx(0.0, abs=1e-12)


def test_table1_first_row_rate():
    # n=3000 Bernoulli words at entropy rate 0.999918
    h_rate = 0.999918
    rest = 0.5 * math.log2(3000) - 0.5 + 0.5 * math.log2(math.pi)
    assert h_rate + rest / 3000 == pytest.approx(1.001952, abs=5e-7)


def test_empty_counts():
    with pytest.raises(ValueError, match="empty"):
        nml_codelength_multinomial(WordCounts({}), 1.0)


def test_m_override():
    c = WordCounts({"a": 5, "b": 5})
    assert nml_codelength_multinomial(c, 10, m=4).complexity_bits > nml_codelength_multinomial(c, 10).complexity_bits
    with pytest.raises(ValueError):
        nml_codelength_multinomial(c, 10, m=1)


def test_asymptotic_examples():
    assert nml_codelength_asymptotic(0, 55, 12.5, 0.0) == 12.5
    tail = nml_codelength_asymptotic(1, 1000, 0.0, math.log2(math.pi))
    assert tail == pytest.approx(0.5 * math.log2(1000 / (2 * math.pi)) + math.log2(math.pi))
    assert tail == pytest.approx(5.3087, abs=1e-4)


@settings(max_examples=80, deadline=None)
@given(st.dictionaries(st.text("ab", min_size=1, max_size=3), st.integers(1, 1000), min_size=1))
def test_generic_expansion_equals_multinomial_formula(counts):
    c = WordCounts(counts)
    rep = nml_codelength_multinomial(c, 1.0)
    generic = nml_codelength_asymptotic(c.m - 1, c.n, rep.entropy_term_bits, jeffreys_log_integral_multinomial(c.m))
    assert generic == pytest.approx(rep.total_bits, abs=1e-9)


@pytest.mark.parametrize("n, expected", SHTARKOV_BERNOULLI.items())
def test_shtarkov_binary(n, expected):
    assert shtarkov_lognormalizer_exact(2, n) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("n, expected", SHTARKOV_M3.items())
def test_shtarkov_ternary(n, expected):
    assert shtarkov_lognormalizer_exact(3, n) == pytest.approx(expected, abs=1e-9)


def _brute_shtarkov(m, n):
    total = 0.0
    for seq in itertools.product(range(m), repeat=n):
        c = Counter(seq)
        total += math.prod((v / n) ** v for v in c.values())
    return math.log2(total)


@pytest.mark.parametrize("m, n", [(2, 5), (3, 4), (4, 3), (5, 3)])
def test_shtarkov_matches_sequence_enumeration(m, n):
    assert shtarkov_lognormalizer_exact(m, n) == pytest.approx(_brute_shtarkov(m, n), abs=1e-10)


def test_shtarkov_trivial_cases():
    assert shtarkov_lognormalizer_exact(1, 500) == 0.0
    assert shtarkov_lognormalizer_exact(7, 0) == 0.0


def test_shtarkov_guard():
    with pytest.raises(OracleTooLargeError, match="too large"):
        shtarkov_lognormalizer_exact(20, 100)


def test_shtarkov_monotone():
    grid = {(m, n): shtarkov_lognormalizer_exact(m, n) for m in range(1, 5) for n in range(1, 13)}
    for (m, n), v in grid.items():
        assert v >= 0
        if (m + 1, n) in grid:
            assert grid[(m + 1, n)] >= v
        if (m, n + 1) in grid:
            assert grid[(m, n + 1)] >= v


def test_shtarkov_gap_shrinks():
    gaps = [abs(shtarkov_lognormalizer_exact(2, n) - asymptotic_lognormalizer(2, n)) for n in (100, 1000, 10000)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[1] <= 0.05


@pytest.mark.parametrize("m, n", [(2, 8), (3, 5), (4, 4)])
def test_exact_nml_kraft_full_alphabet(m, n):
    total = sum(
        2.0 ** -exact_nml_codelength(WordCounts(Counter(s)), m=m) for s in itertools.product(range(m), repeat=n)
    )
    assert total == pytest.approx(1.0, abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from("xyz"), min_size=1, max_size=60), st.permutations("xyz"), st.randoms())
def test_nml_depends_on_counts_only(words, relabel, rnd):
    mapping = dict(zip("xyz", relabel))
    shuffled = list(words)
    rnd.shuffle(shuffled)
    base = nml_codelength_multinomial(WordCounts(Counter(words)), 1.0).total_bits
    assert nml_codelength_multinomial(WordCounts(Counter(shuffled)), 1.0).total_bits == pytest.approx(base, abs=1e-9)
    relabelled = [mapping[w] for w in words]
    assert nml_codelength_multinomial(WordCounts(Counter(relabelled)), 1.0).total_bits == pytest.approx(base, abs=1e-9)


def test_small_sample_warning():
    rep = nml_codelength_multinomial(WordCounts({f"w{i}": 1 for i in range(252)} | {"z": 81}), 333 * 9)
    assert rep.small_sample_warning
    assert not nml_codelength_multinomial(WordCounts({"a": 50, "b": 50}), 100).small_sample_warning


class TestGaussian:
    def test_examples(self):
        assert gaussian_location_regret(100, (0, 1)) == pytest.approx(0.5 * math.log2(100 / (2 * math.pi)))
        assert gaussian_location_regret(100, (0, 1)) == pytest.approx(1.99618, abs=1e-5)
        assert gaussian_location_regret(1, (0, 1)) == pytest.approx(-1.3257, abs=1e-4)
        assert gaussian_location_regret(7, (0, 2)) - gaussian_location_regret(7, (0, 1)) == pytest.approx(1.0)

    def test_degenerate(self):
        with pytest.raises(ValueError):
            gaussian_location_regret(5, (1, 1))

    def test_shtarkov_integral_by_quadrature(self):
        # the maximized density integrates to sqrt(n / 2pi) per unit of xbar
        from scipy.integrate import quad

        n, a, b = 9, -0.5, 1.5
        val, _ = quad(lambda xbar: math.sqrt(n / (2 * math.pi)), a, b)
        assert gaussian_location_regret(n, (a, b)) == pytest.approx(math.log2(val), abs=1e-12)

    def test_mixture_by_quadrature(self):
        from scipy.integrate import quad
        from scipy.stats import norm

        rng = np.random.default_rng(4)
        x = rng.normal(0.3, 1.0, size=25)
        a, b = -1.0, 1.0

        def dens(t):
            return np.exp(np.sum(norm.logpdf(x, loc=t)) + 40.0) / (b - a)

        val, _ = quad(dens, a, b, epsabs=0, epsrel=1e-12, points=[x.mean()])
        oracle = -(math.log(val) - 40.0) / math.log(2)
        assert gaussian_location_mixture_codelength(x, (a, b)) == pytest.approx(oracle, abs=1e-8)


class TestRedundancy:
    def test_examples(self):
        rep = redundancy_report(WordCounts({"a": 3, "b": 1}), {"a": 0.5, "b": 0.5})
        assert rep.nloglik_theta0_bits == pytest.approx(4.0)
        assert rep.nH_hat_bits == pytest.approx(3.2451, abs=1e-4)
        assert rep.nloglik_theta0_bits >= rep.nH_hat_bits

    def test_exact_fit_has_zero_cn(self):
        rep = redundancy_report(WordCounts({"a": 30, "b": 10}), {"a": 0.75, "b": 0.25})
        assert rep.Cn_realized == pytest.approx(0.0, abs=1e-12)
        assert rep.R_nml_bits == pytest.approx(nml_codelength_multinomial(WordCounts({"a": 30, "b": 10}), 1).complexity_bits)

    def test_missing_support(self):
        with pytest.raises(ValueError, match="support"):
            redundancy_report(WordCounts({"a": 3, "c": 1}), {"a": 0.5, "b": 0.5})

    def test_monte_carlo_cn(self):
        from mdlbound.randomize import make_rng

        cn = []
        for seed in range(120):
            k = int(make_rng(seed).binomial(3000, 0.5))
            cn.append(redundancy_report(WordCounts({"0": k, "1": 3000 - k}), {"0": 0.5, "1": 0.5}).Cn_realized)
        # chi-square(1)/(2 ln 2) bits over log2 log2 n; mean is about 0.2, d = 1
        assert 0 < np.mean(cn) <= 1.0
