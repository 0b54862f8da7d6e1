import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats as sps

from oracles import incomplete_beta_quadrature
from wavereg.errors import (
    DegenerateFitError,
    DegenerateVarianceError,
    InsufficientSamplesError,
    InternalConsistencyError,
    LengthMismatchError,
    ZeroRSSError,
)
from wavereg.regression import DesignMatrix, ols_fit
from wavereg.stats import (
    SignificanceClass,
    aic,
    aicc,
    classify_significance,
    f_pvalue,
    f_statistic,
    fit_statistics,
    regularized_incomplete_beta,
)

# Published (R^2, F) pairs for the first five scales, n=47 and two predictors.
PUBLISHED_F = [
    (0.3666, 12.7340),
    (0.5765, 29.9478),
    (0.6754, 45.7753),
    (0.7991, 87.5066),
    (0.9509, 425.6954),
]


# -- incomplete beta ------------------------------------------------------------

@pytest.mark.parametrize("a,b", [(0.5, 0.5), (1, 1), (2.5, 10), (22, 0.5)])
def test_incomplete_beta_bounds(a, b):
    assert regularized_incomplete_beta(a, b, 0.0) == 0.0
    assert regularized_incomplete_beta(a, b, 1.0) == 1.0


def test_incomplete_beta_uniform():
    assert regularized_incomplete_beta(1, 1, 0.5) == pytest.approx(0.5, abs=1e-15)


def test_incomplete_beta_a_equals_one_closed_form():
    assert regularized_incomplete_beta(1, 4, 0.3) == pytest.approx(1 - 0.7**4, abs=1e-12)
    assert 1 - 0.7**4 == pytest.approx(0.7599, abs=1e-12)


@pytest.mark.parametrize("a", [0.5, 1, 2.5, 10, 22])
@pytest.mark.parametrize("b", [0.5, 1, 2.5, 10, 22])
def test_incomplete_beta_against_quadrature(a, b):
    for x in [0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99]:
        got = regularized_incomplete_beta(a, b, x)
        assert got == pytest.approx(incomplete_beta_quadrature(a, b, x), abs=1e-8)
        assert got == pytest.approx(sps.beta.cdf(x, a, b), abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(
    a=st.floats(0.05, 500.0),
    b=st.floats(0.05, 500.0),
    x=st.floats(0.0, 1.0),
)
def test_incomplete_beta_symmetry_and_range(a, b, x):
    v = regularized_incomplete_beta(a, b, x)
    assert 0.0 <= v <= 1.0 + 1e-15
    if 1.0 - (1.0 - x) != x:
        return  # complementary point not representable
    assert v + regularized_incomplete_beta(b, a, 1.0 - x) == pytest.approx(1.0, abs=1e-12)


def test_incomplete_beta_rejects_bad_args():
    with pytest.raises(ValueError):
        regularized_incomplete_beta(0, 1, 0.5)
    with pytest.raises(ValueError):
        regularized_incomplete_beta(1, 1, 1.5)


# -- F test -----------------------------------------------------------------------

@pytest.mark.parametrize("r2,f_published", PUBLISHED_F)
def test_f_statistic_matches_published_table(r2, f_published):
    assert f_statistic(r2, 47, 2) == pytest.approx(f_published, rel=5e-3)


def test_f_statistic_examples():
    assert f_statistic(0.3666, 47, 2) == pytest.approx(12.73, abs=0.07)
    assert f_statistic(0.7991, 47, 2) == pytest.approx(87.51, abs=0.45)
    assert f_statistic(0.0, 47, 2) == 0.0
    with pytest.raises(DegenerateFitError):
        f_statistic(1.0, 47, 2)


def test_published_last_row_is_inconsistent():
    # R^2 = 0.9999 implies F near 2.2e5, not the published 1598.985
    assert f_statistic(0.9999, 47, 2) > 1e5
    implied_r2 = 1598.985 * 2 / (1598.985 * 2 + 44)
    assert implied_r2 == pytest.approx(0.9864, abs=1e-4)


def test_f_pvalue_zero():
    assert f_pvalue(0.0, 2, 44) == 1.0


def test_f_pvalue_two_numerator_df_closed_form():
    expected = (1 + 2 * 4.10 / 10) ** (-5)
    assert expected == pytest.approx(0.0501, abs=1e-4)
    assert f_pvalue(4.10, 2, 10) == pytest.approx(expected, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(f=st.floats(0.0, 1e4), d2=st.integers(1, 200))
def test_f_pvalue_two_df_closed_form_property(f, d2):
    assert f_pvalue(f, 2, d2) == pytest.approx((1 + 2 * f / d2) ** (-d2 / 2), abs=1e-10)


@pytest.mark.parametrize("d1,d2", [(1, 1), (2, 44), (3, 10), (5, 120), (10, 3)])
def test_f_pvalue_against_scipy(d1, d2):
    for f in [0.01, 0.5, 1.0, 2.0, 4.1, 12.734, 100.0]:
        assert f_pvalue(f, d1, d2) == pytest.approx(sps.f.sf(f, d1, d2), abs=1e-10)


def test_f_pvalue_strictly_decreasing():
    fs = np.linspace(0.0, 60.0, 400)
    for d1, d2 in [(1, 5), (2, 44), (4, 30)]:
        ps = [f_pvalue(f, d1, d2) for f in fs]
        assert all(p1 > p2 for p1, p2 in zip(ps, ps[1:]))
    assert f_pvalue(math.inf, 2, 44) == 0.0


def test_published_first_row_pvalue_class():
    # (2, 44) degrees of freedom: the published F is already far below 0.001
    p = f_pvalue(12.7340, 2, 44)
    assert 1e-5 < p < 1e-4
    assert classify_significance(p) is SignificanceClass.ALPHA_0_001


# -- AIC / AICc -----------------------------------------------------------------

def test_aic_examples():
    assert aic(47 * math.e, 47, 3) == pytest.approx(53.0, abs=1e-12)
    assert aic(1.0, 1, 1) == 2.0
    drop = aic(10.0, 47, 3) - aic(5.0, 47, 3)
    assert drop == pytest.approx(47 * math.log(2), abs=1e-12)
    assert drop == pytest.approx(32.58, abs=0.01)


def test_aic_literal_form():
    assert aic(47 * math.e, 47, 3, form="literal") == pytest.approx(7.0, abs=1e-12)
    with pytest.raises(ValueError):
        aic(1.0, 10, 2, form="bogus")


def test_aic_zero_rss():
    with pytest.raises(ZeroRSSError):
        aic(0.0, 10, 2)


def test_aicc_examples():
    assert aicc(53.0, 47, 3) == pytest.approx(53 + 24 / 43, abs=1e-12)
    assert aicc(53.0, 47, 3) == pytest.approx(53.5581, abs=1e-4)
    assert aicc(0.0, 5, 3) == pytest.approx(24.0, abs=1e-12)
    with pytest.raises(InsufficientSamplesError):
        aicc(0.0, 4, 3)


def test_aicc_limit():
    corrections = [aicc(0.0, n, 3) for n in (10, 100, 10_000, 10**8)]
    assert corrections == sorted(corrections, reverse=True)
    assert corrections[-1] < 1e-6


@settings(max_examples=100, deadline=None)
@given(rss=st.floats(1e-6, 1e6), k=st.integers(1, 10), extra=st.integers(2, 500))
def test_aicc_strictly_above_aic(rss, k, extra):
    n = k + extra
    a = aic(rss, n, k)
    assert aicc(a, n, k) > a
    assert aicc(a, n, k) - a == pytest.approx(2 * k * (k + 1) / (n - k - 1), rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(rss=st.lists(st.floats(1e-8, 1e8), min_size=2, max_size=10, unique=True),
       n=st.integers(5, 300), k=st.integers(1, 3))
def test_equal_k_aic_order_is_rss_order(rss, n, k):
    # monotone in RSS; neighbouring floats may tie after the log
    for r1 in rss:
        for r2 in rss:
            if r1 < r2:
                assert aic(r1, n, k) <= aic(r2, n, k)


# -- significance ----------------------------------------------------------------

@pytest.mark.parametrize(
    "p,cls",
    [
        (0.0005, SignificanceClass.ALPHA_0_001),
        (0.001, SignificanceClass.ALPHA_0_001),
        (0.005, SignificanceClass.ALPHA_0_01),
        (0.03, SignificanceClass.ALPHA_0_05),
        (0.07, SignificanceClass.ALPHA_0_1),
        (0.2, SignificanceClass.NOT_SIGNIFICANT),
        (1.0, SignificanceClass.NOT_SIGNIFICANT),
    ],
)
def test_classify(p, cls):
    assert classify_significance(p) is cls


def test_significance_labels():
    assert str(SignificanceClass.ALPHA_0_01) == "0.01"
    assert SignificanceClass.ALPHA_0_05.alpha == 0.05
    assert SignificanceClass.NOT_SIGNIFICANT.alpha is None


# -- fit_statistics ---------------------------------------------------------------

def test_fit_statistics_hand_example():
    st_ = fit_statistics([0, 1, 2, 3], [0.5, 0.5, 2.5, 2.5], 1)
    assert st_.rss == 1.0 and st_.tss == 5.0
    assert st_.r2 == pytest.approx(0.8, abs=1e-15)
    assert st_.k == 2
    assert st_.f == pytest.approx(0.8 / (0.2 / 2))


def test_fit_statistics_perfect_fit():
    y = [1.0, 2.0, 4.0, 8.0]
    st_ = fit_statistics(y, y, 1)
    assert st_.rss == 0.0 and st_.r2 == 1.0
    assert st_.exact_fit
    assert st_.f is None and st_.aic is None and st_.aicc is None


def test_fit_statistics_mean_predictor():
    y = np.array([3.0, 1.0, 4.0, 1.0, 5.0])
    st_ = fit_statistics(y, np.full(5, y.mean()), 2)
    assert st_.rss == pytest.approx(st_.tss)
    assert st_.r2 == pytest.approx(0.0, abs=1e-15)
    assert st_.f == pytest.approx(0.0, abs=1e-12)
    assert st_.significance is SignificanceClass.NOT_SIGNIFICANT


def test_fit_statistics_errors():
    with pytest.raises(DegenerateVarianceError):
        fit_statistics([1, 1, 1, 1], [1, 1, 1, 1], 1)
    with pytest.raises(LengthMismatchError):
        fit_statistics([1, 2, 3], [1, 2], 1)
    with pytest.raises(InternalConsistencyError):
        fit_statistics([0, 1, 2, 3], [3, 2, 1, 0], 1)


def test_error_variance_convention():
    y = [0, 1, 2, 3, 5, 4]
    yh = [0.2, 0.9, 2.1, 3.2, 4.6, 4.0]
    a = fit_statistics(y, yh, 1)
    b = fit_statistics(y, yh, 1, count_error_variance=True)
    assert (a.k, b.k) == (2, 3)
    assert b.aic - a.aic == pytest.approx(2.0)


def test_small_sample_flag():
    rng = np.random.default_rng(0)
    for n, expected in [(47, True), (120, True), (121, False)]:
        y = rng.normal(size=n)
        # k = 3 (two predictors plus intercept); rule is n / k <= 40
        assert fit_statistics(y, y * 0.5, 2).small_sample is expected


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(5, 80), m=st.integers(1, 3))
def test_fit_statistics_invariants(seed, n, m):
    if n < m + 3:
        return
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, m))
    y = X @ rng.normal(size=m) + rng.normal(size=n)
    model = ols_fit(DesignMatrix(tuple((f"x{i}", X[:, i]) for i in range(m))), y)
    s = fit_statistics(y, model.fitted, m)
    assert s.r2 == pytest.approx(1 - s.rss / s.tss, abs=1e-12)
    mean_square_f = ((s.tss - s.rss) / m) / (s.rss / (n - m - 1))
    assert s.f == pytest.approx(mean_square_f, rel=1e-9)
    assert s.aicc > s.aic
    assert s.aicc - s.aic == pytest.approx(2 * s.k * (s.k + 1) / (n - s.k - 1), rel=1e-12)
    assert s.significance is classify_significance(s.p)
