"""Goodness-of-fit and model-selection statistics for a fitted equation."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DegenerateFitError,
    DegenerateVarianceError,
    InsufficientSamplesError,
    InternalConsistencyError,
    LengthMismatchError,
    ZeroRSSError,
)
from .special import f_pvalue, regularized_incomplete_beta

__all__ = [
    "AIC_FORMS",
    "SignificanceClass",
    "FitStatistics",
    "fit_statistics",
    "f_statistic",
    "f_pvalue",
    "regularized_incomplete_beta",
    "aic",
    "aicc",
    "classify_significance",
    "SMALL_SAMPLE_RATIO",
]

# "standard": 2k + n ln(RSS/n).  "literal": 2k + ln(RSS/n), without the n factor.
AIC_FORMS = ("standard", "literal")
SMALL_SAMPLE_RATIO = 40
_R2_CLAMP = 1e-12


class SignificanceClass(enum.Enum):
    ALPHA_0_001 = "0.001"
    ALPHA_0_01 = "0.01"
    ALPHA_0_05 = "0.05"
    ALPHA_0_1 = "0.1"
    NOT_SIGNIFICANT = "ns"

    @property
    def alpha(self) -> float | None:
        return None if self is SignificanceClass.NOT_SIGNIFICANT else float(self.value)

    def __str__(self):
        if self is SignificanceClass.NOT_SIGNIFICANT:
            return "not significant"
        return self.value


_LEVELS = (
    SignificanceClass.ALPHA_0_001,
    SignificanceClass.ALPHA_0_01,
    SignificanceClass.ALPHA_0_05,
    SignificanceClass.ALPHA_0_1,
)


def classify_significance(p: float) -> SignificanceClass:
    """Smallest of 0.001, 0.01, 0.05, 0.1 that is >= ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p-value must lie in [0, 1] (got {p})")
    for level in _LEVELS:
        if p <= level.alpha:
            return level
    return SignificanceClass.NOT_SIGNIFICANT


def f_statistic(r2: float, n: int, m: int) -> float:
    """Whole-equation F = (R^2 / m) / ((1 - R^2) / (n - m - 1))."""
    if m < 1 or n <= m + 1:
        raise ValueError(f"need n > m + 1 >= 2 (got n={n}, m={m})")
    if r2 >= 1.0:
        raise DegenerateFitError()
    if r2 < 0.0:
        raise ValueError(f"R^2 must be non-negative (got {r2})")
    return (r2 / m) / ((1.0 - r2) / (n - m - 1))


def aic(rss: float, n: int, k: int, form: str = "standard") -> float:
    """Akaike information criterion from a residual sum of squares.

    ``form="standard"`` gives ``2k + n ln(rss/n)``; ``form="literal"`` drops the
    ``n`` multiplier on the log term.
    """
    if form not in AIC_FORMS:
        raise ValueError(f"unknown AIC form {form!r}")
    if n < 1 or k < 1:
        raise ValueError(f"need n >= 1 and k >= 1 (got n={n}, k={k})")
    if rss <= 0.0:
        raise ZeroRSSError()
    log_term = math.log(rss / n)
    if form == "standard":
        log_term *= n
    return 2.0 * k + log_term


def aicc(aic_value: float, n: int, k: int) -> float:
    """Small-sample corrected AIC: ``aic + 2k(k+1)/(n-k-1)``."""
    if n <= k + 1:
        raise InsufficientSamplesError(n, k)
    return aic_value + 2.0 * k * (k + 1) / (n - k - 1)


@dataclass(frozen=True)
class FitStatistics:
    """Diagnostics of one fitted equation.

    For an exact fit (``r2 == 1``) the F statistic and both information
    criteria are undefined and stored as ``None``; ``p`` is then 0.
    """

    n: int
    m: int
    k: int
    rss: float
    tss: float
    r2: float
    f: float | None
    p: float
    aic: float | None
    aicc: float | None
    significance: SignificanceClass
    exact_fit: bool
    small_sample: bool
    aic_form: str = "standard"

    @property
    def df_model(self) -> int:
        return self.m

    @property
    def df_resid(self) -> int:
        return self.n - self.m - 1


def fit_statistics(
    y: Sequence[float],
    y_hat: Sequence[float],
    m: int,
    *,
    count_error_variance: bool = False,
    aic_form: str = "standard",
) -> FitStatistics:
    """Compute R^2, F, p, significance, AIC and AICc for ``y_hat`` fitted to ``y``.

    ``y_hat`` must come from a least-squares fit that includes an intercept,
    so that ``0 <= R^2 <= 1``. ``k`` is ``m + 1`` by default, or ``m + 2`` when
    ``count_error_variance`` is set.
    """
    y = np.asarray(y, dtype=np.float64)
    y_hat = np.asarray(y_hat, dtype=np.float64)
    if y.shape != y_hat.shape or y.ndim != 1:
        raise LengthMismatchError(f"y has shape {y.shape}, y_hat has shape {y_hat.shape}")
    n = len(y)
    if n < m + 2:
        raise ValueError(f"need n >= m + 2 (got n={n}, m={m})")
    resid = y - y_hat
    rss = float(np.dot(resid, resid))
    centered = y - y.mean()
    tss = float(np.dot(centered, centered))
    if tss == 0.0:
        raise DegenerateVarianceError()

    r2 = 1.0 - rss / tss
    if r2 < 0.0:
        if r2 < -_R2_CLAMP:
            raise InternalConsistencyError(
                f"R^2 = {r2} < 0: fitted values cannot come from an intercept model"
            )
        r2 = 0.0

    k = m + (2 if count_error_variance else 1)
    small_sample = n / k <= SMALL_SAMPLE_RATIO
    exact = r2 >= 1.0 or rss == 0.0
    if exact:
        return FitStatistics(
            n, m, k, rss, tss, 1.0, None, 0.0, None, None,
            SignificanceClass.ALPHA_0_001, True, small_sample, aic_form,
        )

    f = f_statistic(r2, n, m)
    p = f_pvalue(f, m, n - m - 1)
    a = aic(rss, n, k, aic_form)
    ac = aicc(a, n, k) if n > k + 1 else None
    return FitStatistics(
        n, m, k, rss, tss, r2, f, p, a, ac,
        classify_significance(p), False, small_sample, aic_form,
    )
