"""Orthonormal two-channel filter banks.

Only the low-pass analysis filter is tabulated; the other three filters are
derived from it. The high-pass filter follows the quadrature-mirror rule
``dec_hi[k] = (-1)**k * dec_lo[L-1-k]`` and the synthesis filters are the
time-reverses of the analysis filters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import UnknownWaveletError

__all__ = ["FilterBank", "filter_bank", "SUPPORTED_WAVELETS"]

_S = 1.0 / math.sqrt(2.0)

# Low-pass analysis filters. db4 is the extremal-phase Daubechies filter with
# 4 vanishing moments; sym8 is the least-asymmetric Daubechies filter with 8.
_DEC_LO = {
    "haar": (_S, _S),
    "db4": (
        -0.010597401785069032,
        0.0328830116668852,
        0.030841381835560764,
        -0.18703481171909309,
        -0.027983769416859854,
        0.6308807679298589,
        0.7148465705529157,
        0.2303778133088965,
    ),
    "sym8": (
        -0.0033824159510061256,
        -0.0005421323317911481,
        0.03169508781149298,
        0.007607487324917605,
        -0.1432942383508097,
        -0.061273359067658524,
        0.4813596512583722,
        0.7771857517005235,
        0.3644418948353314,
        -0.05194583810770904,
        -0.027219029917056003,
        0.049137179673607506,
        0.003808752013890615,
        -0.01495225833704823,
        -0.0003029205147213668,
        0.0018899503327594609,
    ),
}

_VANISHING_MOMENTS = {"haar": 1, "db4": 4, "sym8": 8}

SUPPORTED_WAVELETS = tuple(_DEC_LO)


@dataclass(frozen=True, eq=False)
class FilterBank:
    name: str
    dec_lo: np.ndarray
    dec_hi: np.ndarray
    rec_lo: np.ndarray
    rec_hi: np.ndarray
    vanishing_moments: int

    @property
    def length(self) -> int:
        return len(self.dec_lo)

    def check(self, tol: float = 1e-12) -> None:
        """Raise ``AssertionError`` if the bank is not orthonormal to ``tol``."""
        h, g = self.dec_lo, self.dec_hi
        L = self.length
        assert abs(h.sum() - math.sqrt(2.0)) <= tol, "sum(h) != sqrt(2)"
        assert abs(np.dot(h, h) - 1.0) <= tol, "sum(h^2) != 1"
        for shift in range(2, L, 2):
            assert abs(np.dot(h[:-shift], h[shift:])) <= tol, f"h not orthogonal at shift {shift}"
        signs = (-1.0) ** np.arange(L)
        assert np.array_equal(g, signs * h[::-1]), "QMF relation violated"
        assert np.array_equal(self.rec_lo, h[::-1])
        assert np.array_equal(self.rec_hi, g[::-1])


def _build(name: str) -> FilterBank:
    h = np.array(_DEC_LO[name], dtype=np.float64)
    g = (-1.0) ** np.arange(len(h)) * h[::-1]
    arrays = [h, g, h[::-1].copy(), g[::-1].copy()]
    for a in arrays:
        a.flags.writeable = False
    return FilterBank(name, *arrays, vanishing_moments=_VANISHING_MOMENTS[name])


_BANKS = {name: _build(name) for name in _DEC_LO}


def filter_bank(name: str) -> FilterBank:
    """Return the orthonormal filter bank called ``name``.

    >>> filter_bank("sym8").length
    16
    """
    try:
        return _BANKS[name.lower()]
    except (KeyError, AttributeError):
        raise UnknownWaveletError(name, SUPPORTED_WAVELETS) from None
