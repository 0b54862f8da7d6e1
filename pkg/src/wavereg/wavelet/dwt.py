"""Decimated discrete wavelet transform and multiresolution analysis.

Conventions
-----------
Analysis is a correlation sampled at even offsets::

    a[k] = sum_i dec_lo[i] * x[2k + i]
    d[k] = sum_i dec_hi[i] * x[2k + i]

and synthesis is its adjoint. Samples past the ends of ``x`` come from the
boundary rule:

``"periodic"``
    indices wrap modulo the (even) level length. The transform is orthogonal,
    so coefficient energy equals signal energy.
``"symmetric"``
    half-point reflection (``x[-1] = x[0]``). Every coefficient whose window
    overlaps the signal is kept, giving ``(N + L - 2) / 2`` coefficients per
    band, which is enough to invert exactly.

A level input of odd length is first extended by one sample using the same
rule (``x[0]`` for periodic, ``x[-1]`` for symmetric); the original length is
recorded and the extra sample is dropped on inversion.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Sequence

import numpy as np

from ..errors import (
    BankMismatchError,
    BoundaryContaminationWarning,
    EmptySignalError,
    LevelTooDeepError,
)
from .filters import FilterBank

__all__ = [
    "BOUNDARY_MODES",
    "WaveletCoefficients",
    "MRADecomposition",
    "max_level",
    "dwt_forward",
    "dwt_inverse",
    "mra",
]

BOUNDARY_MODES = ("periodic", "symmetric")


def max_level(n: int, L: int) -> tuple[int, int]:
    """Return ``(j_max, j_clean)`` for a signal of length ``n`` and filter length ``L``.

    ``j_max = floor(log2 n)`` is the hard cap. ``j_clean`` is the deepest level
    at which ``2**j * (L - 1) <= n``, i.e. ``floor(log2(n / (L - 1)))`` floored
    at zero; deeper levels are usable but dominated by the boundary rule.
    """
    if n < 2 or L < 2:
        raise ValueError(f"max_level needs n >= 2 and L >= 2 (got n={n}, L={L})")
    j_max = int(n).bit_length() - 1
    j_clean = 0
    while (L - 1) << (j_clean + 1) <= n:
        j_clean += 1
    return j_max, j_clean


def _check_mode(boundary: str) -> str:
    if boundary not in BOUNDARY_MODES:
        raise ValueError(f"unknown boundary mode {boundary!r}; use one of {BOUNDARY_MODES}")
    return boundary


def _coeff_len(n_even: int, L: int, boundary: str) -> int:
    if boundary == "periodic":
        return n_even // 2
    return (n_even + L - 2) // 2


@lru_cache(maxsize=512)
def _positions(n_even: int, L: int, boundary: str) -> tuple[np.ndarray, np.ndarray]:
    """Raw window positions (unbounded) and their in-range source indices."""
    m = _coeff_len(n_even, L, boundary)
    offset = 0 if boundary == "periodic" else -(L // 2 - 1)
    raw = 2 * (np.arange(m)[:, None] + offset) + np.arange(L)[None, :]
    if boundary == "periodic":
        src = raw % n_even
    else:
        src = raw % (2 * n_even)
        src = np.where(src >= n_even, 2 * n_even - 1 - src, src)
    raw.flags.writeable = False
    src.flags.writeable = False
    return raw, src


def _extend_odd(x: np.ndarray, boundary: str) -> np.ndarray:
    if len(x) % 2 == 0:
        return x
    extra = x[0] if boundary == "periodic" else x[-1]
    return np.append(x, extra)


def _analysis_step(x: np.ndarray, fb: FilterBank, boundary: str):
    x = _extend_odd(x, boundary)
    _, src = _positions(len(x), fb.length, boundary)
    windows = x[src]
    return windows @ fb.dec_lo, windows @ fb.dec_hi


def _synthesis_step(a: np.ndarray, d: np.ndarray, n: int, fb: FilterBank, boundary: str):
    n_even = n + n % 2
    raw, _ = _positions(n_even, fb.length, boundary)
    if len(a) != raw.shape[0] or len(d) != raw.shape[0]:
        raise BankMismatchError(
            f"{fb.name} ({boundary}) expects {raw.shape[0]} coefficients for a "
            f"level of length {n}, got {len(a)} approximation / {len(d)} detail"
        )
    # adjoint of the analysis correlation: rec filters reversed = dec filters
    contrib = a[:, None] * fb.rec_lo[::-1] + d[:, None] * fb.rec_hi[::-1]
    if boundary == "periodic":
        pos = raw % n_even
        out = np.bincount(pos.ravel(), weights=contrib.ravel(), minlength=n_even)
    else:
        keep = (raw >= 0) & (raw < n_even)
        out = np.bincount(raw[keep], weights=contrib[keep], minlength=n_even)
    return out[:n]


@dataclass(frozen=True, eq=False)
class WaveletCoefficients:
    """Output of :func:`dwt_forward`.

    ``details[0]`` is the coarsest band ``d_J`` and ``details[-1]`` the finest
    ``d_1``. ``level_lengths[j-1]`` is the length of the level-``j`` input
    before any odd-length extension, so ``level_lengths[0]`` is the signal
    length.
    """

    approx: np.ndarray
    details: tuple[np.ndarray, ...]
    original_length: int
    boundary: str
    wavelet: str
    filter_length: int
    level_lengths: tuple[int, ...]

    @property
    def levels(self) -> int:
        return len(self.details)

    @property
    def padded(self) -> tuple[bool, ...]:
        """Whether each level's input was extended by one sample."""
        return tuple(n % 2 == 1 for n in self.level_lengths)

    def detail(self, j: int) -> np.ndarray:
        """Detail band ``d_j`` with ``j`` counted from 1 (finest)."""
        if not 1 <= j <= self.levels:
            raise IndexError(f"detail level {j} outside 1..{self.levels}")
        return self.details[self.levels - j]

    def zeros_like(self) -> "WaveletCoefficients":
        return replace(
            self,
            approx=np.zeros_like(self.approx),
            details=tuple(np.zeros_like(d) for d in self.details),
        )

    def energy(self) -> float:
        return float(np.dot(self.approx, self.approx) + sum(np.dot(d, d) for d in self.details))


def dwt_forward(
    signal: Sequence[float],
    fb: FilterBank,
    J: int,
    boundary: str = "periodic",
) -> WaveletCoefficients:
    """Decompose ``signal`` into ``J`` levels of detail plus one approximation."""
    _check_mode(boundary)
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("signal must be one-dimensional")
    n = len(x)
    if n == 0:
        raise EmptySignalError()
    if not np.all(np.isfinite(x)):
        raise ValueError("signal contains non-finite values")
    j_max = int(n).bit_length() - 1
    if J < 1 or J > j_max:
        raise LevelTooDeepError(J, j_max)
    _, j_clean = max_level(n, fb.length)
    if J > j_clean:
        warnings.warn(
            f"level {J} exceeds the boundary-clean depth {j_clean} for n={n} "
            f"and {fb.name} (L={fb.length}); coarse components are boundary dominated",
            BoundaryContaminationWarning,
            stacklevel=2,
        )

    lengths = []
    details = []
    a = x
    for _ in range(J):
        lengths.append(len(a))
        a, d = _analysis_step(a, fb, boundary)
        details.append(d)
    return WaveletCoefficients(
        approx=a,
        details=tuple(reversed(details)),
        original_length=n,
        boundary=boundary,
        wavelet=fb.name,
        filter_length=fb.length,
        level_lengths=tuple(lengths),
    )


def dwt_inverse(coeffs: WaveletCoefficients, fb: FilterBank) -> np.ndarray:
    """Invert :func:`dwt_forward`; returns ``coeffs.original_length`` samples."""
    if coeffs.filter_length != fb.length:
        raise BankMismatchError(
            f"coefficients were produced with a length-{coeffs.filter_length} "
            f"filter, got {fb.name} (L={fb.length})"
        )
    if len(coeffs.level_lengths) != coeffs.levels:
        raise BankMismatchError("level bookkeeping does not match the number of detail bands")
    a = np.asarray(coeffs.approx, dtype=np.float64)
    for j in range(coeffs.levels, 0, -1):
        n = coeffs.level_lengths[j - 1]
        a = _synthesis_step(a, np.asarray(coeffs.detail(j), dtype=np.float64), n, fb, coeffs.boundary)
    return a


@dataclass(frozen=True, eq=False)
class MRADecomposition:
    """Approximations ``S_1..S_J`` and details ``D_1..D_J`` at signal length.

    ``S[j-1]`` holds ``S_j`` and ``D[j-1]`` holds ``D_j``. ``approx_sizes[j-1]``
    is the number of level-``j`` approximation coefficients, which bounds the
    dimension of the space ``S_j`` lives in.
    """

    S: tuple[np.ndarray, ...]
    D: tuple[np.ndarray, ...]
    J: int
    source_name: str = ""
    wavelet: str = ""
    boundary: str = "periodic"
    approx_sizes: tuple[int, ...] = ()

    def approximation(self, j: int) -> np.ndarray:
        return self.S[j - 1]

    def detail(self, j: int) -> np.ndarray:
        return self.D[j - 1]

    def reconstruct(self) -> np.ndarray:
        """``S_J + D_J + ... + D_1``."""
        out = self.S[-1].copy()
        for d in reversed(self.D):
            out = out + d
        return out


def mra(
    signal: Sequence[float],
    fb: FilterBank,
    J: int,
    boundary: str = "periodic",
    name: str = "",
) -> MRADecomposition:
    """Multiresolution analysis of ``signal`` to depth ``J``.

    Each ``D_j`` is the inverse transform of the coefficient set with every band
    except ``d_j`` zeroed, and ``S_J`` likewise keeps only the approximation.
    Finer approximations are accumulated as ``S_{j-1} = S_j + D_j``, so the
    telescoping identity holds exactly and ``X = S_J + sum D_j`` holds up to
    rounding.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundaryContaminationWarning)
        coeffs = dwt_forward(signal, fb, J, boundary)
    _, j_clean = max_level(coeffs.original_length, fb.length)
    if J > j_clean:
        warnings.warn(
            f"MRA level {J} exceeds the boundary-clean depth {j_clean} "
            f"(n={coeffs.original_length}, {fb.name})",
            BoundaryContaminationWarning,
            stacklevel=2,
        )
    empty = coeffs.zeros_like()

    s_top = dwt_inverse(replace(empty, approx=coeffs.approx), fb)
    D = []
    for j in range(1, J + 1):
        details = list(empty.details)
        details[J - j] = coeffs.detail(j)
        D.append(dwt_inverse(replace(empty, details=tuple(details)), fb))

    S = [s_top]
    for j in range(J, 1, -1):
        S.append(S[-1] + D[j - 1])
    S.reverse()
    for arr in (*S, *D):
        arr.flags.writeable = False
    sizes = coeffs.level_lengths[1:] + (len(coeffs.approx),)
    return MRADecomposition(
        S=tuple(S), D=tuple(D), J=J, source_name=name, wavelet=fb.name,
        boundary=boundary, approx_sizes=sizes,
    )
