"""Least-squares fitting of wavelet regression equations.

The fit always estimates an intercept. Coefficients come from a
column-pivoted QR factorization of the column-normalized design; the
normal equations are never formed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
import scipy.linalg

from .errors import (
    DegenerateVarianceError,
    DuplicateDerivedColumnError,
    RankDeficientError,
    SchemaMismatchError,
    TooFewSamplesError,
    UnknownColumnError,
)

__all__ = [
    "INTERCEPT",
    "RANK_RTOL",
    "DesignMatrix",
    "BasisSpec",
    "RegressionModel",
    "ols_fit",
    "predict",
    "expand_basis",
]

INTERCEPT = "(intercept)"
# Relative to the largest normalized column, i.e. 1.
RANK_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class DesignMatrix:
    """Named predictor columns; the intercept column is implied, not stored."""

    columns: tuple[tuple[str, np.ndarray], ...]
    includes_intercept: bool = True

    def __post_init__(self):
        cols = []
        seen = set()
        n = None
        for name, values in self.columns:
            arr = np.array(values, dtype=np.float64)
            arr.flags.writeable = False
            if arr.ndim != 1:
                raise ValueError(f"column {name!r} must be 1-D")
            if n is None:
                n = len(arr)
            elif len(arr) != n:
                raise ValueError(f"column {name!r} has {len(arr)} rows, expected {n}")
            if name in seen:
                raise ValueError(f"duplicate column name {name!r}")
            seen.add(name)
            cols.append((name, arr))
        if not cols:
            raise ValueError("design needs at least one predictor column")
        object.__setattr__(self, "columns", tuple(cols))

    @classmethod
    def from_mapping(cls, columns: Mapping[str, Sequence[float]]) -> "DesignMatrix":
        return cls(tuple(columns.items()))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.columns)

    @property
    def n(self) -> int:
        return len(self.columns[0][1])

    @property
    def m(self) -> int:
        return len(self.columns)

    def column(self, name: str) -> np.ndarray:
        for col_name, values in self.columns:
            if col_name == name:
                return values
        raise UnknownColumnError(name)

    def to_array(self) -> np.ndarray:
        """``n x (m + 1)`` matrix with the column of ones first."""
        X = np.column_stack([np.ones(self.n)] + [v for _, v in self.columns])
        return X


@dataclass(frozen=True, eq=False)
class RegressionModel:
    intercept: float
    coefficients: np.ndarray
    names: tuple[str, ...]
    fitted: np.ndarray
    residuals: np.ndarray

    @property
    def n(self) -> int:
        return len(self.fitted)

    @property
    def m(self) -> int:
        return len(self.names)

    @property
    def params(self) -> np.ndarray:
        """``[b0, b1, ..., bm]``."""
        return np.concatenate([[self.intercept], self.coefficients])

    def coef(self, name: str) -> float:
        return float(self.coefficients[self.names.index(name)])

    def as_dict(self) -> dict[str, float]:
        out = {INTERCEPT: float(self.intercept)}
        out.update(zip(self.names, map(float, self.coefficients)))
        return out


def _implicated_columns(Xs: np.ndarray, rank: int, names: Sequence[str]) -> list[str]:
    _, _, vt = np.linalg.svd(Xs, full_matrices=False)
    null = vt[rank:]
    weight = np.abs(null).max(axis=0)
    picked = [names[i] for i in np.flatnonzero(weight > 1e-6)]
    return picked or list(names)


def ols_fit(design: DesignMatrix, y: Sequence[float]) -> RegressionModel:
    """Fit ``y = b0 + sum_i b_i x_i`` by least squares.

    Raises
    ------
    TooFewSamplesError
        Fewer than ``m + 2`` observations.
    DegenerateVarianceError
        ``y`` is constant.
    RankDeficientError
        Some design columns (the intercept included) are linearly dependent
        to within ``RANK_RTOL``; the error names the columns involved.
    """
    if not design.includes_intercept:
        raise ValueError("intercept-free fits are not supported")
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1 or len(y) != design.n:
        raise SchemaMismatchError(f"y has {y.shape} entries, design has {design.n} rows")
    n, m = design.n, design.m
    if n < m + 2:
        raise TooFewSamplesError(n, m)
    if np.all(y == y[0]):
        raise DegenerateVarianceError()

    X = design.to_array()
    names = (INTERCEPT, *design.names)
    scale = np.linalg.norm(X, axis=0)
    if np.any(scale == 0):
        raise RankDeficientError([names[i] for i in np.flatnonzero(scale == 0)])
    Xs = X / scale

    Q, R, perm = scipy.linalg.qr(Xs, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    rank = int(np.sum(diag > RANK_RTOL * diag[0]))
    if rank < X.shape[1]:
        raise RankDeficientError(_implicated_columns(Xs, rank, names))

    z = scipy.linalg.solve_triangular(R, Q.T @ y)
    beta_s = np.empty_like(z)
    beta_s[perm] = z
    beta = beta_s / scale

    fitted = X @ beta
    residuals = y - fitted
    for arr in (fitted, residuals):
        arr.flags.writeable = False
    coefs = beta[1:].copy()
    coefs.flags.writeable = False
    return RegressionModel(float(beta[0]), coefs, design.names, fitted, residuals)


def predict(model: RegressionModel, design: DesignMatrix) -> np.ndarray:
    """Evaluate the fitted equation on ``design``."""
    if design.names != model.names:
        raise SchemaMismatchError(
            f"design columns {list(design.names)} do not match model predictors "
            f"{list(model.names)}"
        )
    return design.to_array() @ model.params


@dataclass(frozen=True)
class BasisSpec:
    """Derived columns for the nonlinear fallback: squares and pairwise products."""

    squares: tuple[str, ...] = ()
    products: tuple[tuple[str, str], ...] = field(default=())

    @classmethod
    def parse(cls, text: str | None) -> "BasisSpec":
        """Parse a comma list such as ``"T^2,T*P"``."""
        squares, products = [], []
        for token in (text or "").split(","):
            token = token.strip()
            if not token:
                continue
            if token.endswith("^2"):
                squares.append(token[:-2].strip())
            elif "*" in token:
                a, _, b = token.partition("*")
                products.append((a.strip(), b.strip()))
            else:
                raise ValueError(f"cannot parse basis term {token!r}; use NAME^2 or A*B")
        return cls(tuple(squares), tuple(products))

    def __bool__(self):
        return bool(self.squares or self.products)

    def __str__(self):
        terms = [f"{s}^2" for s in self.squares] + [f"{a}*{b}" for a, b in self.products]
        return ",".join(terms)


def expand_basis(design: DesignMatrix, spec: BasisSpec) -> DesignMatrix:
    """Append squared and product columns named ``x^2`` and ``x*z``."""
    cols = list(design.columns)
    names = set(design.names)

    def add(name, values):
        if name in names:
            raise DuplicateDerivedColumnError(name)
        names.add(name)
        cols.append((name, values))

    for s in spec.squares:
        x = design.column(s)
        add(f"{s}^2", x * x)
    for a, b in spec.products:
        xa, xb = design.column(a), design.column(b)
        add(f"{a}*{b}", xa * xb)
    return DesignMatrix(tuple(cols), design.includes_intercept)
