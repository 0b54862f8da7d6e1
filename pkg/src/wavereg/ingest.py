"""Loading and aligning annual time series.

The CSV dialect is deliberately plain: comma-delimited UTF-8 with a single
header row and "." as the decimal point. A column called ``year`` (any case)
supplies the index; without one, row positions are used.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    DuplicateNameError,
    EmptySelectionError,
    IndexMismatchError,
    MissingColumnError,
    NonContiguousYearsError,
    UnparseableCellError,
)

__all__ = [
    "TimeSeries",
    "AlignedDataset",
    "load_csv",
    "load_series",
    "validate_align",
    "write_csv",
    "dataset_to_csv",
]


def _frozen_array(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """A named annual series with a unit-step integer index."""

    name: str
    index: np.ndarray
    values: np.ndarray
    units: str = ""

    def __post_init__(self):
        index = _frozen_array(self.index, np.int64)
        values = _frozen_array(self.values, np.float64)
        if index.ndim != 1 or values.ndim != 1:
            raise ValueError(f"series {self.name!r}: index and values must be 1-D")
        if len(index) != len(values):
            raise ValueError(
                f"series {self.name!r}: index has {len(index)} entries, "
                f"values has {len(values)}"
            )
        if len(index) == 0:
            raise ValueError(f"series {self.name!r} is empty")
        if len(index) > 1 and not np.all(np.diff(index) == 1):
            raise ValueError(f"series {self.name!r}: index must increase by exactly 1")
        if not np.all(np.isfinite(values)):
            raise ValueError(f"series {self.name!r} contains non-finite values")
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True, eq=False)
class AlignedDataset:
    """A dependent series and its predictors on one shared index axis."""

    dependent: TimeSeries
    independents: tuple[TimeSeries, ...]
    source: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "independents", tuple(self.independents))
        if not self.independents:
            raise ValueError("at least one independent series is required")
        seen = {self.dependent.name}
        for s in self.independents:
            if s.name in seen:
                raise DuplicateNameError(s.name)
            seen.add(s.name)
        for s in self.independents:
            if not np.array_equal(s.index, self.dependent.index):
                raise IndexMismatchError(s.name)

    @property
    def n(self) -> int:
        return len(self.dependent)

    @property
    def index(self) -> np.ndarray:
        return self.dependent.index

    @property
    def names(self) -> list[str]:
        return [self.dependent.name] + [s.name for s in self.independents]


def validate_align(series: Sequence[TimeSeries], dependent_name: str) -> AlignedDataset:
    """Assemble programmatically built series into an :class:`AlignedDataset`.

    Raises
    ------
    DuplicateNameError
        Two series share a name.
    IndexMismatchError
        Some series' index differs from the dependent's.
    """
    if not series:
        raise ValueError("series list is empty")
    names = [s.name for s in series]
    for i, name in enumerate(names):
        if name in names[:i]:
            raise DuplicateNameError(name)
    if dependent_name not in names:
        raise MissingColumnError(dependent_name)
    dep = series[names.index(dependent_name)]
    indeps = [s for s in series if s.name != dependent_name]
    return AlignedDataset(dep, tuple(indeps))


def _parse_cell(text: str, row: int, column: str) -> float:
    try:
        value = float(text.strip())
    except ValueError:
        raise UnparseableCellError(row, column, text) from None
    if not math.isfinite(value):
        raise UnparseableCellError(row, column, text)
    return value


def _read_columns(source, wanted: Sequence[str]) -> tuple[list[int], list[list[float]]]:
    """``source`` is a path or an open text stream."""
    for i, name in enumerate(wanted):
        if name in wanted[:i]:
            raise DuplicateNameError(name)
    if isinstance(source, (str, Path)):
        path = Path(source)
        if not path.exists():
            raise FileNotFoundError(f"no such file: {path}")
        with path.open(newline="", encoding="utf-8-sig") as fh:
            return _parse_rows(fh, path, wanted)
    return _parse_rows(source, getattr(source, "name", "<stream>"), wanted)


def _parse_rows(fh, path, wanted):
    reader = csv.reader(fh)
    try:
        header = [h.strip().lstrip("\ufeff") for h in next(reader)]
    except StopIteration:
        raise EmptySelectionError(path) from None
    for name in wanted:
        if name not in header:
            raise MissingColumnError(name)
    year_cols = [i for i, h in enumerate(header) if h.lower() == "year"]
    year_col = year_cols[0] if year_cols else None
    cols = [header.index(name) for name in wanted]

    years: list[int] = []
    data: list[list[float]] = [[] for _ in wanted]
    for row_no, row in enumerate(reader, start=1):
        if not row or all(not c.strip() for c in row):
            continue
        if year_col is not None:
            text = row[year_col] if year_col < len(row) else ""
            year_val = _parse_cell(text, row_no, header[year_col])
            if year_val != int(year_val):
                raise UnparseableCellError(row_no, header[year_col], text)
            year = int(year_val)
            if years and year != years[-1] + 1:
                raise NonContiguousYearsError(row_no, year, years[-1] + 1)
            years.append(year)
        for j, (name, c) in enumerate(zip(wanted, cols)):
            text = row[c] if c < len(row) else ""
            data[j].append(_parse_cell(text, row_no, name))

    n = len(data[0])
    if n == 0:
        raise EmptySelectionError(path)
    if year_col is None:
        warnings.warn(
            f"{path}: no 'year' column; using row positions 0..{n - 1} as the index",
            stacklevel=4,
        )
        years = list(range(n))
    return years, data


def load_csv(
    path,
    dependent_name: str,
    independent_names: Sequence[str],
    units: dict[str, str] | None = None,
) -> AlignedDataset:
    """Load the selected columns of a CSV file.

    Rows are kept in file order. Any blank or unparseable cell in a selected
    column fails the whole load; nothing is imputed or silently dropped.
    Row numbers in error messages count data rows from 1. ``path`` may also be
    an open text stream.
    """
    units = units or {}
    wanted = [dependent_name, *independent_names]
    years, data = _read_columns(path, wanted)
    series = [
        TimeSeries(name, years, values, units.get(name, ""))
        for name, values in zip(wanted, data)
    ]
    source = str(path) if isinstance(path, (str, Path)) else getattr(path, "name", "<stream>")
    return AlignedDataset(series[0], tuple(series[1:]), source=source)


def load_series(path, name: str, units: str = "") -> TimeSeries:
    """Load a single column, validated like :func:`load_csv`."""
    years, data = _read_columns(path, [name])
    return TimeSeries(name, years, data[0], units)


def dataset_to_csv(dataset: AlignedDataset) -> str:
    """CSV text with a ``year`` column; values use 17 significant digits."""
    series = [dataset.dependent, *dataset.independents]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["year"] + [s.name for s in series])
    for i, year in enumerate(dataset.index):
        writer.writerow([int(year)] + [format(s.values[i], ".17g") for s in series])
    return buf.getvalue()


def write_csv(dataset: AlignedDataset, path: str | Path) -> None:
    Path(path).write_text(dataset_to_csv(dataset), encoding="utf-8", newline="")
