import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wavereg.errors import (
    DuplicateNameError,
    EmptySelectionError,
    IndexMismatchError,
    MissingColumnError,
    NonContiguousYearsError,
    UnparseableCellError,
)
from wavereg.ingest import (
    AlignedDataset,
    TimeSeries,
    load_csv,
    load_series,
    validate_align,
    write_csv,
)

FIVE_ROWS = """year,Q,T
2000,60.1,10.5
2001,65.3,10.9
2002,58.0,10.2
2003,70.7,11.4
2004,66.6,10.8
"""


def test_load_five_rows(write_text):
    ds = load_csv(write_text("d.csv", FIVE_ROWS), "Q", ["T"])
    assert ds.n == 5
    assert ds.dependent.name == "Q"
    assert [s.name for s in ds.independents] == ["T"]
    np.testing.assert_array_equal(ds.index, [2000, 2001, 2002, 2003, 2004])
    np.testing.assert_array_equal(ds.dependent.values, [60.1, 65.3, 58.0, 70.7, 66.6])


def test_row_order_preserved(write_text):
    text = "year,y,x\n1990,3,1\n1991,1,2\n1992,2,3\n"
    ds = load_csv(write_text("d.csv", text), "y", ["x"])
    np.testing.assert_array_equal(ds.dependent.values, [3, 1, 2])


def test_gap_in_years(write_text):
    text = "year,y,x\n1990,1,1\n1991,2,2\n1993,3,3\n"
    with pytest.raises(NonContiguousYearsError) as exc:
        load_csv(write_text("d.csv", text), "y", ["x"])
    assert exc.value.row == 3
    assert exc.value.year == 1993


@pytest.mark.parametrize("cell", ["NaN", "inf", "", "abc", "1,5"])
def test_bad_cell_names_row_and_column(write_text, cell):
    text = f'year,Q,T,P\n2000,1,2,3\n2001,1,2,"{cell}"\n'
    with pytest.raises(UnparseableCellError) as exc:
        load_csv(write_text("d.csv", text), "Q", ["T", "P"])
    assert exc.value.row == 2
    assert exc.value.column == "P"
    assert "P" in str(exc.value) and "row 2" in str(exc.value)


def test_unselected_bad_cells_are_ignored(write_text):
    text = "year,y,x,junk\n2000,1,2,NaN\n2001,2,3,\n"
    assert load_csv(write_text("d.csv", text), "y", ["x"]).n == 2


def test_missing_column(write_text):
    with pytest.raises(MissingColumnError, match="P"):
        load_csv(write_text("d.csv", FIVE_ROWS), "Q", ["P"])


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_csv(tmp_path / "nope.csv", "y", ["x"])


def test_header_only(write_text):
    with pytest.raises(EmptySelectionError):
        load_csv(write_text("d.csv", "year,y,x\n"), "y", ["x"])


def test_no_year_column_uses_positions(write_text):
    with pytest.warns(UserWarning, match="year"):
        ds = load_csv(write_text("d.csv", "y,x\n1,2\n3,4\n5,7\n"), "y", ["x"])
    np.testing.assert_array_equal(ds.index, [0, 1, 2])


def test_year_column_case_insensitive_and_quotes(write_text):
    text = 'YEAR,"y",x\n"1999","1.5",2\n2000,2.5,"3"\n'
    ds = load_csv(write_text("d.csv", text), "y", ["x"])
    np.testing.assert_array_equal(ds.index, [1999, 2000])
    np.testing.assert_array_equal(ds.dependent.values, [1.5, 2.5])


def test_load_series(write_text):
    s = load_series(write_text("d.csv", FIVE_ROWS), "T")
    assert s.name == "T" and len(s) == 5


def test_dependent_listed_as_independent(write_text):
    with pytest.raises(DuplicateNameError):
        load_csv(write_text("d.csv", FIVE_ROWS), "Q", ["Q"])


def _series(name, start, n, rng):
    return TimeSeries(name, np.arange(start, start + n), rng.normal(size=n))


def test_validate_align_matching_axes(rng):
    series = [_series("Q", 2000, 47, rng), _series("T", 2000, 47, rng)]
    ds = validate_align(series, "Q")
    assert ds.n == 47
    assert ds.dependent.name == "Q"


def test_validate_align_length_mismatch(rng):
    series = [_series("Q", 2000, 47, rng), _series("T", 2000, 46, rng)]
    with pytest.raises(IndexMismatchError, match="T"):
        validate_align(series, "Q")


def test_validate_align_shifted_axis(rng):
    series = [_series("Q", 2000, 10, rng), _series("T", 2001, 10, rng)]
    with pytest.raises(IndexMismatchError):
        validate_align(series, "Q")


def test_validate_align_duplicate_names(rng):
    series = [_series("Q", 2000, 5, rng), _series("T", 2000, 5, rng), _series("T", 2000, 5, rng)]
    with pytest.raises(DuplicateNameError, match="T"):
        validate_align(series, "Q")


def test_timeseries_invariants():
    with pytest.raises(ValueError):
        TimeSeries("x", [1, 2, 4], [0.0, 1.0, 2.0])
    with pytest.raises(ValueError):
        TimeSeries("x", [1, 2], [0.0, np.nan])
    with pytest.raises(ValueError):
        TimeSeries("x", [], [])
    s = TimeSeries("x", [5], [1.0])
    with pytest.raises(ValueError):
        s.values[0] = 2.0


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@settings(max_examples=50, deadline=None)
@given(
    values=st.lists(st.tuples(finite, finite), min_size=1, max_size=40),
    start=st.integers(-3000, 3000),
)
def test_csv_round_trip_bit_exact(tmp_path_factory, values, start):
    n = len(values)
    idx = np.arange(start, start + n)
    ys, xs = zip(*values)
    ds = AlignedDataset(TimeSeries("Y", idx, ys), (TimeSeries("X", idx, xs),))
    path = tmp_path_factory.mktemp("rt") / "d.csv"
    write_csv(ds, path)
    back = load_csv(path, "Y", ["X"])
    np.testing.assert_array_equal(back.index, idx)
    assert back.dependent.values.tobytes() == ds.dependent.values.tobytes()
    assert back.independents[0].values.tobytes() == ds.independents[0].values.tobytes()
