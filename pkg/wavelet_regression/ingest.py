"""
Loading, validating and aligning annual time series.
"""

import io
import re
from pathlib import Path
from typing import Sequence

import numpy as np
import pandas as pd

from wavelet_regression.constants import CSV_FLOAT_FORMAT, YEAR_COLUMN
from wavelet_regression.data_types import AlignedDataset, TimeSeries
from wavelet_regression.exceptions import (
    DataFileNotFound,
    DuplicateName,
    EmptySelection,
    InvalidEncoding,
    MalformedRow,
    MissingColumn,
    NonContiguousYears,
    UnparseableCell,
)
from wavelet_regression.utils import atomic_write_text, get_logger

# header is line 1
FIRST_DATA_LINE = 2
PARSER_LINE = re.compile(r"line (\d+)")


def _parse_column(raw: pd.Series, name: str) -> np.ndarray:
    cells = raw.str.strip()
    numeric = pd.to_numeric(cells, errors="coerce").to_numpy(dtype=np.float64)
    bad = np.flatnonzero(~np.isfinite(numeric))
    if bad.size:
        i = int(bad[0])
        raise UnparseableCell(row=i + FIRST_DATA_LINE, column=name, value=raw.iloc[i])
    # correctly rounded conversion, so written files load back bit for bit
    return np.array(cells.tolist(), dtype=np.float64)


def _parse_years(raw: pd.Series, name: str) -> np.ndarray:
    years = _parse_column(raw, name)
    fractional = np.flatnonzero(years != np.round(years))
    if fractional.size:
        i = int(fractional[0])
        raise UnparseableCell(row=i + FIRST_DATA_LINE, column=name, value=raw.iloc[i])
    years = years.astype(np.int64)
    gaps = np.flatnonzero(np.diff(years) != 1)
    if gaps.size:
        i = int(gaps[0]) + 1
        raise NonContiguousYears(row=i + FIRST_DATA_LINE, year=int(years[i]), expected=int(years[i - 1]) + 1)
    return years


def _read_table(path: Path) -> pd.DataFrame:
    """Decode and tokenize the whole file as text cells; structural problems become ingest errors."""

    data = path.read_bytes()
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise InvalidEncoding(path, line=data.count(b"\n", 0, e.start) + 1) from e
    if not text.strip():
        raise EmptySelection(f"{path} is empty: no header row")
    try:
        return pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False, na_filter=False)
    except pd.errors.EmptyDataError as e:
        raise EmptySelection(f"{path} has no header row") from e
    except pd.errors.ParserError as e:
        match = PARSER_LINE.search(str(e))
        raise MalformedRow(path, line=int(match.group(1)) if match else None, detail=str(e)) from e


def _read_columns(path: str | Path, names: Sequence[str]) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    """Read the year axis plus the named columns, in file row order."""

    path = Path(path)
    if not path.is_file():
        raise DataFileNotFound(path)

    df = _read_table(path)
    df.columns = [str(c).strip() for c in df.columns]
    for name in names:
        if name not in df.columns:
            raise MissingColumn(name, available=df.columns)
    if df.empty:
        raise EmptySelection(f"{path} has no data rows")

    year_column = next((c for c in df.columns if c.lower() == YEAR_COLUMN), None)
    if year_column is None:
        get_logger().warning(f"{path.name}: no '{YEAR_COLUMN}' column, using row positions 0..{len(df) - 1} as index")
        index = np.arange(len(df), dtype=np.int64)
    else:
        index = _parse_years(df[year_column], year_column)

    return index, {name: _parse_column(df[name], name) for name in names}


def load_csv(
    path: str | Path,
    dependent_name: str,
    independent_names: Sequence[str],
    units: dict[str, str] | None = None,
) -> AlignedDataset:
    """Load a dependent column and its predictors from a comma-delimited file."""

    units = units or {}
    index, columns = _read_columns(path, [dependent_name, *independent_names])
    dependent = TimeSeries(
        name=dependent_name, index=index, values=columns[dependent_name], units=units.get(dependent_name, "")
    )
    independents = tuple(
        TimeSeries(name=name, index=index, values=columns[name], units=units.get(name, ""))
        for name in independent_names
    )
    return AlignedDataset(dependent=dependent, independents=independents, source=str(path))


def load_series(path: str | Path, column: str) -> TimeSeries:
    index, columns = _read_columns(path, [column])
    return TimeSeries(name=column, index=index, values=columns[column])


def validate_align(series: Sequence[TimeSeries], dependent_name: str) -> AlignedDataset:
    """Assemble programmatically built series into an aligned dataset."""

    if not series:
        raise EmptySelection("No series supplied")
    names = [s.name for s in series]
    for name in names:
        if names.count(name) > 1:
            raise DuplicateName(name)
    if dependent_name not in names:
        raise MissingColumn(dependent_name, available=names)
    dependent = series[names.index(dependent_name)]
    independents = tuple(s for s in series if s.name != dependent_name)
    return AlignedDataset(dependent=dependent, independents=independents)


def to_frame(dataset: AlignedDataset) -> pd.DataFrame:
    """Year-indexed view of a dataset, dependent column first."""

    frame = pd.DataFrame({s.name: s.values for s in dataset.series}, index=pd.Index(dataset.index, name=YEAR_COLUMN))
    return frame


def write_csv(dataset: AlignedDataset, path: str | Path) -> Path:
    """Write a dataset so that `load_csv` reproduces it bit for bit."""

    text = to_frame(dataset).to_csv(float_format=CSV_FLOAT_FORMAT)
    return atomic_write_text(path, text)
