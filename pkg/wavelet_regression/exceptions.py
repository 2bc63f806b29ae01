"""Custom Exception classes."""

from __future__ import annotations

from typing import Sequence


class WaveletRegressionError(Exception):
    """Base class for every error raised by the package."""


# ---------------------------------------------------------------- ingest


class IngestError(WaveletRegressionError):
    """Raised when an input table cannot be turned into an aligned dataset."""


class DataFileNotFound(IngestError, FileNotFoundError):
    """Raised when the input CSV does not exist."""

    def __init__(self, path):
        super().__init__(f"Input file not found: {path}")
        self.path = path


class MissingColumn(IngestError):
    """Raised when a requested column is absent from the header."""

    def __init__(self, name: str, available: Sequence[str] = ()):
        super().__init__(name)
        self.name = name
        self.available = tuple(available)

    def __str__(self):
        return f"Missing column {self.name!r} (available: {', '.join(self.available) or 'none'})"


class UnparseableCell(IngestError):
    """Raised when a selected cell is empty, non-numeric or non-finite."""

    def __init__(self, row: int, column: str, value: str):
        super().__init__(value)
        self.row = row
        self.column = column
        self.value = value

    def __str__(self):
        return f"Unparseable cell at line {self.row}, column {self.column!r}: {self.value!r}"


class NonContiguousYears(IngestError):
    """Raised when the year column does not increase by exactly one per row."""

    def __init__(self, row: int, year: int, expected: int):
        super().__init__(year)
        self.row = row
        self.year = year
        self.expected = expected

    def __str__(self):
        return f"Non-contiguous years at line {self.row}: got {self.year}, expected {self.expected}"


class MalformedRow(IngestError):
    """Raised when a line of the input cannot be split into the header's fields."""

    def __init__(self, path, line: int | None, detail: str):
        super().__init__(detail)
        self.path = path
        self.line = line
        self.detail = detail

    def __str__(self):
        where = f"line {self.line}" if self.line is not None else "unknown line"
        return f"Malformed row in {self.path} at {where}: {self.detail}"


class InvalidEncoding(IngestError):
    """Raised when the input is not valid UTF-8."""

    def __init__(self, path, line: int):
        super().__init__(path)
        self.path = path
        self.line = line

    def __str__(self):
        return f"{self.path} is not valid UTF-8 (first bad byte on line {self.line})"


class EmptySelection(IngestError):
    """Raised when the input has no data rows."""


class IndexMismatch(IngestError):
    """Raised when a series' index axis differs from the dependent's."""

    def __init__(self, name: str):
        super().__init__(f"Index of series {name!r} does not match the dependent series")
        self.name = name


class DuplicateName(IngestError):
    """Raised when two series in a dataset share a name."""

    def __init__(self, name: str):
        super().__init__(f"Duplicate series name {name!r}")
        self.name = name


class InvalidSeries(IngestError):
    """Raised when a time series violates its own invariants."""


# ---------------------------------------------------------------- wavelet


class WaveletError(WaveletRegressionError):
    """Raised by the filter-bank and transform layer."""


class UnknownWavelet(WaveletError):
    def __init__(self, name: str, supported: Sequence[str] = ()):
        super().__init__(f"Unknown wavelet {name!r}; supported: {', '.join(supported)}")
        self.name = name


class InvalidFilterBank(WaveletError):
    """Raised when filter coefficients violate the orthonormality conditions."""


class LevelTooDeep(WaveletError):
    def __init__(self, level: int, j_max: int):
        super().__init__(f"Decomposition level {level} exceeds j_max={j_max} (floor(log2 n))")
        self.level = level
        self.j_max = j_max


class InvalidLevel(WaveletError):
    """Raised for a non-positive decomposition level."""


class EmptySignal(WaveletError):
    """Raised when a transform is requested on an empty signal."""


class BankMismatch(WaveletError):
    """Raised when coefficient bookkeeping does not belong to the given filter bank."""


# ---------------------------------------------------------------- regression


class RegressionError(WaveletRegressionError):
    """Raised when a least-squares fit cannot be produced."""


class RankDeficient(RegressionError):
    def __init__(self, columns: Sequence[str]):
        super().__init__(f"Design matrix is rank deficient; implicated columns: {', '.join(columns)}")
        self.columns = tuple(columns)


class TooFewSamples(RegressionError):
    def __init__(self, n: int, m: int):
        super().__init__(f"{n} samples cannot fit {m} predictors plus intercept with a residual degree of freedom")
        self.n = n
        self.m = m


class SchemaMismatch(RegressionError):
    """Raised when prediction columns differ from the fitted predictors."""


class UnknownColumn(RegressionError):
    def __init__(self, name: str):
        super().__init__(f"Unknown design column {name!r}")
        self.name = name


class DuplicateDerivedColumn(RegressionError):
    def __init__(self, name: str):
        super().__init__(f"Derived column {name!r} already present in the design")
        self.name = name


# ---------------------------------------------------------------- stats


class StatsError(WaveletRegressionError):
    """Raised by the goodness-of-fit diagnostics."""


class DegenerateVariance(RegressionError, StatsError):
    """Raised when the dependent series is constant (TSS = 0)."""


class DegenerateFit(StatsError):
    """Raised when R² = 1 and the F statistic is unbounded."""


class ZeroRSS(StatsError):
    """Raised when AIC is requested for a perfect fit."""


class InsufficientSamples(StatsError):
    def __init__(self, n: int, k: int):
        super().__init__(f"AICc needs n > k + 1, got n={n}, k={k}")
        self.n = n
        self.k = k


class LengthMismatch(StatsError):
    """Raised when observed and fitted sequences differ in length."""


class NonConvergence(StatsError):
    """Raised when a continued fraction exhausts its iteration cap."""


class InconsistentStatistics(StatsError):
    """Raised when R² falls materially outside [0, 1]."""


# ---------------------------------------------------------------- pipeline


class PipelineError(WaveletRegressionError):
    """Raised while orchestrating a multi-scale analysis."""


class ScaleFitError(PipelineError):
    """Raised when the fit at one time scale fails."""

    def __init__(self, scale: int, message: str):
        super().__init__(f"scale s{scale}: {message}")
        self.scale = scale

    @property
    def cause(self) -> Exception | None:
        """Provides access to the original Exception."""
        return self.__cause__


class AllRowsFailed(PipelineError):
    """Raised when no scale of a report produced a fit."""


class InvalidSpec(PipelineError):
    """Raised when a synthetic-data specification is unusable."""
