"""Models used across the wavelet regression toolkit."""

from __future__ import annotations

import math
from typing import Annotated, Any

import numpy as np
from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    field_validator,
    model_validator,
)

from wavelet_regression.constants import (
    DEFAULT_FALLBACK_ALPHA,
    FILTER_SHIFT_TOLERANCE,
    FILTER_SUM_TOLERANCE,
    SMALL_SAMPLE_RATIO,
)
from wavelet_regression.exceptions import (
    DuplicateName,
    IndexMismatch,
    InvalidFilterBank,
    InvalidSeries,
    SchemaMismatch,
)

from .enums import (
    AicFormula,
    BoundaryMode,
    ParameterCount,
    RankCriterion,
    ScaleStatus,
    SignificanceClass,
    WaveletName,
)


def _readonly(dtype):
    def convert(v: Any) -> np.ndarray:
        arr = np.array(v, dtype=dtype, copy=True)
        if arr.ndim != 1:
            raise ValueError(f"Expected a 1-d sequence, got shape {arr.shape}")
        arr.setflags(write=False)
        return arr

    return convert


FloatArray = Annotated[
    np.ndarray,
    BeforeValidator(_readonly(np.float64)),
    PlainSerializer(lambda a: a.tolist(), return_type=list),
]
IntArray = Annotated[
    np.ndarray,
    BeforeValidator(_readonly(np.int64)),
    PlainSerializer(lambda a: a.tolist(), return_type=list),
]


class FrozenModel(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


# ---------------------------------------------------------------- ingest


class TimeSeries(FrozenModel):
    """An ordered sequence of annual observations."""

    name: str
    index: IntArray
    values: FloatArray
    units: str = ""

    @model_validator(mode="after")
    def _check(self) -> TimeSeries:
        if len(self.index) != len(self.values):
            raise InvalidSeries(f"{self.name}: index has {len(self.index)} entries, values {len(self.values)}")
        if len(self.values) < 1:
            raise InvalidSeries(f"{self.name}: empty series")
        if np.any(np.diff(self.index) != 1):
            raise InvalidSeries(f"{self.name}: index must increase by exactly one per observation")
        if not np.all(np.isfinite(self.values)):
            raise InvalidSeries(f"{self.name}: values contain non-finite entries")
        return self

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return self.n


class AlignedDataset(FrozenModel):
    """A dependent series and its predictors on a shared year axis."""

    dependent: TimeSeries
    independents: tuple[TimeSeries, ...]
    source: str | None = None

    @model_validator(mode="after")
    def _check(self) -> AlignedDataset:
        if not self.independents:
            raise InvalidSeries("A dataset needs at least one independent series")
        seen = {self.dependent.name}
        for series in self.independents:
            if series.name in seen:
                raise DuplicateName(series.name)
            seen.add(series.name)
        for series in self.independents:
            if not np.array_equal(series.index, self.dependent.index):
                raise IndexMismatch(series.name)
        return self

    @property
    def n(self) -> int:
        return self.dependent.n

    @property
    def index(self) -> np.ndarray:
        return self.dependent.index

    @property
    def independent_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.independents)

    @property
    def series(self) -> tuple[TimeSeries, ...]:
        return (self.dependent, *self.independents)


# ---------------------------------------------------------------- wavelet


class FilterBank(FrozenModel):
    """
    Orthonormal two-channel filter bank.

    Analysis filters are stored in correlation form: the approximation at output
    index k is sum_i dec_lo[i] * x[2k + i]. Synthesis filters are their time reverses.
    """

    name: WaveletName
    dec_lo: FloatArray
    dec_hi: FloatArray
    rec_lo: FloatArray
    rec_hi: FloatArray
    vanishing_moments: int

    @model_validator(mode="after")
    def _check(self) -> FilterBank:
        h, g = self.dec_lo, self.dec_hi
        length = len(h)
        if length < 2 or length % 2:
            raise InvalidFilterBank(f"{self.name.value}: filter length must be even, got {length}")
        if abs(h.sum() - math.sqrt(2)) > FILTER_SUM_TOLERANCE:
            raise InvalidFilterBank(f"{self.name.value}: low-pass taps do not sum to sqrt(2)")
        if abs(np.dot(h, h) - 1.0) > FILTER_SUM_TOLERANCE:
            raise InvalidFilterBank(f"{self.name.value}: low-pass taps are not unit norm")
        for shift in range(2, length, 2):
            if abs(np.dot(h[:-shift], h[shift:])) > FILTER_SHIFT_TOLERANCE:
                raise InvalidFilterBank(f"{self.name.value}: low-pass not orthogonal to its shift by {shift}")
        signs = (-1.0) ** np.arange(length)
        if not np.allclose(g, signs * h[::-1], rtol=0, atol=FILTER_SUM_TOLERANCE):
            raise InvalidFilterBank(f"{self.name.value}: high-pass is not the quadrature mirror of the low-pass")
        if not (np.array_equal(self.rec_lo, h[::-1]) and np.array_equal(self.rec_hi, g[::-1])):
            raise InvalidFilterBank(f"{self.name.value}: synthesis filters must reverse the analysis filters")
        return self

    @property
    def length(self) -> int:
        return len(self.dec_lo)


class WaveletCoefficients(FrozenModel):
    """Decimated wavelet coefficients with the bookkeeping needed for exact inversion."""

    levels: int = Field(ge=1)
    approx: FloatArray
    # ordered j = J down to 1
    details: tuple[FloatArray, ...]
    original_length: int = Field(ge=1)
    boundary: BoundaryMode
    wavelet: WaveletName
    filter_length: int
    # input length at levels 1..J before any one-sample extension
    level_lengths: tuple[int, ...]
    padded: tuple[bool, ...]

    @model_validator(mode="after")
    def _check(self) -> WaveletCoefficients:
        if len(self.details) != self.levels:
            raise ValueError(f"Expected {self.levels} detail bands, got {len(self.details)}")
        if len(self.level_lengths) != self.levels or len(self.padded) != self.levels:
            raise ValueError("Level bookkeeping does not cover every level")
        if self.level_lengths[0] != self.original_length:
            raise ValueError("First level length must equal the original signal length")
        length = self.original_length
        for j in range(1, self.levels + 1):
            if self.level_lengths[j - 1] != length or self.padded[j - 1] != bool(length % 2):
                raise ValueError(f"Inconsistent bookkeeping at level {j}")
            length = self.boundary.coefficient_length(length + length % 2, self.filter_length)
            if len(self.details[self.levels - j]) != length:
                raise ValueError(f"Detail band at level {j} has the wrong length")
        if len(self.approx) != length:
            raise ValueError("Approximation band has the wrong length")
        return self

    def detail(self, j: int) -> np.ndarray:
        return self.details[self.levels - j]


class MRADecomposition(FrozenModel):
    """Reconstructed approximations S_1..S_J and details D_1..D_J at the signal's length."""

    signal: FloatArray
    approximations: tuple[FloatArray, ...]
    details: tuple[FloatArray, ...]
    levels: int = Field(ge=1)
    source_name: str = ""
    wavelet: WaveletName
    boundary: BoundaryMode

    @model_validator(mode="after")
    def _check(self) -> MRADecomposition:
        n = len(self.signal)
        if len(self.approximations) != self.levels or len(self.details) != self.levels:
            raise ValueError("Expected one approximation and one detail per level")
        if any(len(c) != n for c in (*self.approximations, *self.details)):
            raise ValueError("Every component must have the signal's length")
        total = self.approximations[-1] + np.sum(self.details, axis=0)
        if np.max(np.abs(total - self.signal)) > 1e-8 * max(1.0, float(np.max(np.abs(self.signal)))):
            raise ValueError("Components do not add up to the signal")
        return self

    @property
    def n(self) -> int:
        return len(self.signal)

    def approximation(self, j: int) -> np.ndarray:
        """S_j; S_0 is the signal itself."""
        return self.signal if j == 0 else self.approximations[j - 1]

    def detail(self, j: int) -> np.ndarray:
        return self.details[j - 1]


# ---------------------------------------------------------------- regression


class BasisSpec(FrozenModel):
    """Squared terms and pairwise products appended to a design."""

    squares: tuple[str, ...] = ()
    products: tuple[tuple[str, str], ...] = ()

    @classmethod
    def parse(cls, text: str) -> BasisSpec:
        """Parse ``"AAT^2,AAT*AP"`` into a basis specification."""
        squares, products = [], []
        for token in (t.strip() for t in text.split(",")):
            if not token:
                continue
            if token.endswith("^2") and len(token) > 2:
                squares.append(token[:-2])
            elif token.count("*") == 1 and all(token.split("*")):
                left, right = token.split("*")
                products.append((left.strip(), right.strip()))
            else:
                raise ValueError(f"Cannot parse basis term {token!r}; use NAME^2 or NAME*OTHER")
        return cls(squares=tuple(squares), products=tuple(products))

    @property
    def derived_names(self) -> tuple[str, ...]:
        return tuple(f"{s}^2" for s in self.squares) + tuple(f"{a}*{b}" for a, b in self.products)

    @property
    def is_empty(self) -> bool:
        return not (self.squares or self.products)

    def merge(self, other: BasisSpec) -> BasisSpec:
        squares = self.squares + tuple(s for s in other.squares if s not in self.squares)
        products = self.products + tuple(p for p in other.products if p not in self.products)
        return BasisSpec(squares=squares, products=products)

    def __str__(self) -> str:
        return ",".join(self.derived_names)


class DesignMatrix(FrozenModel):
    """Named predictor columns; the intercept column is always prepended when fitting."""

    columns: tuple[tuple[str, FloatArray], ...]

    @model_validator(mode="after")
    def _check(self) -> DesignMatrix:
        if not self.columns:
            raise SchemaMismatch("A design needs at least one column")
        names = self.names
        if len(set(names)) != len(names):
            raise SchemaMismatch(f"Duplicate design column names: {names}")
        if len({len(v) for _, v in self.columns}) != 1:
            raise SchemaMismatch("Design columns differ in length")
        return self

    @classmethod
    def from_mapping(cls, columns: dict[str, Any]) -> DesignMatrix:
        return cls(columns=tuple(columns.items()))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.columns)

    @property
    def n(self) -> int:
        return len(self.columns[0][1])

    @property
    def m(self) -> int:
        return len(self.columns)

    @property
    def includes_intercept(self) -> bool:
        return True

    @property
    def matrix(self) -> np.ndarray:
        return np.column_stack([values for _, values in self.columns])

    def column(self, name: str) -> np.ndarray:
        return dict(self.columns)[name]


class RegressionModel(FrozenModel):
    """One fitted wavelet regression equation."""

    intercept: float
    coefficients: tuple[float, ...]
    predictor_names: tuple[str, ...]
    n: int
    fitted: FloatArray
    residuals: FloatArray

    @property
    def m(self) -> int:
        return len(self.coefficients)

    @property
    def coefficient_map(self) -> dict[str, float]:
        return dict(zip(self.predictor_names, self.coefficients))

    @property
    def rss(self) -> float:
        return float(np.dot(self.residuals, self.residuals))


# ---------------------------------------------------------------- stats


class FitStatistics(FrozenModel):
    """Goodness-of-fit and model-selection diagnostics of one fit.

    f, p, aic and aicc are None for an exact fit (R² = 1); aicc is also None when n <= k + 1.
    """

    n: int
    m: int
    k: int
    rss: float = Field(ge=0)
    tss: float = Field(gt=0)
    r2: float = Field(ge=0, le=1)
    f: float | None
    p: float | None
    aic: float | None
    aicc: float | None
    significance: SignificanceClass | None
    aic_formula: AicFormula = AicFormula.STANDARD

    @property
    def exact_fit(self) -> bool:
        return self.r2 == 1.0

    @property
    def small_sample(self) -> bool:
        return self.n / self.k <= SMALL_SAMPLE_RATIO

    @property
    def preferred_criterion(self) -> RankCriterion:
        return RankCriterion.AICC if self.small_sample and self.aicc is not None else RankCriterion.AIC

    def criterion(self, criterion: RankCriterion) -> float | None:
        if criterion is RankCriterion.AICC and self.aicc is not None:
            return self.aicc
        return self.aic


# ---------------------------------------------------------------- pipeline


class AnalysisConfig(FrozenModel):
    """Settings of one multi-scale analysis; `levels=None` resolves to min(5, j_max)."""

    wavelet: WaveletName = WaveletName.SYM8
    levels: int | None = Field(default=None, ge=0)
    boundary: BoundaryMode = BoundaryMode.PERIODIC
    basis: BasisSpec = BasisSpec()
    parameter_count: ParameterCount = ParameterCount.COEFFICIENTS
    aic_formula: AicFormula = AicFormula.STANDARD
    rank_by: RankCriterion = RankCriterion.AIC
    nonlinear_fallback: bool = False
    fallback_alpha: float = Field(default=DEFAULT_FALLBACK_ALPHA, gt=0, lt=1)

    @field_validator("basis", mode="before")
    @classmethod
    def _parse_basis(cls, v: Any) -> Any:
        return BasisSpec.parse(v) if isinstance(v, str) else v

    def echo(self) -> dict[str, Any]:
        """Resolved settings as plain values."""
        data = self.model_dump(mode="json")
        data["basis"] = str(self.basis)
        return data


class ModelRanking(FrozenModel):
    criterion: RankCriterion
    ranked: tuple[int, ...]
    exact_fit: tuple[int, ...] = ()
    failed: tuple[int, ...] = ()

    @property
    def order(self) -> tuple[int, ...]:
        return self.ranked + self.exact_fit + self.failed


class ScaleReport(FrozenModel):
    """One row of the multi-scale table."""

    scale: int = Field(ge=0)
    status: ScaleStatus
    equation: str | None = None
    model: RegressionModel | None = None
    statistics: FitStatistics | None = None
    basis: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()
    error: str | None = None

    @model_validator(mode="after")
    def _check(self) -> ScaleReport:
        if self.status is ScaleStatus.FAILED:
            if self.error is None:
                raise ValueError("A failed row needs an error message")
        elif self.model is None or self.statistics is None:
            raise ValueError("A fitted row needs a model and statistics")
        return self

    @property
    def label(self) -> str:
        return f"s{self.scale}"

    @property
    def time_scale(self) -> str:
        return f"{2**self.scale}-year scale"


class DatasetProvenance(FrozenModel):
    path: str | None
    dependent: str
    independents: tuple[str, ...]
    n: int
    first_year: int
    last_year: int


class MultiScaleReport(FrozenModel):
    rows: tuple[ScaleReport, ...]
    dataset: DatasetProvenance
    config: AnalysisConfig
    ranking: ModelRanking
    j_max: int
    j_clean: int

    @model_validator(mode="after")
    def _check(self) -> MultiScaleReport:
        if self.config.levels is None:
            raise ValueError("Report config must carry the resolved number of levels")
        if len(self.rows) != self.config.levels + 1:
            raise ValueError(f"Expected {self.config.levels + 1} rows, got {len(self.rows)}")
        if any(row.scale != j for j, row in enumerate(self.rows)):
            raise ValueError("Rows must be ordered s0 first")
        return self

    @property
    def succeeded(self) -> tuple[ScaleReport, ...]:
        return tuple(row for row in self.rows if row.status is not ScaleStatus.FAILED)


class SinusoidComponent(FrozenModel):
    period: float
    amplitude: float
    phase: float = 0.0


class SyntheticVariable(FrozenModel):
    name: str
    coefficient: float
    components: tuple[SinusoidComponent, ...] = ()


def _default_variables() -> tuple[SyntheticVariable, ...]:
    return (
        SyntheticVariable(
            name="X1",
            coefficient=0.3,
            components=(SinusoidComponent(period=4, amplitude=1.0), SinusoidComponent(period=16, amplitude=1.0)),
        ),
        SyntheticVariable(
            name="X2",
            coefficient=0.2,
            components=(SinusoidComponent(period=16, amplitude=1.5, phase=math.pi / 2),),
        ),
    )


class SyntheticSpec(FrozenModel):
    """Trend-plus-sinusoids generator whose dependent is linear in the predictors' smooth parts."""

    n: int = 128
    start_year: int = 1950
    trend: float = 0.05
    noise_sd: float = 0.5
    intercept: float = 1.0
    dependent_name: str = "Y"
    independents: tuple[SyntheticVariable, ...] = Field(default_factory=_default_variables)
