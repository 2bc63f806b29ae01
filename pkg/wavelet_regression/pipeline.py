"""
Multi-time-scale wavelet regression: decompose every variable, fit one equation per
scale, rank the fits.
"""

import math
from typing import Mapping

import numpy as np
from returns.result import Failure, Result, Success, safe

from wavelet_regression.constants import DEFAULT_MAX_LEVEL, EQUATION_DECIMALS, MINUS_SIGN, TIMES_SIGN
from wavelet_regression.data_types import (
    AlignedDataset,
    AnalysisConfig,
    BasisSpec,
    DatasetProvenance,
    DesignMatrix,
    FilterBank,
    FitStatistics,
    ModelRanking,
    MultiScaleReport,
    RankCriterion,
    RegressionModel,
    ScaleReport,
    ScaleStatus,
    SyntheticSpec,
    TimeSeries,
)
from wavelet_regression.exceptions import (
    AllRowsFailed,
    InvalidSpec,
    LevelTooDeep,
    ScaleFitError,
    WaveletRegressionError,
)
from wavelet_regression.regression import expand_basis, ols_fit
from wavelet_regression.stats import fit_statistics
from wavelet_regression.utils import get_logger
from wavelet_regression.wavelet import filter_bank, max_level, mra


def resolve_levels(n: int, fb: FilterBank, levels: int | None) -> tuple[int, int, int]:
    """
    Return (J, j_max, j_clean); an unset J becomes min(5, j_max).

    Logs one boundary-contamination warning when J exceeds j_clean.
    """

    j_max, j_clean = max_level(n, fb.length) if n >= 2 else (0, 0)
    if levels is None:
        levels = min(DEFAULT_MAX_LEVEL, j_max)
    elif levels > j_max:
        raise LevelTooDeep(levels, j_max)
    if levels > j_clean:
        get_logger().warning(
            f"{fb.name.value}: level {levels} exceeds boundary-clean depth j_clean={j_clean} for n={n}; "
            f"scales s{j_clean + 1}..s{levels} are boundary affected"
        )
    return levels, j_max, j_clean


def format_equation(dependent: str, model: RegressionModel, decimals: int = EQUATION_DECIMALS) -> str:
    """Render ``AR = 11.4623·AAT + 0.1397·AP − 39.2254``: signed terms, intercept last."""

    terms = [(f"{TIMES_SIGN}{name}", b) for name, b in zip(model.predictor_names, model.coefficients)]
    terms.append(("", model.intercept))
    parts = []
    for i, (suffix, value) in enumerate(terms):
        value = round(value, decimals)
        negative = value < 0
        text = f"{abs(value):.{decimals}f}{suffix}"
        if i == 0:
            parts.append(f"{MINUS_SIGN}{text}" if negative else text)
        else:
            parts.append(f"{MINUS_SIGN if negative else '+'} {text}")
    return f"{dependent} = " + " ".join(parts)


def _fit(
    y: np.ndarray, columns: Mapping[str, np.ndarray], basis: BasisSpec, config: AnalysisConfig
) -> tuple[RegressionModel, FitStatistics]:
    design = DesignMatrix.from_mapping(dict(columns))
    if not basis.is_empty:
        design = expand_basis(design, basis)
    model = ols_fit(design, y)
    statistics = fit_statistics(
        y,
        model.fitted,
        design.m,
        parameter_count=config.parameter_count,
        aic_formula=config.aic_formula,
    )
    return model, statistics


def _improves(candidate: FitStatistics, current: FitStatistics, criterion: RankCriterion) -> bool:
    if candidate.exact_fit:
        return True
    return candidate.criterion(criterion) < current.criterion(criterion)


@safe(exceptions=(WaveletRegressionError,))
def _fit_scale(
    scale: int,
    dependent: str,
    y: np.ndarray,
    columns: Mapping[str, np.ndarray],
    config: AnalysisConfig,
    j_clean: int,
) -> ScaleReport:
    logger = get_logger()
    warnings = []
    basis = config.basis
    model, statistics = _fit(y, columns, basis, config)

    if config.nonlinear_fallback and statistics.p is not None and statistics.p > config.fallback_alpha:
        expanded = basis.merge(BasisSpec(squares=tuple(columns)))
        try:
            candidate = _fit(y, columns, expanded, config)
        except WaveletRegressionError as e:
            logger.info(f"s{scale}: nonlinear refit skipped ({e})")
        else:
            if _improves(candidate[1], statistics, config.rank_by):
                model, statistics = candidate
                basis = expanded
                warnings.append(
                    f"linear fit not significant at alpha={config.fallback_alpha}; "
                    f"adopted nonlinear basis {basis}"
                )
                logger.info(f"s{scale}: {warnings[-1]}")

    if scale > j_clean:
        warnings.append(f"level {scale} exceeds boundary-clean depth j_clean={j_clean}")
    if statistics.small_sample and statistics.aicc is not None:
        logger.info(f"s{scale}: n/k = {statistics.n / statistics.k:.1f} <= 40, AICc is the preferred criterion")

    return ScaleReport(
        scale=scale,
        status=ScaleStatus.EXACT_FIT if statistics.exact_fit else ScaleStatus.OK,
        equation=format_equation(dependent, model),
        model=model,
        statistics=statistics,
        basis=basis.derived_names,
        warnings=tuple(warnings),
    )


def _failed_row(scale: int, error: Exception) -> ScaleReport:
    scale_error = ScaleFitError(scale, str(error))
    scale_error.__cause__ = error
    get_logger().warning(str(scale_error))
    return ScaleReport(scale=scale, status=ScaleStatus.FAILED, error=str(scale_error))


def _rank_rows(rows: tuple[ScaleReport, ...], criterion: RankCriterion) -> ModelRanking:
    scored, exact, failed = [], [], []
    for row in rows:
        if row.status is ScaleStatus.FAILED:
            failed.append(row.scale)
        elif row.status is ScaleStatus.EXACT_FIT:
            exact.append(row.scale)
        else:
            scored.append((row.statistics.criterion(criterion), row.scale))
    return ModelRanking(
        criterion=criterion,
        ranked=tuple(scale for _, scale in sorted(scored)),
        exact_fit=tuple(exact),
        failed=tuple(failed),
    )


def rank_models(report: MultiScaleReport, criterion: RankCriterion | None = None) -> ModelRanking:
    """
    Order the scales of a report from best to worst fit.

    Ranked rows are sorted ascending by the criterion (AIC unless configured otherwise),
    ties going to the smaller scale; exact-fit and failed rows follow, unranked.
    """

    if not report.succeeded:
        raise AllRowsFailed("No time scale produced a fit; nothing to rank")
    return _rank_rows(report.rows, RankCriterion(criterion or report.config.rank_by))


def _provenance(data: AlignedDataset) -> DatasetProvenance:
    return DatasetProvenance(
        path=data.source,
        dependent=data.dependent.name,
        independents=data.independent_names,
        n=data.n,
        first_year=int(data.index[0]),
        last_year=int(data.index[-1]),
    )


def analyze_multiscale(data: AlignedDataset, config: AnalysisConfig | None = None) -> MultiScaleReport:
    """
    Fit one wavelet regression equation per time scale.

    Row s0 regresses the raw dependent on the raw independents; row s_j regresses the
    dependent's approximation S_j on every independent's S_j. A failed scale is recorded
    as a failed row and leaves the other scales untouched.
    """

    logger = get_logger()
    config = config or AnalysisConfig()
    fb = filter_bank(config.wavelet)
    levels, j_max, j_clean = resolve_levels(data.n, fb, config.levels)
    config = config.model_copy(update={"levels": levels})
    logger.info(
        f"Analysing {data.dependent.name} ~ {', '.join(data.independent_names)} "
        f"(n={data.n}, {fb.name.value}, J={levels}, {config.boundary.value})"
    )

    decompositions = {}
    if levels >= 1:
        decompositions = {s.name: mra(s.values, fb, levels, config.boundary, name=s.name) for s in data.series}

    def at_scale(series: TimeSeries, j: int) -> np.ndarray:
        return series.values if j == 0 else decompositions[series.name].approximation(j)

    rows = []
    for j in range(levels + 1):
        columns = {s.name: at_scale(s, j) for s in data.independents}
        result: Result[ScaleReport, WaveletRegressionError] = _fit_scale(
            j, data.dependent.name, at_scale(data.dependent, j), columns, config, j_clean
        )
        match result:
            case Success():
                rows.append(result.unwrap())
            case Failure():
                rows.append(_failed_row(j, result.failure()))

    rows = tuple(rows)
    if not any(row.status is not ScaleStatus.FAILED for row in rows):
        logger.error("Every time scale failed")

    return MultiScaleReport(
        rows=rows,
        dataset=_provenance(data),
        config=config,
        ranking=_rank_rows(rows, config.rank_by),
        j_max=j_max,
        j_clean=j_clean,
    )


def _check_spec(spec: SyntheticSpec) -> None:
    if spec.n <= 0:
        raise InvalidSpec(f"n must be positive, got {spec.n}")
    if spec.noise_sd < 0:
        raise InvalidSpec(f"noise_sd must be non-negative, got {spec.noise_sd}")
    if not spec.independents:
        raise InvalidSpec("At least one independent variable is required")
    names = [spec.dependent_name, *(v.name for v in spec.independents)]
    if len(set(names)) != len(names):
        raise InvalidSpec(f"Variable names must be unique, got {names}")
    for variable in spec.independents:
        for component in variable.components:
            if component.amplitude < 0:
                raise InvalidSpec(f"{variable.name}: negative amplitude {component.amplitude}")
            if component.period <= 0:
                raise InvalidSpec(f"{variable.name}: period must be positive, got {component.period}")


def gen_synthetic(spec: SyntheticSpec | None = None, seed: int = 0) -> AlignedDataset:
    """
    Trend-plus-sinusoids dataset with a known linear relation between smooth parts.

    Each predictor is trend·t + sum A·sin(2πt/P + φ) plus white noise; the dependent is
    intercept + sum c_i·smooth_i plus independent white noise. Noise is drawn predictor by
    predictor, dependent last, from one seeded generator.
    """

    spec = spec or SyntheticSpec()
    _check_spec(spec)
    rng = np.random.default_rng(seed)
    t = np.arange(spec.n, dtype=np.float64)
    index = np.arange(spec.start_year, spec.start_year + spec.n)

    y = np.full(spec.n, spec.intercept)
    independents = []
    for variable in spec.independents:
        smooth = spec.trend * t
        for c in variable.components:
            smooth = smooth + c.amplitude * np.sin(2 * math.pi * t / c.period + c.phase)
        values = smooth + spec.noise_sd * rng.standard_normal(spec.n)
        independents.append(TimeSeries(name=variable.name, index=index, values=values))
        y = y + variable.coefficient * smooth
    y = y + spec.noise_sd * rng.standard_normal(spec.n)

    dependent = TimeSeries(name=spec.dependent_name, index=index, values=y)
    return AlignedDataset(dependent=dependent, independents=tuple(independents))
