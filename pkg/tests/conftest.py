"""
Conftest for wavelet regression tests
"""

import math

import numpy as np
import pytest

from wavelet_regression.data_types import (
    AlignedDataset,
    AnalysisConfig,
    DatasetProvenance,
    FitStatistics,
    ModelRanking,
    MultiScaleReport,
    RankCriterion,
    RegressionModel,
    ScaleReport,
    ScaleStatus,
    SignificanceClass,
    SyntheticSpec,
    TimeSeries,
)
from wavelet_regression.pipeline import gen_synthetic
from wavelet_regression.utils import get_logger

# bind the handler to the session stderr before any CliRunner swaps the stream
get_logger()

LINEAR_N = 64
LINEAR_INTERCEPT = 5.0
LINEAR_COEFFICIENTS = (2.0, 3.0)


def series(name, values, start_year=1950):
    values = np.asarray(values, dtype=np.float64)
    return TimeSeries(name=name, index=np.arange(start_year, start_year + len(values)), values=values)


def write_table(path, header, rows):
    lines = [",".join(header)] + [",".join(str(cell) for cell in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def linear_dataset():
    """Y = 5 + 2·X1 + 3·X2 exactly."""
    rng = np.random.default_rng(7)
    t = np.arange(LINEAR_N)
    x1 = 3 * np.sin(2 * math.pi * t / 64) + rng.standard_normal(LINEAR_N)
    x2 = 2 * np.cos(2 * math.pi * t / 32) + rng.standard_normal(LINEAR_N)
    y = LINEAR_INTERCEPT + LINEAR_COEFFICIENTS[0] * x1 + LINEAR_COEFFICIENTS[1] * x2
    return AlignedDataset(dependent=series("Y", y), independents=(series("X1", x1), series("X2", x2)))


@pytest.fixture
def synthetic_dataset():
    return gen_synthetic(SyntheticSpec(), seed=42)


@pytest.fixture
def noisy_dataset():
    rng = np.random.default_rng(3)
    n = 47
    x1 = rng.standard_normal(n).cumsum()
    x2 = rng.standard_normal(n)
    y = 1.5 * x1 - 0.5 * x2 + rng.standard_normal(n)
    return AlignedDataset(
        dependent=series("AR", y, start_year=1961),
        independents=(series("AAT", x1, start_year=1961), series("AP", x2, start_year=1961)),
        source="yarkand.csv",
    )


@pytest.fixture
def csv_file(tmp_path, noisy_dataset):
    header = ["year", "AR", "AAT", "AP"]
    rows = [
        (int(year), *(repr(float(s.values[i])) for s in noisy_dataset.series))
        for i, year in enumerate(noisy_dataset.index)
    ]
    return write_table(tmp_path / "data.csv", header, rows)


def make_row(scale, aic=None, status=ScaleStatus.OK):
    """A report row with a prescribed AIC, for ranking tests."""
    if status is ScaleStatus.FAILED:
        return ScaleReport(scale=scale, status=status, error=f"scale s{scale}: failed")
    exact = status is ScaleStatus.EXACT_FIT
    model = RegressionModel(
        intercept=0.0,
        coefficients=(1.0,),
        predictor_names=("X",),
        n=10,
        fitted=np.zeros(10),
        residuals=np.zeros(10),
    )
    statistics = FitStatistics(
        n=10,
        m=1,
        k=2,
        rss=0.0 if exact else 1.0,
        tss=2.0,
        r2=1.0 if exact else 0.5,
        f=None if exact else 8.0,
        p=None if exact else 0.02,
        aic=None if exact else aic,
        aicc=None if exact else aic + 12 / 7,
        significance=None if exact else SignificanceClass.ALPHA_0_05,
    )
    return ScaleReport(scale=scale, status=status, equation="Y = 1.0000·X + 0.0000", model=model, statistics=statistics)


def make_report(rows, criterion=RankCriterion.AIC):
    return MultiScaleReport(
        rows=tuple(rows),
        dataset=DatasetProvenance(path=None, dependent="Y", independents=("X",), n=10, first_year=0, last_year=9),
        config=AnalysisConfig(levels=len(rows) - 1, rank_by=criterion),
        ranking=ModelRanking(criterion=criterion, ranked=()),
        j_max=len(rows) - 1,
        j_clean=len(rows) - 1,
    )
