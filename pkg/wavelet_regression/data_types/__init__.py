"""Enums and Models used in the wavelet_regression module"""

from .enums import (
    AicFormula,
    BoundaryMode,
    OutputFormat,
    ParameterCount,
    RankCriterion,
    ScaleStatus,
    SignificanceClass,
    WaveletName,
)
from .models import (
    AlignedDataset,
    AnalysisConfig,
    BasisSpec,
    DatasetProvenance,
    DesignMatrix,
    FilterBank,
    FitStatistics,
    ModelRanking,
    MRADecomposition,
    MultiScaleReport,
    RegressionModel,
    ScaleReport,
    SinusoidComponent,
    SyntheticSpec,
    SyntheticVariable,
    TimeSeries,
    WaveletCoefficients,
)

__all__ = [
    "AicFormula",
    "BoundaryMode",
    "OutputFormat",
    "ParameterCount",
    "RankCriterion",
    "ScaleStatus",
    "SignificanceClass",
    "WaveletName",
    "AlignedDataset",
    "AnalysisConfig",
    "BasisSpec",
    "DatasetProvenance",
    "DesignMatrix",
    "FilterBank",
    "FitStatistics",
    "ModelRanking",
    "MRADecomposition",
    "MultiScaleReport",
    "RegressionModel",
    "ScaleReport",
    "SinusoidComponent",
    "SyntheticSpec",
    "SyntheticVariable",
    "TimeSeries",
    "WaveletCoefficients",
]
