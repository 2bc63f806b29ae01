"""
Init for the wavelet regression toolkit
"""

from .ingest import load_csv, load_series, to_frame, validate_align, write_csv
from .pipeline import analyze_multiscale, gen_synthetic, rank_models
from .regression import expand_basis, ols_fit, predict
from .stats import aic, aicc, classify_significance, f_pvalue, f_statistic, fit_statistics, regularized_incomplete_beta
from .wavelet import dwt_forward, dwt_inverse, filter_bank, max_level, mra

__all__ = [
    "load_csv",
    "load_series",
    "to_frame",
    "validate_align",
    "write_csv",
    "filter_bank",
    "max_level",
    "dwt_forward",
    "dwt_inverse",
    "mra",
    "ols_fit",
    "predict",
    "expand_basis",
    "fit_statistics",
    "f_statistic",
    "f_pvalue",
    "regularized_incomplete_beta",
    "aic",
    "aicc",
    "classify_significance",
    "analyze_multiscale",
    "rank_models",
    "gen_synthetic",
]
