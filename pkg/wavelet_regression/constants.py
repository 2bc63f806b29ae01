"""
Constants for the wavelet regression toolkit.
"""

from pathlib import Path

PKG_ROOT = Path(__file__).parent

SUPPORTED_WAVELETS = ("haar", "db4", "sym8")
DEFAULT_WAVELET = "sym8"
DEFAULT_MAX_LEVEL = 5

# filter-bank invariant tolerances
FILTER_SUM_TOLERANCE = 1e-12
FILTER_SHIFT_TOLERANCE = 1e-10

# relative to unit-normalised design columns
RANK_TOLERANCE = 1e-10
R2_CLAMP_TOLERANCE = 1e-12

SIGNIFICANCE_LEVELS = (0.001, 0.01, 0.05, 0.1)
SMALL_SAMPLE_RATIO = 40

BETA_MAX_ITERATIONS = 10_000
BETA_TOLERANCE = 1e-15
BETA_TINY = 1e-300

YEAR_COLUMN = "year"
CSV_FLOAT_FORMAT = "%.17g"
EQUATION_DECIMALS = 4
MINUS_SIGN = "−"
TIMES_SIGN = "·"

DEFAULT_FALLBACK_ALPHA = 0.05
