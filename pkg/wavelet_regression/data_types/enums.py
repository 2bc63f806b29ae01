"""Enums used in the wavelet_regression module."""

from enum import Enum


class WaveletName(str, Enum):
    HAAR = "haar"
    DB4 = "db4"
    SYM8 = "sym8"


class BoundaryMode(str, Enum):
    """Rule for extending a finite signal past its ends."""

    PERIODIC = "periodic"  # wrap-around
    SYMMETRIC = "symmetric"  # half-point reflection

    @property
    def pywt_mode(self) -> str:
        return "periodization" if self is BoundaryMode.PERIODIC else "symmetric"

    def coefficient_length(self, n: int, filter_length: int) -> int:
        """Number of coefficients one analysis step produces from `n` samples."""
        if self is BoundaryMode.PERIODIC:
            return (n + 1) // 2
        return (n + filter_length - 1) // 2


class SignificanceClass(str, Enum):
    """Smallest significance level the F-test p-value reaches."""

    ALPHA_0_001 = "0.001"
    ALPHA_0_01 = "0.01"
    ALPHA_0_05 = "0.05"
    ALPHA_0_1 = "0.1"
    NOT_SIGNIFICANT = "n.s."

    @property
    def alpha(self) -> float | None:
        return None if self is SignificanceClass.NOT_SIGNIFICANT else float(self.value)


class AicFormula(str, Enum):
    STANDARD = "standard"  # 2k + n ln(RSS/n)
    LITERAL = "literal"  # 2k + ln(RSS/n), without the factor n


class ParameterCount(str, Enum):
    """How `k` is counted for the information criteria."""

    COEFFICIENTS = "coefficients"  # intercept + partial regression coefficients
    WITH_VARIANCE = "with_variance"  # ... plus the error variance

    def count(self, m: int) -> int:
        return m + 1 if self is ParameterCount.COEFFICIENTS else m + 2


class RankCriterion(str, Enum):
    AIC = "aic"
    AICC = "aicc"


class ScaleStatus(str, Enum):
    OK = "ok"
    EXACT_FIT = "exact_fit"
    FAILED = "failed"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    MARKDOWN = "markdown"
