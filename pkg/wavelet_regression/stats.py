"""
Goodness-of-fit and model-selection diagnostics: R², the F-test, AIC and AICc.
"""

import math

import numpy as np
from scipy.special import gammaln

from wavelet_regression.constants import (
    BETA_MAX_ITERATIONS,
    BETA_TINY,
    BETA_TOLERANCE,
    R2_CLAMP_TOLERANCE,
    SIGNIFICANCE_LEVELS,
)
from wavelet_regression.data_types import AicFormula, FitStatistics, ParameterCount, SignificanceClass
from wavelet_regression.exceptions import (
    DegenerateFit,
    DegenerateVariance,
    InconsistentStatistics,
    InsufficientSamples,
    LengthMismatch,
    NonConvergence,
    ZeroRSS,
)

_CLASSES = (
    SignificanceClass.ALPHA_0_001,
    SignificanceClass.ALPHA_0_01,
    SignificanceClass.ALPHA_0_05,
    SignificanceClass.ALPHA_0_1,
)


def _tiny(v: float) -> float:
    return BETA_TINY if abs(v) < BETA_TINY else v


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    """Continued fraction of the incomplete beta function, evaluated with the modified Lentz method."""

    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 / _tiny(1.0 - qab * x / qap)
    h = d
    for m in range(1, BETA_MAX_ITERATIONS + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 / _tiny(1.0 + aa * d)
        c = _tiny(1.0 + aa / c)
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 / _tiny(1.0 + aa * d)
        c = _tiny(1.0 + aa / c)
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < BETA_TOLERANCE:
            return h
    raise NonConvergence(f"Incomplete beta continued fraction did not converge for a={a}, b={b}, x={x}")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b), using the symmetry I_x(a, b) = 1 - I_{1-x}(b, a) where the fraction converges faster."""

    if a <= 0 or b <= 0:
        raise ValueError(f"Shape parameters must be positive, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return float(x)

    log_front = gammaln(a + b) - gammaln(a) - gammaln(b) + a * math.log(x) + b * math.log1p(-x)
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def f_statistic(r2: float, n: int, m: int) -> float:
    """Whole-equation F statistic with (m, n - m - 1) degrees of freedom."""

    if m < 1 or n <= m + 1:
        raise ValueError(f"F statistic needs n > m + 1 >= 2, got n={n}, m={m}")
    if not 0.0 <= r2 <= 1.0:
        raise ValueError(f"R² must lie in [0, 1], got {r2}")
    if r2 == 1.0:
        raise DegenerateFit("R² = 1: the F statistic is unbounded (exact fit)")
    return (r2 / m) / ((1.0 - r2) / (n - m - 1))


def f_pvalue(f: float, d1: int, d2: int) -> float:
    """Upper-tail probability of the F(d1, d2) distribution."""

    if f < 0 or d1 < 1 or d2 < 1:
        raise ValueError(f"f_pvalue needs f >= 0 and d1, d2 >= 1, got f={f}, d1={d1}, d2={d2}")
    if math.isinf(f):
        return 0.0
    return regularized_incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f))


def aic(rss: float, n: int, k: int, formula: AicFormula = AicFormula.STANDARD) -> float:
    """
    Akaike information criterion of a least-squares fit.

    The standard form is 2k + n ln(RSS/n); AicFormula.LITERAL drops the factor n.
    """

    if rss <= 0:
        raise ZeroRSS("AIC is undefined for a perfect fit (RSS = 0)")
    if n < 1 or k < 1:
        raise ValueError(f"AIC needs n >= 1 and k >= 1, got n={n}, k={k}")
    scale = n if formula is AicFormula.STANDARD else 1
    return 2 * k + scale * math.log(rss / n)


def aicc(aic_value: float, n: int, k: int) -> float:
    """Second-order AIC: AIC + 2k(k+1)/(n-k-1)."""

    if n <= k + 1:
        raise InsufficientSamples(n, k)
    return aic_value + 2 * k * (k + 1) / (n - k - 1)


def classify_significance(p: float) -> SignificanceClass:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p-value must lie in [0, 1], got {p}")
    for alpha, cls in zip(SIGNIFICANCE_LEVELS, _CLASSES):
        if p <= alpha:
            return cls
    return SignificanceClass.NOT_SIGNIFICANT


def _clamp_r2(r2: float) -> float:
    if r2 < 0.0:
        if r2 < -R2_CLAMP_TOLERANCE:
            raise InconsistentStatistics(f"R² = {r2} is negative although an intercept was fitted")
        return 0.0
    return min(r2, 1.0)


def fit_statistics(
    y,
    y_hat,
    m: int,
    parameter_count: ParameterCount = ParameterCount.COEFFICIENTS,
    aic_formula: AicFormula = AicFormula.STANDARD,
) -> FitStatistics:
    """Diagnostics of fitted values `y_hat` from an equation with `m` predictors plus intercept."""

    y = np.asarray(y, dtype=np.float64)
    y_hat = np.asarray(y_hat, dtype=np.float64)
    if y.shape != y_hat.shape:
        raise LengthMismatch(f"Observed has {len(y)} values, fitted has {len(y_hat)}")
    n = len(y)
    if n < m + 2:
        raise ValueError(f"{n} samples leave no residual degree of freedom for {m} predictors")

    residuals = y - y_hat
    deviations = y - y.mean()
    rss = float(np.dot(residuals, residuals))
    tss = float(np.dot(deviations, deviations))
    if tss == 0.0:
        raise DegenerateVariance("Observed series is constant; R² is undefined")

    r2 = _clamp_r2(1.0 - rss / tss)
    k = parameter_count.count(m)
    f = p = aic_value = aicc_value = significance = None
    if r2 < 1.0:
        f = f_statistic(r2, n, m)
        p = f_pvalue(f, m, n - m - 1)
        significance = classify_significance(p)
        aic_value = aic(rss, n, k, aic_formula)
        if n > k + 1:
            aicc_value = aicc(aic_value, n, k)

    return FitStatistics(
        n=n,
        m=m,
        k=k,
        rss=rss,
        tss=tss,
        r2=r2,
        f=f,
        p=p,
        aic=aic_value,
        aicc=aicc_value,
        significance=significance,
        aic_formula=aic_formula,
    )
