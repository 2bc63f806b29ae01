"""
Least-squares fitting of wavelet regression equations.
"""

import numpy as np
from scipy.linalg import solve_triangular

from wavelet_regression.constants import RANK_TOLERANCE
from wavelet_regression.data_types import BasisSpec, DesignMatrix, RegressionModel
from wavelet_regression.exceptions import (
    DegenerateVariance,
    DuplicateDerivedColumn,
    RankDeficient,
    SchemaMismatch,
    TooFewSamples,
    UnknownColumn,
)

INTERCEPT = "intercept"


def _with_intercept(design: DesignMatrix) -> tuple[np.ndarray, tuple[str, ...]]:
    x = np.column_stack([np.ones(design.n), design.matrix])
    return x, (INTERCEPT, *design.names)


def _implicated_columns(scaled: np.ndarray, names: tuple[str, ...]) -> list[str]:
    """Columns carrying weight in the numerical null space of the scaled design."""

    _, singular, vt = np.linalg.svd(scaled, full_matrices=False)
    null = vt[singular < RANK_TOLERANCE * singular[0]]
    if not len(null):
        null = vt[-1:]
    weight = np.abs(null).max(axis=0)
    return [name for name, w in zip(names, weight) if w > np.sqrt(RANK_TOLERANCE)]


def ols_fit(design: DesignMatrix, y) -> RegressionModel:
    """
    Fit y = b0 + sum_i b_i x_i by least squares.

    Columns are scaled to unit norm and factorised with QR; a diagonal entry of R below
    RANK_TOLERANCE of the largest marks the design as rank deficient.
    """

    y = np.asarray(y, dtype=np.float64)
    if len(y) != design.n:
        raise SchemaMismatch(f"Design has {design.n} rows, response has {len(y)}")
    if design.n < design.m + 2:
        raise TooFewSamples(design.n, design.m)
    if np.all(y == y[0]):
        raise DegenerateVariance("Response is constant; total sum of squares is zero")

    x, names = _with_intercept(design)
    norms = np.linalg.norm(x, axis=0)
    if np.any(norms == 0):
        raise RankDeficient([name for name, norm in zip(names, norms) if norm == 0])
    scaled = x / norms

    q, r = np.linalg.qr(scaled)
    diagonal = np.abs(np.diag(r))
    if diagonal.min() < RANK_TOLERANCE * diagonal.max():
        raise RankDeficient(_implicated_columns(scaled, names))

    beta = solve_triangular(r, q.T @ y) / norms
    fitted = x @ beta
    return RegressionModel(
        intercept=float(beta[0]),
        coefficients=tuple(float(b) for b in beta[1:]),
        predictor_names=design.names,
        n=design.n,
        fitted=fitted,
        residuals=y - fitted,
    )


def predict(model: RegressionModel, design: DesignMatrix) -> np.ndarray:
    """Evaluate a fitted equation on a design with the same predictors, in the same order."""

    if design.names != model.predictor_names:
        raise SchemaMismatch(f"Model expects columns {model.predictor_names}, got {design.names}")
    return model.intercept + design.matrix @ np.asarray(model.coefficients)


def expand_basis(design: DesignMatrix, spec: BasisSpec) -> DesignMatrix:
    """Append squared and product columns so a nonlinear equation is fitted linearly."""

    columns = dict(design.columns)
    for name in (*spec.squares, *(n for pair in spec.products for n in pair)):
        if name not in columns:
            raise UnknownColumn(name)

    derived = [(f"{s}^2", columns[s] * columns[s]) for s in spec.squares]
    derived += [(f"{a}*{b}", columns[a] * columns[b]) for a, b in spec.products]
    for name, values in derived:
        if name in columns:
            raise DuplicateDerivedColumn(name)
        columns[name] = values
    return DesignMatrix.from_mapping(columns)
