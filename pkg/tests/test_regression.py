"""
Tests for least-squares fitting and basis expansion.
"""

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from wavelet_regression.data_types import BasisSpec, DesignMatrix
from wavelet_regression.exceptions import (
    DegenerateVariance,
    DuplicateDerivedColumn,
    RankDeficient,
    SchemaMismatch,
    TooFewSamples,
    UnknownColumn,
)
from wavelet_regression.regression import expand_basis, ols_fit, predict


def design(**columns):
    return DesignMatrix.from_mapping(columns)


def normal_equations(x, y):
    a = np.column_stack([np.ones(len(y)), x])
    return np.linalg.solve(a.T @ a, a.T @ y)


def test_recovers_exact_linear_relation():
    rng = np.random.default_rng(1)
    x1, x2 = rng.standard_normal(30), rng.standard_normal(30)
    model = ols_fit(design(X1=x1, X2=x2), 5 + 2 * x1 + 3 * x2)
    assert model.intercept == pytest.approx(5, abs=1e-10)
    assert model.coefficients == pytest.approx((2, 3), abs=1e-10)
    assert model.predictor_names == ("X1", "X2")
    assert model.coefficient_map == pytest.approx({"X1": 2, "X2": 3}, abs=1e-10)
    assert model.rss < 1e-20


def test_residuals_are_orthogonal_to_columns():
    rng = np.random.default_rng(2)
    x = rng.standard_normal((40, 3))
    y = rng.standard_normal(40)
    model = ols_fit(design(A=x[:, 0], B=x[:, 1], C=x[:, 2]), y)
    assert abs(model.residuals.sum()) < 1e-10
    assert np.max(np.abs(x.T @ model.residuals)) < 1e-10
    assert np.allclose(model.fitted + model.residuals, y)


@seed(1)
@settings(max_examples=500, deadline=None)
@given(
    n_extra=st.integers(min_value=3, max_value=45),
    m=st.integers(min_value=1, max_value=4),
    instance=st.integers(min_value=0, max_value=2**32 - 1),
)
def test_matches_normal_equations(n_extra, m, instance):
    n = min(m + n_extra, 50)
    rng = np.random.default_rng(instance)
    x = rng.standard_normal((n, m))
    y = x @ rng.uniform(-5, 5, m) + rng.uniform(-10, 10) + rng.standard_normal(n)
    model = ols_fit(DesignMatrix.from_mapping({f"x{i}": x[:, i] for i in range(m)}), y)
    expected = normal_equations(x, y)
    got = np.array([model.intercept, *model.coefficients])
    assert np.allclose(got, expected, rtol=1e-8, atol=1e-10 * np.max(np.abs(expected)))


@seed(2)
@settings(max_examples=50, deadline=None)
@given(
    instance=st.integers(min_value=0, max_value=2**32 - 1),
    factor=st.floats(min_value=0.1, max_value=5),
    negate=st.booleans(),
)
def test_exact_collinearity_is_rank_deficient(instance, factor, negate):
    rng = np.random.default_rng(instance)
    x = rng.standard_normal(20)
    factor = -factor if negate else factor
    with pytest.raises(RankDeficient) as exc:
        ols_fit(design(A=x, B=factor * x, C=rng.standard_normal(20)), rng.standard_normal(20))
    assert {"A", "B"} <= set(exc.value.columns)


def test_constant_column_collides_with_intercept():
    rng = np.random.default_rng(3)
    with pytest.raises(RankDeficient) as exc:
        ols_fit(design(A=rng.standard_normal(10), K=np.full(10, 2.0)), rng.standard_normal(10))
    assert "K" in exc.value.columns
    assert "intercept" in exc.value.columns


def test_zero_column():
    with pytest.raises(RankDeficient) as exc:
        ols_fit(design(A=np.arange(10.0), Z=np.zeros(10)), np.arange(10.0) ** 2)
    assert exc.value.columns == ("Z",)


def test_too_few_samples():
    with pytest.raises(TooFewSamples):
        ols_fit(design(A=[1.0, 2.0, 3.0], B=[2.0, 1.0, 0.5]), [1.0, 2.0, 4.0])


def test_constant_response():
    with pytest.raises(DegenerateVariance):
        ols_fit(design(A=np.arange(10.0)), np.ones(10))


def test_response_length_mismatch():
    with pytest.raises(SchemaMismatch):
        ols_fit(design(A=np.arange(10.0)), np.arange(9.0))


def test_design_rejects_ragged_columns():
    with pytest.raises(SchemaMismatch):
        design(A=np.arange(10.0), B=np.arange(9.0))


def test_predict():
    x = np.linspace(0, 1, 12)
    model = ols_fit(design(X=x), 1 + 4 * x)
    assert np.allclose(predict(model, design(X=np.array([2.0, 3.0]))), [9.0, 13.0])


def test_predict_schema_mismatch():
    x = np.linspace(0, 1, 12)
    model = ols_fit(design(X=x, Z=x**3), 1 + 4 * x)
    with pytest.raises(SchemaMismatch):
        predict(model, design(Z=x**3, X=x))


def test_expand_basis():
    a, b = np.arange(1.0, 6.0), np.linspace(-1, 1, 5)
    expanded = expand_basis(design(A=a, B=b), BasisSpec.parse("A^2, A*B"))
    assert expanded.names == ("A", "B", "A^2", "A*B")
    assert np.array_equal(expanded.column("A^2"), a * a)
    assert np.array_equal(expanded.column("A*B"), a * b)


def test_expanded_fit_recovers_quadratic():
    x = np.linspace(-2, 2, 25)
    model = ols_fit(expand_basis(design(X=x), BasisSpec(squares=("X",))), 1 - x + 0.5 * x**2)
    assert model.coefficients == pytest.approx((-1, 0.5), abs=1e-10)


def test_expand_basis_unknown_column():
    with pytest.raises(UnknownColumn):
        expand_basis(design(A=np.arange(4.0)), BasisSpec(squares=("B",)))


def test_expand_basis_duplicate_column():
    with pytest.raises(DuplicateDerivedColumn):
        expand_basis(design(A=np.arange(4.0), **{"A^2": np.arange(4.0) ** 2}), BasisSpec(squares=("A",)))


@pytest.mark.parametrize("text", ["A^3", "A*B*C", "^2", "*B"])
def test_basis_parse_rejects(text):
    with pytest.raises(ValueError):
        BasisSpec.parse(text)


@pytest.mark.parametrize("c", [1e-3, -2.5, 1e6])
def test_scaling_a_column_rescales_its_coefficient(c):
    rng = np.random.default_rng(21)
    x1, x2 = rng.standard_normal(40), rng.standard_normal(40)
    y = 1.5 + 0.7 * x1 - 2.0 * x2 + 0.3 * rng.standard_normal(40)
    base = ols_fit(design(X1=x1, X2=x2), y)
    scaled = ols_fit(design(X1=c * x1, X2=x2), y)
    assert scaled.coefficients[0] == pytest.approx(base.coefficients[0] / c, rel=1e-9)
    assert scaled.coefficients[1] == pytest.approx(base.coefficients[1], rel=1e-9)
    assert scaled.intercept == pytest.approx(base.intercept, rel=1e-9)
    assert np.allclose(scaled.fitted, base.fitted, rtol=0, atol=1e-9)


@pytest.mark.parametrize("shift", [-50.0, 1e3])
def test_shifting_a_predictor_moves_only_the_intercept(shift):
    rng = np.random.default_rng(22)
    x1, x2 = rng.standard_normal(40), rng.standard_normal(40)
    y = 1.5 + 0.7 * x1 - 2.0 * x2 + 0.3 * rng.standard_normal(40)
    base = ols_fit(design(X1=x1, X2=x2), y)
    shifted = ols_fit(design(X1=x1, X2=x2 + shift), y)
    assert shifted.coefficients == pytest.approx(base.coefficients, rel=1e-8)
    assert shifted.intercept == pytest.approx(base.intercept - base.coefficients[1] * shift, rel=1e-8, abs=1e-8)
    assert np.allclose(shifted.fitted, base.fitted, rtol=0, atol=1e-8)
