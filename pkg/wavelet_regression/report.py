"""
Rendering of multi-scale reports and decompositions as CSV, JSON, markdown and rich tables.
"""

import json
from typing import Any

import numpy as np
import pandas as pd
from rich.table import Table

from wavelet_regression.constants import CSV_FLOAT_FORMAT, EQUATION_DECIMALS, YEAR_COLUMN
from wavelet_regression.data_types import MRADecomposition, MultiScaleReport, OutputFormat, ScaleReport
from wavelet_regression.regression import INTERCEPT

MARKDOWN_COLUMNS = (
    "Time scale",
    "Regression equation",
    "R²",
    "F",
    "Significance level α",
    "AIC",
    "AICc",
    "p",
    "Status",
)
MISSING = "n/a"


def _fmt(value: float | None, decimals: int = EQUATION_DECIMALS) -> str:
    return MISSING if value is None else f"{value:.{decimals}f}"


def _coefficients(row: ScaleReport) -> dict[str, float]:
    if row.model is None:
        return {}
    return {INTERCEPT: row.model.intercept, **row.model.coefficient_map}


def _row_record(row: ScaleReport) -> dict[str, Any]:
    s = row.statistics
    return {
        "scale": row.scale,
        "label": row.label,
        "time_scale": row.time_scale,
        "equation": row.equation,
        "coefficients": _coefficients(row),
        "r2": s.r2 if s else None,
        "f": s.f if s else None,
        "p": s.p if s else None,
        "significance": s.significance.value if s and s.significance else None,
        "aic": s.aic if s else None,
        "aicc": s.aicc if s else None,
        "status": row.status.value,
        "basis": list(row.basis),
        "warnings": list(row.warnings),
        "error": row.error,
    }


def report_dict(report: MultiScaleReport) -> dict[str, Any]:
    dataset = report.dataset.model_dump(mode="json")
    dataset.update(j_max=report.j_max, j_clean=report.j_clean)
    ranking = report.ranking
    return {
        "config": report.config.echo(),
        "dataset": dataset,
        "rows": [_row_record(row) for row in report.rows],
        "ranking": {
            "criterion": ranking.criterion.value,
            "order": list(ranking.order),
            "ranked": list(ranking.ranked),
            "exact_fit": list(ranking.exact_fit),
            "failed": list(ranking.failed),
        },
    }


def render_json(report: MultiScaleReport) -> str:
    # floats are written with repr, which round-trips bit for bit
    return json.dumps(report_dict(report), indent=2, ensure_ascii=False) + "\n"


def report_frame(report: MultiScaleReport) -> pd.DataFrame:
    """One line per scale; coefficient columns are prefixed with ``b_``."""

    records = []
    for row in report.rows:
        record = _row_record(row)
        coefficients = record.pop("coefficients")
        record["basis"] = ";".join(record["basis"])
        record["warnings"] = ";".join(record["warnings"])
        record.update({f"b_{name}": value for name, value in coefficients.items()})
        records.append(record)
    return pd.DataFrame.from_records(records)


def render_csv(report: MultiScaleReport) -> str:
    return report_frame(report).to_csv(index=False, float_format=CSV_FLOAT_FORMAT)


def _markdown_cells(row: ScaleReport) -> list[str]:
    s = row.statistics
    equation = row.equation if row.error is None else row.error
    cells = [
        f"{row.label} ({row.time_scale})",
        equation,
        _fmt(s.r2 if s else None),
        _fmt(s.f if s else None),
        s.significance.value if s and s.significance else MISSING,
        _fmt(s.aic if s else None),
        _fmt(s.aicc if s else None),
        _fmt(s.p if s else None),
        row.status.value,
    ]
    return [cell.replace("|", "\\|") for cell in cells]


def render_markdown(report: MultiScaleReport) -> str:
    lines = [
        "| " + " | ".join(MARKDOWN_COLUMNS) + " |",
        "|" + "|".join("---" for _ in MARKDOWN_COLUMNS) + "|",
    ]
    lines += ["| " + " | ".join(_markdown_cells(row)) + " |" for row in report.rows]
    return "\n".join(lines) + "\n"


def rich_report(report: MultiScaleReport) -> Table:
    d = report.dataset
    table = Table(title=f"Wavelet regression of {d.dependent} ({d.first_year}-{d.last_year}, n={d.n})")
    for column in MARKDOWN_COLUMNS:
        table.add_column(column, justify="left" if column in ("Time scale", "Regression equation") else "right")
    for row in report.rows:
        style = "red" if row.error else ("yellow" if row.warnings else None)
        table.add_row(*_markdown_cells(row), style=style)
    return table


RENDERERS = {
    OutputFormat.CSV: render_csv,
    OutputFormat.JSON: render_json,
    OutputFormat.MARKDOWN: render_markdown,
}


def render(report: MultiScaleReport, fmt: OutputFormat | str) -> str:
    return RENDERERS[OutputFormat(fmt)](report)


def decomposition_frame(decomposition: MRADecomposition, index: np.ndarray | None = None) -> pd.DataFrame:
    """Columns year, raw, S_1..S_J, D_1..D_J: the data behind a pattern-curve plot."""

    j_range = range(1, decomposition.levels + 1)
    index = np.arange(decomposition.n) if index is None else index
    frame = pd.DataFrame({YEAR_COLUMN: index, "raw": decomposition.signal})
    for j in j_range:
        frame[f"S_{j}"] = decomposition.approximation(j)
    for j in j_range:
        frame[f"D_{j}"] = decomposition.detail(j)
    return frame


def render_decomposition(decomposition: MRADecomposition, index: np.ndarray | None = None) -> str:
    return decomposition_frame(decomposition, index).to_csv(index=False, float_format=CSV_FLOAT_FORMAT)
