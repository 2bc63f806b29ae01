"""
Cli module for decomposing series and running multi-scale wavelet regressions.
"""

import functools

import rich_click as click
from pydantic import ValidationError
from rich.console import Console

from wavelet_regression.constants import CSV_FLOAT_FORMAT
from wavelet_regression.data_types import (
    AicFormula,
    AnalysisConfig,
    BoundaryMode,
    OutputFormat,
    ParameterCount,
    RankCriterion,
    SyntheticSpec,
    WaveletName,
)
from wavelet_regression.exceptions import InvalidSpec, WaveletRegressionError
from wavelet_regression.ingest import load_csv, load_series, to_frame
from wavelet_regression.pipeline import analyze_multiscale, gen_synthetic, resolve_levels
from wavelet_regression.report import render, render_decomposition, rich_report
from wavelet_regression.utils import atomic_write_text, get_logger, load_config_file
from wavelet_regression.wavelet import filter_bank, mra

click.rich_click.USE_RICH_MARKUP = True


def set_logger(ctx, level):
    """Set the logger."""
    if not hasattr(ctx, "logger"):
        ctx.logger = get_logger()
        ctx.logger.setLevel(level)
    return ctx.logger


def handle_errors(func):
    """Map package errors onto exit codes: 2 for an unusable generator spec, 1 for data and numeric failures."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except InvalidSpec as e:
            raise click.UsageError(str(e)) from e
        except WaveletRegressionError as e:
            raise click.ClickException(str(e)) from e

    return wrapper


def resolve_config(config_path: str | None, **flags) -> AnalysisConfig:
    """Command-line flags override the config file, which overrides the built-in defaults."""

    settings = load_config_file(config_path)
    unknown = sorted(set(settings) - set(AnalysisConfig.model_fields))
    if unknown:
        raise click.UsageError(f"Unknown key(s) in {config_path}: {', '.join(unknown)}")
    settings.update({key: value for key, value in flags.items() if value is not None})
    try:
        return AnalysisConfig(**settings)
    except ValidationError as e:
        raise click.UsageError(f"Invalid analysis settings: {e}") from e


def emit(ctx, text: str, output: str | None) -> None:
    if output is None:
        click.echo(text, nl=False)
        return
    path = atomic_write_text(output, text)
    ctx.obj["logger"].info(f"Wrote {path}")


def _names(ctx, param, value):
    if value is None:
        return None
    names = tuple(v.strip() for v in value.split(",") if v.strip())
    if not names:
        raise click.BadParameter("expected one or more comma-separated column names")
    return names


config_option = click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False, readable=True),
    default=None,
    help="key=value settings file; command-line flags take precedence.",
)
output_option = click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="Destination file, written atomically. Defaults to stdout.",
)
wavelet_option = click.option(
    "--wavelet",
    "-w",
    type=click.Choice([w.value for w in WaveletName]),
    default=None,
    help="Wavelet filter bank (default sym8).",
)
boundary_option = click.option(
    "--boundary",
    "-b",
    type=click.Choice([b.value for b in BoundaryMode]),
    default=None,
    help="Boundary extension rule (default periodic).",
)


@click.group("wreg")
@click.option(
    "--log-level",
    "-l",
    default="INFO",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]),
    help="Logging level.",
)
@click.pass_context
def cli(ctx, log_level):
    """Multi-time-scale wavelet regression command line interface."""
    ctx.ensure_object(dict)
    ctx.obj["logger"] = set_logger(ctx, log_level)


@cli.command("decompose")
@click.option("--input", "-i", "input_path", type=click.Path(dir_okay=False), required=True, help="Input CSV.")
@click.option("--column", "-c", required=True, help="Column to decompose.")
@wavelet_option
@click.option("--level", "-j", "levels", type=click.IntRange(min=1), default=None, help="Decomposition depth J.")
@boundary_option
@config_option
@output_option
@click.pass_context
@handle_errors
def decompose(ctx, input_path, column, wavelet, levels, boundary, config_path, output):
    """
    Write the multiresolution components of one column: year, raw, S_1..S_J, D_1..D_J.

    Example:
        $ wreg decompose --input data.csv --column AR --wavelet sym8 --level 5
    """

    config = resolve_config(config_path, wavelet=wavelet, levels=levels, boundary=boundary)
    series = load_series(input_path, column)
    fb = filter_bank(config.wavelet)
    levels, _, _ = resolve_levels(series.n, fb, config.levels)
    if levels < 1:
        raise click.UsageError(f"Decomposition needs at least one level; {column} has {series.n} samples")
    decomposition = mra(series.values, fb, levels, config.boundary, name=column)
    emit(ctx, render_decomposition(decomposition, series.index), output)


@cli.command("analyze")
@click.option("--input", "-i", "input_path", type=click.Path(dir_okay=False), required=True, help="Input CSV.")
@click.option("--dependent", "-d", required=True, help="Dependent column.")
@click.option(
    "--independent",
    "-x",
    "independents",
    required=True,
    callback=_names,
    help="Comma-separated independent columns, e.g. AAT,AP.",
)
@click.option("--levels", "-j", type=click.IntRange(min=0), default=None, help="Deepest scale J (default min(5, j_max)).")
@wavelet_option
@boundary_option
@click.option("--basis", default=None, help='Extra nonlinear terms for every scale, e.g. "AAT^2,AAT*AP".')
@click.option(
    "--parameter-count",
    type=click.Choice([p.value for p in ParameterCount]),
    default=None,
    help="Count k as coefficients (m+1) or coefficients plus error variance (m+2).",
)
@click.option(
    "--aic-formula",
    type=click.Choice([a.value for a in AicFormula]),
    default=None,
    help="standard: 2k + n ln(RSS/n); literal: 2k + ln(RSS/n).",
)
@click.option(
    "--rank-by",
    type=click.Choice([r.value for r in RankCriterion]),
    default=None,
    help="Criterion used to rank the scales.",
)
@click.option(
    "--nonlinear-fallback/--linear-only",
    default=None,
    help="Refit insignificant scales with squared predictors.",
)
@config_option
@output_option
@click.option(
    "--format",
    "-f",
    "fmt",
    type=click.Choice([f.value for f in OutputFormat]),
    default=OutputFormat.MARKDOWN.value,
    help="Report format.",
)
@click.pass_context
@handle_errors
def analyze(
    ctx,
    input_path,
    dependent,
    independents,
    levels,
    wavelet,
    boundary,
    basis,
    parameter_count,
    aic_formula,
    rank_by,
    nonlinear_fallback,
    config_path,
    output,
    fmt,
):
    """
    Fit one regression equation per time scale and report R², F, AIC and AICc.

    Example:
        $ wreg analyze --input data.csv --dependent AR --independent AAT,AP --levels 5 --format markdown
    """

    config = resolve_config(
        config_path,
        levels=levels,
        wavelet=wavelet,
        boundary=boundary,
        basis=basis,
        parameter_count=parameter_count,
        aic_formula=aic_formula,
        rank_by=rank_by,
        nonlinear_fallback=nonlinear_fallback,
    )
    dataset = load_csv(input_path, dependent, independents)
    report = analyze_multiscale(dataset, config)

    console = Console()
    if output is None and fmt == OutputFormat.MARKDOWN.value and console.is_terminal:
        console.print(rich_report(report))
    else:
        emit(ctx, render(report, fmt), output)

    if not report.succeeded:
        raise click.ClickException("No time scale produced a fit")


@cli.command("gen-synthetic")
@click.option("--n", "n", type=int, default=None, help="Number of annual samples (default 128).")
@click.option("--seed", "-s", type=int, default=0, show_default=True, help="Random seed.")
@click.option("--trend", type=float, default=None, help="Shared linear trend per step (default 0.05).")
@click.option("--noise-sd", type=float, default=None, help="Noise standard deviation (default 0.5).")
@click.option("--start-year", type=int, default=None, help="First year of the index (default 1950).")
@output_option
@click.pass_context
@handle_errors
def gen_synthetic_cmd(ctx, n, seed, trend, noise_sd, start_year, output):
    """
    Write a trend-plus-sinusoids dataset whose dependent is linear in the predictors' smooth parts.

    Example:
        $ wreg gen-synthetic --seed 42 --output synthetic.csv
    """

    overrides = {"n": n, "trend": trend, "noise_sd": noise_sd, "start_year": start_year}
    spec = SyntheticSpec(**{key: value for key, value in overrides.items() if value is not None})
    dataset = gen_synthetic(spec, seed)
    emit(ctx, to_frame(dataset).to_csv(float_format=CSV_FLOAT_FORMAT), output)
