import logging
import sys

from rich.console import Console
from rich.logging import RichHandler

LOGGER_NAME = "wavelet_regression"


def get_logger():
    """Get the logger; diagnostics go to stderr so data written to stdout stays clean."""
    logger = logging.getLogger(LOGGER_NAME)
    formatter = logging.Formatter("%(message)s")

    # we check if the logger already has a handler
    # to avoid adding multiple handlers
    if logger.hasHandlers():
        return logger
    if sys.stderr.isatty():
        handler = RichHandler(
            console=Console(stderr=True),
            markup=False,
            rich_tracebacks=True,
            locals_max_string=None,
            locals_max_length=None,
        )
    else:
        handler = logging.StreamHandler(sys.stderr)

    handler.setFormatter(formatter)
    logger.addHandler(handler)
    logger.setLevel(logging.INFO)
    return logger
