"""Utils for the wavelet regression package."""

from .files import atomic_write_text, load_config_file
from .logger import get_logger

__all__ = [
    "get_logger",
    "atomic_write_text",
    "load_config_file",
]
