import os
import tempfile
from pathlib import Path

from dotenv import dotenv_values


def atomic_write_text(path: str | Path, text: str) -> Path:
    """Write `text` to a temp file next to `path`, then rename it into place."""

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    return path


def load_config_file(path: str | Path | None) -> dict[str, str]:
    """Read a key=value settings file; keys are lower-cased, empty values dropped."""

    if path is None:
        return {}
    values = dotenv_values(dotenv_path=Path(path))
    return {key.strip().lower(): value for key, value in values.items() if value not in (None, "")}
