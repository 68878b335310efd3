"""CSV storage: read/write report tables on the local filesystem."""

import logging
from pathlib import Path

import pandas as pd

logger = logging.getLogger(__name__)


def read_csv(path: Path) -> pd.DataFrame | None:
    """Read a CSV report; None when missing or unreadable."""
    path = Path(path)
    if not path.exists():
        return None
    try:
        return pd.read_csv(path, dtype=str, keep_default_na=False)
    except Exception as e:
        logger.warning("could not read %s: %s", path, e)
        return None


def write_csv(df: pd.DataFrame, path: Path) -> bool:
    """Write a CSV report, creating parent directories.

    Args:
        df: DataFrame to write
        path: Destination file
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        df.to_csv(path, index=False)
        return True
    except Exception as e:
        logger.warning("could not write %s: %s", path, e)
        return False


def csv_exists(path: Path) -> bool:
    """Check if a CSV report exists."""
    return Path(path).is_file()
