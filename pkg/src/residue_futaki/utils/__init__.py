"""Utility functions for configuration and report storage."""

from .config import (
    RESIDUE_FUTAKI_THREADS,
    DEFAULT_MAX_EXPONENT,
    DEFAULT_MAX_COFACTOR_DEGREE,
    worker_count,
)
from .csv_storage import (
    read_csv,
    write_csv,
    csv_exists,
)

__all__ = [
    'RESIDUE_FUTAKI_THREADS',
    'DEFAULT_MAX_EXPONENT',
    'DEFAULT_MAX_COFACTOR_DEGREE',
    'worker_count',
    'read_csv',
    'write_csv',
    'csv_exists',
]
