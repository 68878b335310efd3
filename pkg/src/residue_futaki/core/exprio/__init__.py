"""Expression and job-document input/output."""

from .parser import ExprSource, parse_poly, parse_rational, format_poly
from .jobs import (
    JOB_KINDS,
    SYMBOLIC,
    WPS_PARAM_VARS,
    WPS_WEIGHT_VARS,
    ChartSpec,
    JobDescription,
    JobOptions,
    PhiSpec,
    parse_job,
)

__all__ = [
    'ExprSource',
    'parse_poly',
    'parse_rational',
    'format_poly',
    'JOB_KINDS',
    'SYMBOLIC',
    'WPS_PARAM_VARS',
    'WPS_WEIGHT_VARS',
    'ChartSpec',
    'JobDescription',
    'JobOptions',
    'PhiSpec',
    'parse_job',
]
