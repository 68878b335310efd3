"""Workflow steps for the acceptance pipeline."""

from .step1_reproduce_zeta import reproduce_symbolic_zeta
from .step2_fano_sanity import check_fano_plane
from .step3_chern_table import build_chern_table
from .step4_weight_sweep import run_weight_sweep

__all__ = [
    'reproduce_symbolic_zeta',
    'check_fano_plane',
    'build_chern_table',
    'run_weight_sweep',
]
