"""Weighted projective plane analysis."""

from .wps import (
    Weights,
    TorusFieldParams,
    Violation,
    ObstructionPolynomial,
    Obstructed,
    NoObstructionFound,
    validate_params,
    fixed_point_charts,
    chart_eigenvalues,
    closed_form_futaki,
    futaki_wps,
    zeta,
    ke_obstruction,
    default_params,
    euler_chern_number,
    chern_number_wps,
    pairwise_coprime_triples,
    obstruction_sweep,
)

__all__ = [
    'Weights',
    'TorusFieldParams',
    'Violation',
    'ObstructionPolynomial',
    'Obstructed',
    'NoObstructionFound',
    'validate_params',
    'fixed_point_charts',
    'chart_eigenvalues',
    'closed_form_futaki',
    'futaki_wps',
    'zeta',
    'ke_obstruction',
    'default_params',
    'euler_chern_number',
    'chern_number_wps',
    'pairwise_coprime_triples',
    'obstruction_sweep',
]
