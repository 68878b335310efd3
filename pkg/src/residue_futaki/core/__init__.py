"""Core computations: arithmetic, parsing, residues and Futaki invariants."""

from .residue import (
    ResidueCaps,
    VectorFieldGerm,
    MonomialRepresentation,
    ResidueValue,
    jacobian,
    is_nondegenerate,
    nondegenerate_residue,
    find_monomial_representation,
    verify_representation,
    residue_via_representation,
    grothendieck_residue,
    local_multiplicity,
)
from .futaki import (
    InvariantPolynomial,
    FixedPointChart,
    ChartContribution,
    InvariantValue,
    eval_invariant_on_matrix,
    morita_futaki,
    futaki_character,
    characteristic_number,
)

__all__ = [
    'ResidueCaps',
    'VectorFieldGerm',
    'MonomialRepresentation',
    'ResidueValue',
    'jacobian',
    'is_nondegenerate',
    'nondegenerate_residue',
    'find_monomial_representation',
    'verify_representation',
    'residue_via_representation',
    'grothendieck_residue',
    'local_multiplicity',
    'InvariantPolynomial',
    'FixedPointChart',
    'ChartContribution',
    'InvariantValue',
    'eval_invariant_on_matrix',
    'morita_futaki',
    'futaki_character',
    'characteristic_number',
]
