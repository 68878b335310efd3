"""Residue Futaki - exact Grothendieck residues and Futaki invariants.

This package provides:
- Sparse exact polynomial, rational-function and matrix arithmetic
- Grothendieck point residues of vector-field germs, degenerate ones included
- Morita-Futaki invariants and the Futaki character from fixed-point charts
- The Kahler-Einstein obstruction on weighted projective planes

Example:
    >>> from residue_futaki import VectorFieldGerm, local_multiplicity
    >>> from residue_futaki import Weights, TorusFieldParams, futaki_wps, zeta
    >>>
    >>> # Local degree of a degenerate singularity
    >>> germ = VectorFieldGerm.parse(['z1', 'z2'], ['z1^2 - z2^2', 'z1*z2'])
    >>> local_multiplicity(germ)
    4
    >>>
    >>> # Futaki character of a torus field on P^2_(1,1,2)
    >>> str(futaki_wps(Weights(1, 1, 2), TorusFieldParams.of(0, 1, 3)))
    '-16/9'
    >>>
    >>> # The obstruction polynomial with symbolic weights
    >>> z = zeta(None)
    >>> coefficient = z.coefficient('a0^2*a1*a2')
"""

from .core.arith import Poly, RatFunc, PolyMatrix
from .core.exprio import parse_poly, parse_job
from .core import (
    VectorFieldGerm,
    ResidueCaps,
    grothendieck_residue,
    local_multiplicity,
    InvariantPolynomial,
    FixedPointChart,
    morita_futaki,
    futaki_character,
    characteristic_number,
)
from .analysis import (
    Weights,
    TorusFieldParams,
    futaki_wps,
    zeta,
    ke_obstruction,
    chern_number_wps,
)

__version__ = "0.1.0"

__all__ = [
    'Poly',
    'RatFunc',
    'PolyMatrix',
    'parse_poly',
    'parse_job',
    'VectorFieldGerm',
    'ResidueCaps',
    'grothendieck_residue',
    'local_multiplicity',
    'InvariantPolynomial',
    'FixedPointChart',
    'morita_futaki',
    'futaki_character',
    'characteristic_number',
    'Weights',
    'TorusFieldParams',
    'futaki_wps',
    'zeta',
    'ke_obstruction',
    'chern_number_wps',
]
