"""Grothendieck point residues of vector-field germs at the origin.

Two evaluation paths:

- Non-degenerate germs (``det J(0) != 0``): ``h(0) / det J(0)``.
- Degenerate isolated zeros: find a monomial representation
  ``z_i^a_i * u_i = sum_j b_ij * xi_j`` with local units ``u_i(0) = 1``, then
  apply the transformation law

      Res = 1/prod((a_i - 1)!) * d^(a-1)/dz^(a-1) [det(b) * h * prod(1/u_i)] at 0

  where ``1/u_i`` is a truncated power series. With every ``u_i = 1`` this is
  the classical monomial formula.

The representation is searched degree-major: cofactor degree D = 0, 1, ...
and for each D the exponent a = 1 .. max_exponent, one variable at a time,
solving the exact linear system for the unknown coefficients.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial

from ..errors import IntegrityError, RepresentationNotFoundError, UsageError
from ..utils.config import DEFAULT_MAX_COFACTOR_DEGREE, DEFAULT_MAX_EXPONENT
from .arith import Monomial, Poly, PolyMatrix, RatFunc, exact_value, solve_linear_system
from .exprio import parse_poly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResidueCaps:
    """Bounds for the monomial-representation search."""

    max_exponent: int = DEFAULT_MAX_EXPONENT
    max_cofactor_degree: int = DEFAULT_MAX_COFACTOR_DEGREE

    def __post_init__(self):
        if self.max_exponent < 1 or self.max_cofactor_degree < 0:
            raise UsageError(f"invalid residue caps {self}")


class VectorFieldGerm:
    """Components xi_1..xi_n in z_1..z_n with an isolated zero at the origin.

    Components may involve symbolic ``parameters``; they live over
    ``variables + parameters`` and must vanish at z = 0 identically.
    """

    def __init__(self, variables: Sequence[str], components: Sequence[Poly],
                 parameters: Sequence[str] = ()):
        variables = tuple(variables)
        parameters = tuple(parameters)
        if not components:
            raise UsageError("a vector-field germ needs at least one component")
        if len(components) != len(variables):
            raise UsageError(f"{len(components)} components for {len(variables)} variables")
        if set(variables) & set(parameters):
            raise UsageError("germ variables and parameters must be disjoint")
        ring = variables + parameters
        comps = tuple(c.with_variables(ring) for c in components)
        origin = {v: 0 for v in variables}
        for i, c in enumerate(comps):
            if not c.subs(origin).is_zero():
                raise UsageError(f"component {i + 1} ({c}) does not vanish at the origin")
        self._variables = variables
        self._parameters = parameters
        self._components = comps

    @classmethod
    def parse(cls, variables: Sequence[str], components: Sequence[str],
              parameters: Sequence[str] = ()) -> VectorFieldGerm:
        ring = tuple(variables) + tuple(parameters)
        return cls(variables, [parse_poly(text, ring) for text in components], parameters)

    @property
    def variables(self) -> tuple[str, ...]:
        return self._variables

    @property
    def parameters(self) -> tuple[str, ...]:
        return self._parameters

    @property
    def ring(self) -> tuple[str, ...]:
        return self._variables + self._parameters

    @property
    def components(self) -> tuple[Poly, ...]:
        return self._components

    @property
    def n(self) -> int:
        return len(self._variables)

    def is_symbolic(self) -> bool:
        used = {v for c in self._components for v in c.used_variables()}
        return bool(used & set(self._parameters))

    def lift(self, p: Poly | int | Fraction) -> Poly:
        """Bring a numerator onto the germ's ring."""
        if isinstance(p, Poly):
            return p.with_variables(self.ring)
        return Poly.constant(self.ring, p)

    def origin(self) -> dict[str, int]:
        return {v: 0 for v in self._variables}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VectorFieldGerm):
            return NotImplemented
        return (self._variables, self._parameters, self._components) == \
            (other._variables, other._parameters, other._components)

    def __hash__(self) -> int:
        return hash((self._variables, self._parameters, self._components))

    def __repr__(self) -> str:
        comps = ", ".join(str(c) for c in self._components)
        return f"VectorFieldGerm(({comps}), variables={list(self._variables)})"


@dataclass(frozen=True)
class MonomialRepresentation:
    """``z_i^a_i * u_i = sum_j b_ij xi_j`` over the germ variables."""

    exponents: tuple[int, ...]
    cofactors: PolyMatrix
    units: tuple[Poly, ...] = field(default=())

    def is_pure(self) -> bool:
        return all(u == 1 for u in self.units)

    def to_document(self) -> dict:
        return {
            'exponents': list(self.exponents),
            'cofactors': [[str(e) for e in self.cofactors.row(i)] for i in range(self.cofactors.rows)],
            'units': [str(u) for u in self.units],
        }


@dataclass(frozen=True)
class ResidueValue:
    value: Fraction | RatFunc
    method: str
    representation: MonomialRepresentation | None = None

    def __str__(self) -> str:
        return exact_value(self.value)


def jacobian(germ: VectorFieldGerm) -> PolyMatrix:
    """Matrix of partials ``d xi_i / d z_j``."""
    return PolyMatrix([[c.diff(v) for v in germ.variables] for c in germ.components], germ.ring)


def is_nondegenerate(germ: VectorFieldGerm) -> bool:
    """True iff ``det J`` has a nonzero value at the origin."""
    return not jacobian(germ).det().subs(germ.origin()).is_zero()


def nondegenerate_residue(germ: VectorFieldGerm, numerator: Poly | int | Fraction) -> ResidueValue:
    """``h(0) / det J(0)`` for a non-degenerate germ.

    In symbolic mode the value is a RatFunc over the parameters; a triangular
    ``J(0)`` contributes its diagonal entries as separate denominator factors.

    Raises:
        UsageError: The germ is degenerate.
    """
    h = germ.lift(numerator)
    j0 = jacobian(germ).subs(germ.origin())
    det0 = j0.det()
    if det0.is_zero():
        raise UsageError(f"germ {germ!r} is degenerate at the origin")
    h0 = h.subs(germ.origin())

    if not germ.parameters:
        value: Fraction | RatFunc = h0.constant_value() / det0.constant_value()
        return ResidueValue(value, 'closed-form')

    params = germ.parameters
    n = germ.n
    lower_zero = all(j0[i, k].is_zero() for i in range(n) for k in range(i))
    upper_zero = all(j0[i, k].is_zero() for i in range(n) for k in range(i + 1, n))
    if lower_zero or upper_zero:
        factors = [j0[i, i].with_variables(params) for i in range(n)]
    else:
        factors = [det0.with_variables(params)]
    value = RatFunc.from_factors(h0.with_variables(params), factors)
    return ResidueValue(value, 'closed-form')


def _monomials(n: int, low: int, high: int) -> list[Monomial]:
    """Exponent tuples of total degree low..high, in ascending graded-lex order."""
    out: list[Monomial] = []
    for degree in range(low, high + 1):
        level = []
        for combo in combinations_with_replacement(range(n), degree):
            exps = [0] * n
            for k in combo:
                exps[k] += 1
            level.append(tuple(exps))
        out.extend(sorted(level))
    return out


def _solve_row(components: Sequence[Poly], index: int, exponent: int,
               degree: int) -> tuple[list[Poly], Poly] | None:
    """Solve ``z_index^exponent * (1 + v) = sum_j b_j xi_j`` with deg b_j, deg v <= degree."""
    variables = components[0].variables
    n = len(variables)
    target = Poly.variable(variables, variables[index]) ** exponent
    cofactor_monos = _monomials(n, 0, degree)
    unit_monos = _monomials(n, 1, degree)

    columns: list[Poly] = []
    for xi in components:
        for mono in cofactor_monos:
            columns.append(Poly.monomial(variables, mono) * xi)
    for mono in unit_monos:
        columns.append(-(Poly.monomial(variables, mono) * target))

    row_index: dict[Monomial, int] = {}
    for poly in (*columns, target):
        for mono in poly.terms:
            row_index.setdefault(mono, len(row_index))
    matrix = [[Fraction(0)] * len(columns) for _ in row_index]
    for c, poly in enumerate(columns):
        for mono, coeff in poly.terms.items():
            matrix[row_index[mono]][c] = coeff
    rhs = [[Fraction(0)] for _ in row_index]
    for mono, coeff in target.terms.items():
        rhs[row_index[mono]][0] = coeff

    solution = solve_linear_system(matrix, rhs)[0]
    if solution is None:
        return None
    width = len(cofactor_monos)
    row = []
    for j in range(len(components)):
        chunk = solution[j * width:(j + 1) * width]
        row.append(Poly(variables, {m: x for m, x in zip(cofactor_monos, chunk) if x}))
    unit_chunk = solution[len(components) * width:]
    unit = Poly(variables, {m: x for m, x in zip(unit_monos, unit_chunk) if x}) + 1
    return row, unit


def find_monomial_representation(germ: VectorFieldGerm, max_exponent: int | None = None,
                                 max_cofactor_degree: int | None = None,
                                 caps: ResidueCaps | None = None) -> MonomialRepresentation:
    """Search for ``z_i^a_i * u_i = sum_j b_ij xi_j`` with smallest (D, a_i) per variable.

    Success certifies that the origin is an isolated zero.

    Raises:
        UsageError: The germ has symbolic coefficients.
        RepresentationNotFoundError: Caps exhausted for some variable.
    """
    caps = caps or ResidueCaps()
    max_exponent = caps.max_exponent if max_exponent is None else max_exponent
    max_degree = caps.max_cofactor_degree if max_cofactor_degree is None else max_cofactor_degree
    if germ.is_symbolic():
        raise UsageError("monomial representations need numeric germ coefficients")
    components = [c.with_variables(germ.variables) for c in germ.components]

    exponents: list[int] = []
    rows: list[list[Poly]] = []
    units: list[Poly] = []
    for i, name in enumerate(germ.variables):
        found = None
        for degree in range(max_degree + 1):
            for a in range(1, max_exponent + 1):
                result = _solve_row(components, i, a, degree)
                if result is not None:
                    found = (a, degree, result)
                    break
            if found:
                break
            logger.debug("no identity for %s^a with cofactor degree %d", name, degree)
        if found is None:
            logger.info("representation search exhausted for %s", name)
            raise RepresentationNotFoundError(max_exponent, max_degree)
        a, degree, (row, unit) = found
        logger.debug("%s^%d found at cofactor degree %d (unit %s)", name, a, degree, unit)
        exponents.append(a)
        rows.append(row)
        units.append(unit)
    return MonomialRepresentation(tuple(exponents), PolyMatrix(rows, germ.variables), tuple(units))


def verify_representation(germ: VectorFieldGerm, rep: MonomialRepresentation) -> None:
    """Re-check the identity by full expansion.

    Raises:
        IntegrityError: The identity fails for some row.
    """
    n = germ.n
    units = rep.units or tuple(Poly.constant(germ.variables, 1) for _ in range(n))
    if len(rep.exponents) != n or rep.cofactors.shape != (n, n) or len(units) != n:
        raise IntegrityError(f"representation shape does not match a germ in {n} variables")
    ring = germ.ring
    for i, name in enumerate(germ.variables):
        a = rep.exponents[i]
        if a < 1:
            raise IntegrityError(f"exponent a_{i + 1} = {a} is not positive")
        unit = units[i].with_variables(ring)
        if unit.subs(germ.origin()) != 1:
            raise IntegrityError(f"unit u_{i + 1} = {units[i]} is not 1 at the origin")
        lhs = Poly.variable(ring, name) ** a * unit
        rhs = Poly.zero(ring)
        for j, xi in enumerate(germ.components):
            rhs = rhs + rep.cofactors[i, j].with_variables(ring) * xi
        if lhs != rhs:
            raise IntegrityError(f"representation row {i + 1} fails: {lhs} != {rhs}")


def residue_via_representation(germ: VectorFieldGerm, rep: MonomialRepresentation,
                               numerator: Poly | int | Fraction) -> ResidueValue:
    """Residue through the transformation law; the identity is verified first."""
    verify_representation(germ, rep)
    ring = germ.ring
    h = germ.lift(numerator)
    order = sum(a - 1 for a in rep.exponents)

    integrand = rep.cofactors.det().with_variables(ring) * h
    for unit in rep.units:
        if unit != 1:
            inverse = unit.with_variables(germ.variables).series_inverse(order)
            integrand = integrand * inverse.with_variables(ring)

    scale = 1
    for name, a in zip(germ.variables, rep.exponents):
        integrand = integrand.diff(name, a - 1)
        scale *= factorial(a - 1)
    at_origin = integrand.subs(germ.origin())
    if germ.parameters:
        value: Fraction | RatFunc = RatFunc(at_origin.with_variables(germ.parameters).scale(Fraction(1, scale)))
    else:
        value = at_origin.constant_value() / scale
    return ResidueValue(value, 'representation', rep)


def grothendieck_residue(germ: VectorFieldGerm, numerator: Poly | int | Fraction,
                         caps: ResidueCaps | None = None) -> ResidueValue:
    """Point residue of ``h dz / (xi_1 ... xi_n)`` at the origin."""
    if is_nondegenerate(germ):
        return nondegenerate_residue(germ, numerator)
    caps = caps or ResidueCaps()
    rep = find_monomial_representation(germ, caps=caps)
    return residue_via_representation(germ, rep, numerator)


def local_multiplicity(germ: VectorFieldGerm, caps: ResidueCaps | None = None) -> int:
    """Local degree of the germ: the residue of ``det J``.

    Raises:
        IntegrityError: The residue is not a positive integer.
    """
    value = grothendieck_residue(germ, jacobian(germ).det(), caps).value
    if not isinstance(value, Fraction) or value.denominator != 1 or value <= 0:
        raise IntegrityError(f"local multiplicity {exact_value(value)} is not a positive integer")
    return int(value)
