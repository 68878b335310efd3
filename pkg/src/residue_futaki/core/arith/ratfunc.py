"""Rational functions with a tracked, factored denominator.

Denominators are never factored: factors enter only where the caller divides
by them (chart eigenvalue forms, weight powers), are normalized, and are
cancelled against the numerator by exact trial division.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from fractions import Fraction
from math import gcd, lcm
from types import MappingProxyType

from ...errors import UsageError, ZeroFunctionError
from .poly import Poly, format_rational

logger = logging.getLogger(__name__)


def normalize_factor(factor: Poly) -> tuple[Fraction, dict[Poly, int]]:
    """Split a denominator factor into ``scalar * prod(canonical factors)``.

    Monomial content becomes one factor per variable. The rest is scaled to
    integer coefficients with gcd 1 and a positive graded-lex leading
    coefficient; the scalar absorbs the scaling and the sign.

    Raises:
        ZeroFunctionError: factor is the zero polynomial.
    """
    if factor.is_zero():
        raise ZeroFunctionError("division by the zero function")
    if not factor.is_flat:
        raise UsageError("denominator factors must be flat polynomials")
    variables = factor.variables
    content = [min(m[i] for m in factor.terms) for i in range(len(variables))]
    factors: dict[Poly, int] = {}
    for name, e in zip(variables, content):
        if e:
            factors[Poly.variable(variables, name)] = e
    rest = Poly(variables, {tuple(a - b for a, b in zip(m, content)): c for m, c in factor.terms.items()})

    if rest.is_constant():
        return rest.constant_value(), factors

    coeffs = list(rest.terms.values())
    denom_lcm = lcm(*(c.denominator for c in coeffs))
    numer_gcd = gcd(*(int(c * denom_lcm) for c in coeffs))
    scalar = Fraction(numer_gcd, denom_lcm)
    if rest.leading_term()[1] < 0:
        scalar = -scalar
    primitive = rest.scale(1 / scalar)
    factors[primitive] = factors.get(primitive, 0) + 1
    return scalar, factors


def _factor_sort_key(item: tuple[Poly, int]) -> tuple[int, str]:
    return (item[0].total_degree(), str(item[0]))


class RatFunc:
    """Immutable ``numerator / prod(factor^exponent)`` with canonical factors.

    Args:
        numerator: Flat polynomial.
        denominator: Optional map from factor polynomial to positive exponent;
            factors are normalized and cancelled on construction.
    """

    __slots__ = ('_numerator', '_factors')

    def __init__(self, numerator: Poly, denominator: Mapping[Poly, int] | None = None):
        if not numerator.is_flat:
            numerator = numerator.flatten()
        scalar = Fraction(1)
        factors: dict[Poly, int] = {}
        for factor, exponent in (denominator or {}).items():
            if not isinstance(exponent, int) or exponent < 1:
                raise UsageError(f"denominator exponents must be positive integers, got {exponent!r}")
            if factor.variables != numerator.variables:
                raise UsageError(
                    f"variable lists differ: {list(numerator.variables)} vs {list(factor.variables)}"
                )
            s, parts = normalize_factor(factor)
            scalar *= s ** exponent
            for part, e in parts.items():
                factors[part] = factors.get(part, 0) + e * exponent
        self._numerator = numerator.scale(1 / scalar)
        self._factors = factors
        self._cancel()

    @classmethod
    def _raw(cls, numerator: Poly, factors: dict[Poly, int]) -> RatFunc:
        obj = cls.__new__(cls)
        obj._numerator = numerator
        obj._factors = factors
        obj._cancel()
        return obj

    @classmethod
    def from_poly(cls, p: Poly) -> RatFunc:
        return cls(p)

    @classmethod
    def from_factors(cls, numerator: Poly, factors: Sequence[Poly]) -> RatFunc:
        """``numerator / prod(factors)``, each factor tracked separately."""
        denominator: dict[Poly, int] = {}
        for factor in factors:
            denominator[factor] = denominator.get(factor, 0) + 1
        return cls(numerator, denominator)

    @classmethod
    def from_quotient(cls, numerator: Poly, denominator: Poly) -> RatFunc:
        """``numerator / denominator`` with the whole denominator as one tracked factor."""
        return cls(numerator, {denominator: 1})

    def _cancel(self) -> None:
        if self._numerator.is_zero():
            self._factors = {}
            return
        numerator = self._numerator
        kept: dict[Poly, int] = {}
        for factor, exponent in self._factors.items():
            while exponent:
                quotient = numerator.divide_exact(factor)
                if quotient is None:
                    break
                numerator = quotient
                exponent -= 1
            if exponent:
                kept[factor] = exponent
        self._numerator = numerator
        self._factors = kept

    # ------------------------------------------------------------------

    @property
    def variables(self) -> tuple[str, ...]:
        return self._numerator.variables

    @property
    def numerator(self) -> Poly:
        return self._numerator

    @property
    def denominator_factors(self) -> Mapping[Poly, int]:
        return MappingProxyType(self._factors)

    def denominator(self) -> Poly:
        """The expanded denominator polynomial."""
        result = Poly.constant(self.variables, 1)
        for factor, exponent in self._factors.items():
            result = result * factor ** exponent
        return result

    def is_polynomial(self) -> bool:
        return not self._factors

    def is_zero(self) -> bool:
        return self._numerator.is_zero()

    def to_poly(self) -> Poly:
        if self._factors:
            raise UsageError(f"{self} still has a denominator")
        return self._numerator

    # ------------------------------------------------------------------

    def _coerce(self, other: object) -> RatFunc | None:
        if isinstance(other, RatFunc):
            if other.variables != self.variables:
                raise UsageError(
                    f"variable lists differ: {list(self.variables)} vs {list(other.variables)}"
                )
            return other
        if isinstance(other, Poly):
            return RatFunc(other.with_variables(self.variables) if other.variables != self.variables else other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RatFunc(Poly.constant(self.variables, other))
        return None

    def __add__(self, other: object) -> RatFunc:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        common = dict(self._factors)
        for factor, exponent in rhs._factors.items():
            common[factor] = max(common.get(factor, 0), exponent)
        left = self._numerator * self._cofactor(common)
        right = rhs._numerator * rhs._cofactor(common)
        return RatFunc._raw(left + right, common)

    __radd__ = __add__

    def _cofactor(self, common: Mapping[Poly, int]) -> Poly:
        result = Poly.constant(self.variables, 1)
        for factor, exponent in common.items():
            missing = exponent - self._factors.get(factor, 0)
            if missing:
                result = result * factor ** missing
        return result

    def __neg__(self) -> RatFunc:
        return RatFunc._raw(-self._numerator, dict(self._factors))

    def __sub__(self, other: object) -> RatFunc:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> RatFunc:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs + (-self)

    def __mul__(self, other: object) -> RatFunc:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        factors = dict(self._factors)
        for factor, exponent in rhs._factors.items():
            factors[factor] = factors.get(factor, 0) + exponent
        return RatFunc._raw(self._numerator * rhs._numerator, factors)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> RatFunc:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if rhs.is_zero():
            raise ZeroFunctionError("division by the zero function")
        inverted = RatFunc(rhs.denominator(), {rhs._numerator: 1})
        return self * inverted

    def __rtruediv__(self, other: object) -> RatFunc:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs / self

    def __pow__(self, exponent: int) -> RatFunc:
        if not isinstance(exponent, int) or exponent < 0:
            raise UsageError(f"rational function powers need a non-negative integer, got {exponent!r}")
        return RatFunc._raw(self._numerator ** exponent, {f: e * exponent for f, e in self._factors.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RatFunc):
            return self.variables == other.variables and self._numerator == other._numerator \
                and self._factors == other._factors
        if isinstance(other, Poly):
            return not self._factors and self._numerator == other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return not self._factors and self._numerator == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self._factors:
            return hash(self._numerator)
        return hash((self._numerator, frozenset(self._factors.items())))

    # ------------------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, object]) -> RatFunc | Fraction:
        """Substitute rational values; a full assignment gives a Fraction.

        Raises:
            ZeroFunctionError: a denominator factor vanishes under the assignment.
        """
        numerator = self._numerator.subs(assignment)
        result = RatFunc(numerator)
        for factor, exponent in self._factors.items():
            value = factor.subs(assignment)
            if value.is_zero():
                raise ZeroFunctionError(f"denominator factor {factor} vanishes at {dict(assignment)}")
            result = result / (RatFunc(value) ** exponent)
        if result.is_polynomial() and result.numerator.is_constant():
            return result.numerator.constant_value()
        return result

    def restrict(self, variables: Sequence[str]) -> RatFunc:
        """Re-index numerator and factors onto another variable list."""
        return RatFunc(
            self._numerator.with_variables(variables),
            {f.with_variables(variables): e for f, e in self._factors.items()},
        )

    def __str__(self) -> str:
        if not self._factors:
            return str(self._numerator)
        numer = str(self._numerator)
        if len(self._numerator) > 1:
            numer = f"({numer})"
        parts = []
        for factor, exponent in sorted(self._factors.items(), key=_factor_sort_key):
            text = str(factor)
            if len(factor) > 1:
                text = f"({text})"
            parts.append(text if exponent == 1 else f"{text}^{exponent}")
        denom = "*".join(parts)
        if len(parts) > 1:
            denom = f"({denom})"
        return f"{numer}/{denom}"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r}, variables={list(self.variables)!r})"


def exact_value(value: Fraction | RatFunc) -> str:
    """Canonical text of a residue/invariant value."""
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)
