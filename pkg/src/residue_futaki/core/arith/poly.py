"""Sparse exact multivariate polynomials.

Coefficients are ``fractions.Fraction`` or, one level deep, polynomials over a
disjoint variable set (the ``Q[w][a]`` tower). Deeper nesting is rejected.
Values are immutable; every operation returns a new polynomial.

Monomials are exponent tuples indexed by the declared variable list and are
ordered graded-lexicographically (total degree first, then lexicographic in
the declared variable order). That order drives canonical printing, leading
terms and exact division.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Mapping, Sequence
from fractions import Fraction
from types import MappingProxyType
from typing import Union

from ...errors import UsageError, ZeroFunctionError

logger = logging.getLogger(__name__)

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]
Coefficient = Union[Fraction, "Poly"]


def monomial_key(m: Monomial) -> tuple[int, Monomial]:
    """Sort key for graded-lex order (use with ``reverse=True`` for descending)."""
    return (sum(m), m)


def format_rational(value: Fraction) -> str:
    """Render a rational as ``p/q``, omitting ``/1``."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _is_scalar(value: object) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


class Poly:
    """Immutable sparse polynomial with exact coefficients.

    Args:
        variables: Ordered variable names.
        terms: Map from exponent tuple to coefficient (int, Fraction or a flat
            Poly over variables disjoint from ``variables``).

    Example:
        >>> x, y = Poly.variable(['x', 'y'], 'x'), Poly.variable(['x', 'y'], 'y')
        >>> str((x + y) * (x - y))
        'x^2 - y^2'
    """

    __slots__ = ('_variables', '_terms', '_hash')

    def __init__(self, variables: Sequence[str], terms: Mapping[Sequence[int], object] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise UsageError(f"duplicate variable names in {list(variables)}")
        for name in variables:
            if not isinstance(name, str) or not name:
                raise UsageError(f"invalid variable name {name!r}")

        clean: dict[Monomial, Coefficient] = {}
        inner_vars: tuple[str, ...] | None = None
        for raw_mono, raw_coeff in (terms or {}).items():
            mono = tuple(raw_mono)
            if len(mono) != len(variables) or any(not isinstance(e, int) or e < 0 for e in mono):
                raise UsageError(f"monomial {raw_mono} does not match variables {list(variables)}")
            coeff = _normalize_coefficient(raw_coeff, variables)
            if isinstance(coeff, Poly):
                if inner_vars is None:
                    inner_vars = coeff.variables
                elif coeff.variables != inner_vars:
                    raise UsageError("coefficient polynomials must share one variable list")
            if coeff != 0:
                clean[mono] = _demote(clean.get(mono, Fraction(0)) + coeff)
                if clean[mono] == 0:
                    del clean[mono]
        self._variables = variables
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict[Monomial, Coefficient]) -> Poly:
        """Build from already-canonical data (no zero coefficients, demoted constants)."""
        obj = cls.__new__(cls)
        obj._variables = variables
        obj._terms = terms
        obj._hash = None
        return obj

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> Poly:
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], value: object) -> Poly:
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> Poly:
        variables = tuple(variables)
        if name not in variables:
            raise UsageError(f"unknown variable {name!r}; declared {list(variables)}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: 1})

    @classmethod
    def monomial(cls, variables: Sequence[str], exponents: Sequence[int] | Mapping[str, int],
                 coefficient: object = 1) -> Poly:
        variables = tuple(variables)
        return cls(variables, {_resolve_monomial(variables, exponents): coefficient})

    # ------------------------------------------------------------------
    # Introspection
    # ------------------------------------------------------------------

    @property
    def variables(self) -> tuple[str, ...]:
        return self._variables

    @property
    def terms(self) -> Mapping[Monomial, Coefficient]:
        return MappingProxyType(self._terms)

    @property
    def coefficient_variables(self) -> tuple[str, ...]:
        """Variables of the coefficient ring; empty for a flat polynomial."""
        for coeff in self._terms.values():
            if isinstance(coeff, Poly):
                return coeff.variables
        return ()

    @property
    def is_flat(self) -> bool:
        return all(not isinstance(c, Poly) for c in self._terms.values())

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._terms)

    def constant_term(self) -> Coefficient:
        return self._terms.get((0,) * len(self._variables), Fraction(0))

    def constant_value(self) -> Fraction:
        """The rational value of a constant flat polynomial."""
        if not self.is_constant():
            raise UsageError(f"polynomial {self} is not constant")
        value = self.constant_term()
        if isinstance(value, Poly):
            raise UsageError(f"polynomial {self} has a symbolic constant value")
        return value

    def total_degree(self) -> int:
        """Total degree in the declared variables (-1 for the zero polynomial)."""
        return max((sum(m) for m in self._terms), default=-1)

    def degree(self, var: str) -> int:
        index = self._index(var)
        return max((m[index] for m in self._terms), default=-1)

    def weighted_degrees(self, weights: Sequence[int]) -> set[int]:
        """Set of weighted degrees of the terms under per-variable weights."""
        return {sum(w * e for w, e in zip(weights, m)) for m in self._terms}

    def used_variables(self) -> tuple[str, ...]:
        used = [False] * len(self._variables)
        for mono in self._terms:
            for i, e in enumerate(mono):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self._variables, used) if u)

    def sorted_terms(self) -> list[tuple[Monomial, Coefficient]]:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda item: monomial_key(item[0]), reverse=True)

    def leading_term(self) -> tuple[Monomial, Coefficient]:
        if not self._terms:
            raise UsageError("the zero polynomial has no leading term")
        mono = max(self._terms, key=monomial_key)
        return mono, self._terms[mono]

    def coeff(self, monomial: Sequence[int] | Mapping[str, int]) -> Coefficient:
        """Coefficient of a monomial (zero if absent)."""
        return self._terms.get(_resolve_monomial(self._variables, monomial), Fraction(0))

    def __iter__(self) -> Iterator[tuple[Monomial, Coefficient]]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self._terms)

    def _index(self, var: str) -> int:
        try:
            return self._variables.index(var)
        except ValueError:
            raise UsageError(f"unknown variable {var!r}; declared {list(self._variables)}") from None

    # ------------------------------------------------------------------
    # Ring operations
    # ------------------------------------------------------------------

    def _coerce(self, other: object) -> Poly | None:
        if isinstance(other, Poly):
            if other._variables != self._variables:
                raise UsageError(
                    f"variable lists differ: {list(self._variables)} vs {list(other._variables)}"
                )
            return other
        if _is_scalar(other):
            return Poly.constant(self._variables, other)
        return None

    def __add__(self, other: object) -> Poly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        terms = dict(self._terms)
        for mono, coeff in rhs._terms.items():
            total = terms.get(mono, Fraction(0)) + coeff
            total = _demote(total)
            if total == 0:
                terms.pop(mono, None)
            else:
                terms[mono] = total
        return Poly._raw(self._variables, terms)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self._variables, {m: -c for m, c in self._terms.items()})

    def __pos__(self) -> Poly:
        return self

    def __sub__(self, other: object) -> Poly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> Poly:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs + (-self)

    def __mul__(self, other: object) -> Poly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if not self._terms or not rhs._terms:
            return Poly._raw(self._variables, {})
        out: dict[Monomial, Coefficient] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in rhs._terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                out[mono] = out.get(mono, Fraction(0)) + c1 * c2
        cleaned = {}
        for mono, coeff in out.items():
            coeff = _demote(coeff)
            if coeff != 0:
                cleaned[mono] = coeff
        return Poly._raw(self._variables, cleaned)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> Poly:
        """Division by a nonzero rational scalar."""
        if not _is_scalar(other):
            return NotImplemented
        if other == 0:
            raise ZeroFunctionError("division of a polynomial by zero")
        return self.scale(1 / Fraction(other))

    def __pow__(self, exponent: int) -> Poly:
        if not isinstance(exponent, int) or exponent < 0:
            raise UsageError(f"polynomial powers need a non-negative integer exponent, got {exponent!r}")
        result = Poly.constant(self._variables, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, factor: object) -> Poly:
        """Multiply every coefficient by a scalar or by a coefficient-ring element."""
        factor = _normalize_coefficient(factor, self._variables)
        if factor == 0:
            return Poly._raw(self._variables, {})
        terms = {}
        for mono, coeff in self._terms.items():
            value = _demote(coeff * factor)
            if value != 0:
                terms[mono] = value
        return Poly._raw(self._variables, terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._variables == other._variables and self._terms == other._terms
        if _is_scalar(other):
            if other == 0:
                return not self._terms
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash((self._variables, frozenset(self._terms.items())))
        return self._hash

    # ------------------------------------------------------------------
    # Calculus and substitution
    # ------------------------------------------------------------------

    def diff(self, var: str, order: int = 1) -> Poly:
        """Iterated partial derivative ``d^order / d var^order``."""
        if not isinstance(order, int) or order < 0:
            raise UsageError(f"derivative order must be a non-negative integer, got {order!r}")
        index = self._index(var)
        if order == 0:
            return self
        terms: dict[Monomial, Coefficient] = {}
        for mono, coeff in self._terms.items():
            e = mono[index]
            if e < order:
                continue
            falling = 1
            for k in range(order):
                falling *= e - k
            new = mono[:index] + (e - order,) + mono[index + 1:]
            terms[new] = _demote(coeff * falling)
        return Poly._raw(self._variables, terms)

    def subs(self, assignment: Mapping[str, object]) -> Poly:
        """Substitute values for variables.

        Rational values keep the declared variable list and leave unassigned
        variables symbolic. Polynomial values must share one variable list V;
        the result lives over V, and every unassigned variable in use must
        also appear in V. Names from the coefficient ring of a tower accept
        rational values only.
        """
        outer: dict[str, object] = {}
        inner: dict[str, object] = {}
        inner_vars = self.coefficient_variables
        for name, value in assignment.items():
            if name in self._variables:
                outer[name] = value
            elif name in inner_vars:
                if not _is_scalar(value):
                    raise UsageError(f"coefficient variable {name!r} accepts rational values only")
                inner[name] = value
            else:
                raise UsageError(f"unknown variable {name!r}; declared {list(self._variables)}")

        source = self
        if inner:
            terms = {}
            for mono, coeff in self._terms.items():
                value = _demote(coeff.subs(inner)) if isinstance(coeff, Poly) else coeff
                if value != 0:
                    terms[mono] = value
            source = Poly._raw(self._variables, terms)
        if not outer:
            return source

        poly_values = [v for v in outer.values() if isinstance(v, Poly)]
        for name, value in outer.items():
            if not isinstance(value, Poly) and not _is_scalar(value):
                raise UsageError(f"cannot substitute {value!r} for {name!r}")
        if not poly_values:
            return source._subs_scalars(outer)

        target = poly_values[0].variables
        for value in poly_values:
            if value.variables != target:
                raise UsageError("substituted polynomials must share one variable list")
        images: list[Poly] = []
        for name in self._variables:
            if name in outer:
                value = outer[name]
                images.append(value if isinstance(value, Poly) else Poly.constant(target, value))
            elif name in target:
                images.append(Poly.variable(target, name))
            else:
                images.append(None)  # type: ignore[arg-type]

        power_cache: dict[tuple[int, int], Poly] = {}
        result = Poly.zero(target)
        for mono, coeff in source._terms.items():
            piece = Poly.constant(target, coeff)
            for i, e in enumerate(mono):
                if not e:
                    continue
                if images[i] is None:
                    raise UsageError(
                        f"variable {self._variables[i]!r} is neither assigned nor in {list(target)}"
                    )
                key = (i, e)
                if key not in power_cache:
                    power_cache[key] = images[i] ** e
                piece = piece * power_cache[key]
            result = result + piece
        return result

    def _subs_scalars(self, values: Mapping[str, object]) -> Poly:
        indexed = [(self._variables.index(name), Fraction(v)) for name, v in values.items()]  # type: ignore[arg-type]
        terms: dict[Monomial, Coefficient] = {}
        for mono, coeff in self._terms.items():
            factor = Fraction(1)
            new = list(mono)
            for i, value in indexed:
                if new[i]:
                    factor *= value ** new[i]
                    new[i] = 0
            key = tuple(new)
            terms[key] = terms.get(key, Fraction(0)) + coeff * factor
        return Poly._raw(self._variables, {m: _demote(c) for m, c in terms.items() if c != 0})

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        """Fully evaluate at rational values (every used variable must be assigned)."""
        return self.subs(values).constant_value()

    # ------------------------------------------------------------------
    # Variable-list management
    # ------------------------------------------------------------------

    def with_variables(self, variables: Sequence[str]) -> Poly:
        """Re-index onto another variable list; variables in use must be kept."""
        variables = tuple(variables)
        if variables == self._variables:
            return self
        positions = []
        for i, name in enumerate(self._variables):
            if name in variables:
                positions.append((i, variables.index(name)))
        kept = {i for i, _ in positions}
        for mono in self._terms:
            for i, e in enumerate(mono):
                if e and i not in kept:
                    raise UsageError(
                        f"variable {self._variables[i]!r} is in use and missing from {list(variables)}"
                    )
        if set(variables) & set(self.coefficient_variables):
            raise UsageError("outer variables must stay disjoint from the coefficient ring")
        terms = {}
        for mono, coeff in self._terms.items():
            new = [0] * len(variables)
            for i, j in positions:
                new[j] = mono[i]
            terms[tuple(new)] = coeff
        return Poly._raw(variables, terms)

    def split(self, outer: Sequence[str]) -> Poly:
        """View a flat polynomial as a polynomial over ``outer`` with polynomial coefficients.

        The coefficient ring keeps the remaining variables in declared order.
        """
        if not self.is_flat:
            raise UsageError("split() needs a flat polynomial")
        outer = tuple(outer)
        for name in outer:
            self._index(name)
        inner = tuple(v for v in self._variables if v not in outer)
        outer_idx = [self._variables.index(v) for v in outer]
        inner_idx = [self._variables.index(v) for v in inner]
        grouped: dict[Monomial, dict[Monomial, Coefficient]] = {}
        for mono, coeff in self._terms.items():
            o = tuple(mono[i] for i in outer_idx)
            n = tuple(mono[i] for i in inner_idx)
            grouped.setdefault(o, {})[n] = coeff
        terms = {o: _demote(Poly._raw(inner, sub)) for o, sub in grouped.items()}
        return Poly._raw(outer, terms)

    def flatten(self) -> Poly:
        """Inverse of ``split``: one flat polynomial over outer + coefficient variables."""
        inner = self.coefficient_variables
        if not inner:
            return self
        variables = self._variables + inner
        terms: dict[Monomial, Coefficient] = {}
        for mono, coeff in self._terms.items():
            if isinstance(coeff, Poly):
                for sub_mono, sub_coeff in coeff._terms.items():
                    terms[mono + sub_mono] = sub_coeff
            else:
                terms[mono + (0,) * len(inner)] = coeff
        return Poly._raw(variables, terms)

    # ------------------------------------------------------------------
    # Division and truncated series
    # ------------------------------------------------------------------

    def divide_exact(self, divisor: Poly) -> Poly | None:
        """Exact quotient ``self / divisor``, or None when the division leaves a remainder."""
        divisor = self._coerce(divisor)  # type: ignore[assignment]
        if divisor is None or not divisor._terms:
            raise ZeroFunctionError("exact division by the zero polynomial")
        if not (self.is_flat and divisor.is_flat):
            raise UsageError("exact division needs flat polynomials")
        if not self._terms:
            return self
        lead_mono, lead_coeff = divisor.leading_term()
        remainder = dict(self._terms)
        quotient: dict[Monomial, Coefficient] = {}
        while remainder:
            mono = max(remainder, key=monomial_key)
            shift = tuple(a - b for a, b in zip(mono, lead_mono))
            if any(e < 0 for e in shift):
                return None
            factor = remainder[mono] / lead_coeff
            quotient[shift] = factor
            for d_mono, d_coeff in divisor._terms.items():
                key = tuple(a + b for a, b in zip(d_mono, shift))
                value = remainder.get(key, Fraction(0)) - factor * d_coeff
                if value == 0:
                    remainder.pop(key, None)
                else:
                    remainder[key] = value
        return Poly._raw(self._variables, quotient)

    def truncate(self, max_degree: int) -> Poly:
        """Drop every term of total degree above ``max_degree``."""
        return Poly._raw(self._variables, {m: c for m, c in self._terms.items() if sum(m) <= max_degree})

    def series_inverse(self, max_degree: int) -> Poly:
        """Power-series inverse truncated at ``max_degree``; needs a nonzero constant term."""
        c0 = self.constant_term()
        if c0 == 0:
            raise ZeroFunctionError(f"{self} has no power-series inverse (zero constant term)")
        if isinstance(c0, Poly) or not self.is_flat:
            raise UsageError("series inversion needs a flat polynomial")
        # 1/(c0 (1 + v)) = (1/c0) * sum_k (-v)^k, and v has no constant term
        step = -(self.scale(1 / c0) - 1)
        result = Poly.constant(self._variables, 1)
        power = Poly.constant(self._variables, 1)
        for _ in range(max_degree):
            power = (power * step).truncate(max_degree)
            if power.is_zero():
                break
            result = result + power
        return result.scale(1 / c0)

    # ------------------------------------------------------------------
    # Rendering
    # ------------------------------------------------------------------

    def monomial_text(self, mono: Monomial) -> str:
        parts = []
        for name, e in zip(self._variables, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for mono, coeff in self.sorted_terms():
            mono_text = self.monomial_text(mono)
            if isinstance(coeff, Poly):
                sign = "+"
                body = f"({coeff})" + (f"*{mono_text}" if mono_text else "")
            else:
                sign = "-" if coeff < 0 else "+"
                magnitude = abs(coeff)
                if not mono_text:
                    body = format_rational(magnitude)
                elif magnitude == 1:
                    body = mono_text
                else:
                    body = f"{format_rational(magnitude)}*{mono_text}"
            if not pieces:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, variables={list(self._variables)!r})"


def _resolve_monomial(variables: tuple[str, ...], monomial: Sequence[int] | Mapping[str, int]) -> Monomial:
    if isinstance(monomial, Mapping):
        exps = [0] * len(variables)
        for name, e in monomial.items():
            if name not in variables:
                raise UsageError(f"unknown variable {name!r}; declared {list(variables)}")
            exps[variables.index(name)] = e
        monomial = exps
    mono = tuple(monomial)
    if len(mono) != len(variables) or any(not isinstance(e, int) or e < 0 for e in mono):
        raise UsageError(f"monomial {monomial} does not match variables {list(variables)}")
    return mono


def _demote(value: Coefficient) -> Coefficient:
    """Constant coefficient polynomials collapse to rationals."""
    if isinstance(value, Poly) and value.is_constant():
        return value.constant_term()
    return value


def _normalize_coefficient(value: object, outer: tuple[str, ...]) -> Coefficient:
    if isinstance(value, Poly):
        if not value.is_flat:
            raise UsageError("coefficient towers deeper than two levels are not supported")
        if set(value.variables) & set(outer):
            raise UsageError(
                f"coefficient variables {list(value.variables)} overlap {list(outer)}"
            )
        return _demote(value)
    if _is_scalar(value):
        return Fraction(value)
    raise UsageError(f"unsupported coefficient {value!r}")


