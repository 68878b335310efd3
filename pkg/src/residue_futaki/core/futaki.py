"""Futaki-type invariants as weighted sums of point residues over fixed points.

For an invariant polynomial phi of degree n + k,

    C(n+k, n) * f_phi = (-1)^k * sum_p 1/#G_p * Res_p{ phi(J xi) dz / (xi_1 ... xi_n) }

and the Futaki character is f = -1/(n+1)^2 * sum_p 1/#G_p * Res_p{ Tr^(n+1)(J xi) ... },
which equals f_phi / (n+1) for phi = c1^(n+1).
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from ..errors import ChartComputationError, IntegrityError, ResidueFutakiError, UsageError
from ..utils.config import worker_count
from .arith import Poly, PolyMatrix, RatFunc, exact_value
from .exprio import parse_poly
from .residue import ResidueCaps, ResidueValue, VectorFieldGerm, grothendieck_residue, jacobian

logger = logging.getLogger(__name__)

Value = Fraction | RatFunc


def chern_symbols(n: int) -> tuple[str, ...]:
    return tuple(f'c{j}' for j in range(1, n + 1))


class InvariantPolynomial:
    """Weighted-homogeneous polynomial in c1..cn, where c_j has weight j.

    ``Tr^m`` is ``c1^m``. The zero polynomial takes its degree from ``degree``
    (default n).
    """

    def __init__(self, n: int, expression: Poly, degree: int | None = None):
        if n < 1:
            raise UsageError(f"dimension must be positive, got {n}")
        symbols = chern_symbols(n)
        expression = expression.with_variables(symbols)
        degrees = expression.weighted_degrees(range(1, n + 1))
        if len(degrees) > 1:
            raise UsageError(f"{expression} is not weighted-homogeneous (degrees {sorted(degrees)})")
        if degrees:
            found = degrees.pop()
            if degree is not None and degree != found:
                raise UsageError(f"{expression} has weighted degree {found}, not {degree}")
            degree = found
        elif degree is None:
            degree = n
        if degree < n:
            raise UsageError(f"invariant polynomial degree {degree} is below the dimension {n}")
        self.n = n
        self.expression = expression
        self.degree = degree

    @classmethod
    def parse(cls, text: str, n: int, degree: int | None = None) -> InvariantPolynomial:
        return cls(n, parse_poly(text, chern_symbols(n)), degree)

    @classmethod
    def trace_power(cls, m: int, n: int) -> InvariantPolynomial:
        return cls(n, Poly.variable(chern_symbols(n), 'c1') ** m)

    @property
    def k(self) -> int:
        return self.degree - self.n

    def __str__(self) -> str:
        return str(self.expression)

    def __repr__(self) -> str:
        return f"InvariantPolynomial({self.expression}, n={self.n})"


@dataclass(frozen=True)
class FixedPointChart:
    """Uniformizing chart at an isolated fixed point: local group order and lifted germ.

    The germ must be written in uniformizing coordinates; nothing here can check that.
    """

    group_order: int
    germ: VectorFieldGerm

    def __post_init__(self):
        if not isinstance(self.group_order, int) or self.group_order < 1:
            raise UsageError(f"group order must be a positive integer, got {self.group_order!r}")


@dataclass(frozen=True)
class ChartContribution:
    index: int
    group_order: int
    residue: ResidueValue
    weighted: Value


@dataclass(frozen=True)
class InvariantValue:
    """An invariant value together with the chart terms it was folded from."""

    value: Value
    n: int
    k: int
    phi: str
    prefactor: Fraction
    contributions: tuple[ChartContribution, ...] = ()

    def __str__(self) -> str:
        return exact_value(self.value)

    def to_document(self) -> dict:
        return {
            'value': exact_value(self.value),
            'n': self.n,
            'k': self.k,
            'phi': self.phi,
            'prefactor': exact_value(self.prefactor),
            'charts': [
                {
                    'index': c.index,
                    'order': c.group_order,
                    'residue': exact_value(c.residue.value),
                    'method': c.residue.method,
                    'weighted': exact_value(c.weighted),
                }
                for c in self.contributions
            ],
        }


def eval_invariant_on_matrix(phi: InvariantPolynomial, matrix: PolyMatrix) -> Poly:
    """``phi`` with c_j replaced by the j-th coefficient of ``det(tI + M)``."""
    if matrix.shape != (phi.n, phi.n):
        raise UsageError(f"phi has dimension {phi.n} but the matrix is {matrix.rows}x{matrix.cols}")
    coeffs = matrix.charpoly_coeffs()
    return phi.expression.subs({f'c{j + 1}': c for j, c in enumerate(coeffs)})


def _chart_sum(charts: Sequence[FixedPointChart], numerator_of, caps: ResidueCaps | None,
               label: str) -> tuple[Value, tuple[ChartContribution, ...]]:
    """Fold ``Res_p / #G_p`` over charts in chart order."""

    def contribution(item: tuple[int, FixedPointChart]) -> ChartContribution:
        index, chart = item
        try:
            residue = grothendieck_residue(chart.germ, numerator_of(chart.germ), caps)
        except UsageError:
            raise
        except ResidueFutakiError as e:
            raise ChartComputationError(index, e) from e
        weighted = residue.value / chart.group_order
        logger.debug("%s chart %d (order %d): residue %s", label, index, chart.group_order, residue)
        return ChartContribution(index, chart.group_order, residue, weighted)

    workers = min(worker_count(), len(charts))
    items = list(enumerate(charts))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            contributions = tuple(executor.map(contribution, items))
    else:
        contributions = tuple(contribution(item) for item in items)

    total: Value = Fraction(0)
    for c in contributions:
        total = total + c.weighted
    return total, contributions


def _check_dimensions(charts: Sequence[FixedPointChart], n: int) -> None:
    for index, chart in enumerate(charts):
        if chart.germ.n != n:
            raise UsageError(f"chart {index} has dimension {chart.germ.n}, expected {n}")


def morita_futaki(charts: Sequence[FixedPointChart], phi: InvariantPolynomial,
                  caps: ResidueCaps | None = None) -> InvariantValue:
    """``f_phi = (-1)^k / C(n+k, n) * sum_p Res_p{phi(J xi)} / #G_p``."""
    _check_dimensions(charts, phi.n)
    total, contributions = _chart_sum(
        charts, lambda germ: eval_invariant_on_matrix(phi, jacobian(germ)), caps, f"phi={phi}"
    )
    prefactor = Fraction((-1) ** phi.k, comb(phi.degree, phi.n))
    value = _simplify(total * prefactor)
    logger.info("f_phi for phi=%s over %d charts: %s", phi, len(charts), exact_value(value))
    return InvariantValue(value, phi.n, phi.k, str(phi), prefactor, contributions)


def futaki_character(charts: Sequence[FixedPointChart], caps: ResidueCaps | None = None) -> InvariantValue:
    """Futaki character, computed directly and as ``f_{c1^(n+1)} / (n+1)``.

    Raises:
        IntegrityError: The two computations disagree.
    """
    if not charts:
        raise UsageError("the Futaki character needs at least one chart")
    n = charts[0].germ.n
    _check_dimensions(charts, n)

    def trace_power(germ: VectorFieldGerm) -> Poly:
        j = jacobian(germ)
        trace = Poly.zero(j.variables)
        for i in range(n):
            trace = trace + j[i, i]
        return trace ** (n + 1)

    total, contributions = _chart_sum(charts, trace_power, caps, "Tr^(n+1)")
    prefactor = Fraction(-1, (n + 1) ** 2)
    direct = _simplify(total * prefactor)

    via_morita = morita_futaki(charts, InvariantPolynomial.trace_power(n + 1, n), caps)
    scaled = _simplify(via_morita.value * Fraction(1, n + 1))
    if not _same(direct, scaled):
        raise IntegrityError(
            f"Futaki character paths disagree: direct {exact_value(direct)} vs {exact_value(scaled)}"
        )
    return InvariantValue(direct, n, 1, f"Tr^{n + 1}", prefactor, contributions)


def characteristic_number(charts: Sequence[FixedPointChart], phi: InvariantPolynomial,
                          caps: ResidueCaps | None = None) -> InvariantValue:
    """Characteristic number for deg phi = n (k = 0)."""
    if phi.k != 0:
        raise UsageError(f"characteristic numbers need deg phi = n = {phi.n}, got {phi.degree}")
    return morita_futaki(charts, phi, caps)


def _simplify(value: Value) -> Value:
    if isinstance(value, RatFunc) and value.is_polynomial() and value.numerator.is_constant() \
            and value.numerator.is_flat:
        return value.numerator.constant_value()
    return value


def _same(x: Value, y: Value) -> bool:
    return (x - y) == 0
