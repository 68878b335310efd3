"""Weighted projective planes P^2_w with the torus field xi_a = sum a_k Z_k d/dZ_k.

For pairwise-coprime weights the fixed points of xi_a are the three
coordinate points. At point i the uniformizing chart has cyclic group of
order w_i and the lifted field is diagonal with eigenvalues

    lambda_k = (a_k w_i - a_i w_k) / w_i,   k != i.

Clearing the known denominators of the Futaki character gives the
obstruction polynomial

    zeta = -9 * w0^2 w1^2 w2^2 * prod_{i<j} (a_i w_j - a_j w_i) * f(xi_a),

homogeneous of degree 4 in a. A point a where zeta does not vanish is a
witness field with nonzero Futaki character.

Example:
    >>> from residue_futaki.analysis import Weights, TorusFieldParams, futaki_wps, ke_obstruction
    >>> str(futaki_wps(Weights(1, 1, 2), TorusFieldParams.of(0, 1, 3)))
    '-16/9'
    >>> ke_obstruction(Weights(1, 2, 3), seed=7).verdict
    'OBSTRUCTED'
"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd, prod
from typing import Literal

import pandas as pd

from ..core.arith import Poly, RatFunc, exact_value, format_rational
from ..core.exprio import WPS_PARAM_VARS, WPS_WEIGHT_VARS, parse_poly, parse_rational
from ..core.futaki import (
    FixedPointChart,
    InvariantPolynomial,
    InvariantValue,
    characteristic_number,
    futaki_character,
)
from ..core.residue import ResidueCaps, VectorFieldGerm
from ..errors import IntegrityError, UsageError
from ..utils.config import WITNESS_DRAWS_PER_RANGE, WITNESS_RANGES

logger = logging.getLogger(__name__)

Verdict = Literal['OBSTRUCTED', 'NO_OBSTRUCTION_FOUND']
Value = Fraction | RatFunc

CHART_VARS = ('z1', 'z2')
SWEEP_RADIUS = 4


@dataclass(frozen=True)
class Weights:
    """Positive integer weights (w0, w1, w2)."""

    w0: int
    w1: int
    w2: int

    def __post_init__(self):
        for name, w in zip(WPS_WEIGHT_VARS, self.as_tuple()):
            if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                raise UsageError(f"weight {name} must be a positive integer, got {w!r}")

    @classmethod
    def parse(cls, text: str) -> Weights:
        parts = [p.strip() for p in text.split(',')]
        if len(parts) != 3:
            raise UsageError(f"exactly 3 weights required, got {len(parts)}")
        try:
            return cls(*(int(p) for p in parts))
        except ValueError:
            raise UsageError(f"weights must be positive integers, got {text!r}") from None

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.w0, self.w1, self.w2)

    def __iter__(self) -> Iterator[int]:
        return iter(self.as_tuple())

    def __getitem__(self, i: int) -> int:
        return self.as_tuple()[i]

    @property
    def total(self) -> int:
        return self.w0 + self.w1 + self.w2

    def is_pairwise_coprime(self) -> bool:
        return all(gcd(self[i], self[j]) == 1 for i, j in combinations(range(3), 2))

    def __str__(self) -> str:
        return ",".join(str(w) for w in self)


@dataclass(frozen=True)
class TorusFieldParams:
    """Field parameters (a0, a1, a2); ``values`` is None for symbolic a."""

    values: tuple[Fraction, Fraction, Fraction] | None = None

    @classmethod
    def of(cls, a0, a1, a2) -> TorusFieldParams:
        return cls((Fraction(a0), Fraction(a1), Fraction(a2)))

    @classmethod
    def symbolic(cls) -> TorusFieldParams:
        return cls(None)

    @classmethod
    def parse(cls, texts: Sequence[str]) -> TorusFieldParams:
        if len(texts) != 3:
            raise UsageError(f"exactly 3 params required, got {len(texts)}")
        return cls(tuple(parse_rational(t) for t in texts))  # type: ignore[arg-type]

    @property
    def is_symbolic(self) -> bool:
        return self.values is None

    def __getitem__(self, i: int) -> Fraction:
        if self.values is None:
            raise UsageError("symbolic params have no numeric values")
        return self.values[i]

    def __str__(self) -> str:
        if self.values is None:
            return "symbolic"
        return ",".join(format_rational(v) for v in self.values)


@dataclass(frozen=True)
class Violation:
    """One failed precondition: ``kind`` is 'coprimality' or 'genericity'."""

    kind: str
    pair: tuple[int, int]
    message: str


def validate_params(w: Weights, a: TorusFieldParams | None = None) -> list[Violation]:
    """Check pairwise coprimality and, for numeric a, ``a_i w_j != a_j w_i``. Never raises."""
    violations = []
    for i, j in combinations(range(3), 2):
        if gcd(w[i], w[j]) != 1:
            violations.append(Violation(
                'coprimality', (i, j), f"w{i}={w[i]} and w{j}={w[j]} are not coprime"))
    if a is not None and not a.is_symbolic:
        for i, j in combinations(range(3), 2):
            if a[i] * w[j] == a[j] * w[i]:
                violations.append(Violation(
                    'genericity', (i, j), f"a{i}*w{j} = a{j}*w{i} = {format_rational(a[i] * w[j])}"))
    return violations


def _require_valid(w: Weights, a: TorusFieldParams | None) -> None:
    violations = validate_params(w, a)
    if violations:
        raise UsageError("; ".join(v.message for v in violations))


def _param_values(a: TorusFieldParams, ring: tuple[str, ...]) -> list[Poly]:
    if a.is_symbolic:
        return [Poly.variable(ring, name) for name in WPS_PARAM_VARS]
    return [Poly.constant(ring, a[i]) for i in range(3)]


def fixed_point_charts(w: Weights, a: TorusFieldParams) -> list[FixedPointChart]:
    """The three uniformizing charts at the coordinate points.

    Raises:
        UsageError: Weights not coprime or parameters not generic.
    """
    _require_valid(w, a)
    parameters = WPS_PARAM_VARS if a.is_symbolic else ()
    ring = CHART_VARS + parameters
    avals = _param_values(a, ring)
    charts = []
    for i in range(3):
        others = [k for k in range(3) if k != i]
        components = []
        for z, k in zip(CHART_VARS, others):
            eigenvalue = (avals[k] * w[i] - avals[i] * w[k]) / w[i]
            components.append(eigenvalue * Poly.variable(ring, z))
        charts.append(FixedPointChart(w[i], VectorFieldGerm(CHART_VARS, components, parameters)))
    return charts


def chart_eigenvalues(chart: FixedPointChart) -> list[Poly]:
    """Diagonal entries of a chart's linear germ (coefficient of z_k in component k)."""
    germ = chart.germ
    return [c.diff(z).subs({v: 0 for v in germ.variables}) for c, z in zip(germ.components, germ.variables)]


def _closed_form(a: Sequence[Value | Poly], w: Sequence[Value | Poly], symbolic: bool) -> Value:
    """-(1/9) sum_i (sum_{k!=i} d_ik)^3 / (w_i^2 prod_{k!=i} d_ik), d_ik = a_k w_i - a_i w_k."""
    total: Value = Fraction(0)
    for i in range(3):
        d = [a[k] * w[i] - a[i] * w[k] for k in range(3) if k != i]
        numerator = (d[0] + d[1]) ** 3
        if symbolic:
            term: Value = RatFunc.from_factors(numerator, [w[i], w[i], d[0], d[1]])
        else:
            term = Fraction(numerator) / (w[i] ** 2 * d[0] * d[1])
        total = total + term
    return total * Fraction(-1, 9)


def closed_form_futaki(w: Weights | None, a: TorusFieldParams) -> Value:
    """Futaki character of xi_a from the closed chart formula (symbolic w allowed)."""
    if w is None or a.is_symbolic:
        ring = WPS_PARAM_VARS + (WPS_WEIGHT_VARS if w is None else ())
        avals = _param_values(a, ring)
        wvals = [Poly.variable(ring, name) for name in WPS_WEIGHT_VARS] if w is None \
            else [Poly.constant(ring, wi) for wi in w]
        value = _closed_form(avals, wvals, symbolic=True)
        if isinstance(value, RatFunc) and not a.is_symbolic:
            value = value.restrict(WPS_WEIGHT_VARS)
        return value
    _require_valid(w, a)
    return _closed_form(list(a.values), [Fraction(wi) for wi in w], symbolic=False)


def futaki_wps(w: Weights | None, a: TorusFieldParams, caps: ResidueCaps | None = None) -> InvariantValue:
    """Futaki character of xi_a on P^2_w.

    Numeric weights: the residue sum over the fixed-point charts, checked
    against the closed form. Symbolic weights (``w=None``): the closed form.

    Raises:
        IntegrityError: The chart sum and the closed form disagree.
    """
    closed = closed_form_futaki(w, a)
    if w is None:
        return InvariantValue(closed, 2, 1, "Tr^3", Fraction(-1, 9))
    value = futaki_character(fixed_point_charts(w, a), caps)
    if (value.value - closed) != 0:
        raise IntegrityError(
            f"chart sum {exact_value(value.value)} differs from closed form {exact_value(closed)} for w=({w})"
        )
    logger.debug("f(xi_a) for w=(%s), a=(%s): %s", w, a, value)
    return value


def parse_monomial(text: str) -> dict[str, int]:
    """Parse a monomial such as ``a0^2*a1*a2`` into exponents."""
    p = parse_poly(text, WPS_PARAM_VARS)
    if len(p) != 1 or p.leading_term()[1] != 1:
        raise UsageError(f"{text!r} is not a monomial in a0, a1, a2")
    mono = p.leading_term()[0]
    return dict(zip(WPS_PARAM_VARS, mono))


@dataclass(frozen=True)
class ObstructionPolynomial:
    """zeta as a flat polynomial over a (numeric w) or a + w (``weights`` None)."""

    zeta: Poly
    weights: Weights | None

    def is_zero(self) -> bool:
        return self.zeta.is_zero()

    def as_tower(self) -> Poly:
        """zeta over a0, a1, a2 with coefficients in Q or Q[w0, w1, w2]."""
        if self.weights is not None:
            return self.zeta
        return self.zeta.split(WPS_PARAM_VARS)

    def coefficient(self, monomial: str | Mapping[str, int] | Sequence[int]) -> Fraction | Poly:
        if isinstance(monomial, str):
            monomial = parse_monomial(monomial)
        return self.as_tower().coeff(monomial)

    def evaluate(self, a: Sequence[object]) -> Fraction | Poly:
        """zeta at numeric a: a rational, or a polynomial in w for symbolic weights."""
        values = dict(zip(WPS_PARAM_VARS, (Fraction(x) for x in a)))  # type: ignore[arg-type]
        result = self.zeta.subs(values)
        if self.weights is not None:
            return result.constant_value()
        return result.with_variables(WPS_WEIGHT_VARS)

    def __str__(self) -> str:
        return str(self.zeta)


def zeta(w: Weights | None) -> ObstructionPolynomial:
    """The obstruction polynomial for numeric or symbolic (``None``) weights.

    Numeric weights go through the symbolic-a chart residues; symbolic
    weights through the closed form.

    Raises:
        IntegrityError: A denominator survives, or zeta is not of degree 4 in a.
    """
    a = TorusFieldParams.symbolic()
    if w is None:
        ring = WPS_PARAM_VARS + WPS_WEIGHT_VARS
        wvals = [Poly.variable(ring, name) for name in WPS_WEIGHT_VARS]
        f = closed_form_futaki(None, a)
    else:
        if not w.is_pairwise_coprime():
            f = closed_form_futaki(w, a)
        else:
            f = futaki_wps(w, a).value
        ring = WPS_PARAM_VARS
        wvals = [Poly.constant(ring, wi) for wi in w]
    avals = [Poly.variable(ring, name) for name in WPS_PARAM_VARS]

    prefactor = Poly.constant(ring, -9)
    for wi in wvals:
        prefactor = prefactor * wi ** 2
    for i, j in combinations(range(3), 2):
        prefactor = prefactor * (avals[i] * wvals[j] - avals[j] * wvals[i])

    if isinstance(f, Fraction):
        product_ = RatFunc(prefactor.scale(f))
    else:
        product_ = f * prefactor
    if not product_.is_polynomial():
        raise IntegrityError(f"zeta kept denominator factors {dict(product_.denominator_factors)}")
    poly = product_.to_poly()
    degrees = poly.weighted_degrees([1, 1, 1] + [0] * (len(ring) - 3))
    if degrees and degrees != {4}:
        raise IntegrityError(f"zeta is not homogeneous of degree 4 in a (degrees {sorted(degrees)})")
    logger.info("zeta for w=%s has %d terms", "symbolic" if w is None else f"({w})", len(poly))
    return ObstructionPolynomial(poly, w)


@dataclass(frozen=True)
class Obstructed:
    witness: tuple[Fraction, Fraction, Fraction]
    futaki: Fraction
    zeta_value: Fraction
    verdict: Verdict = 'OBSTRUCTED'


@dataclass(frozen=True)
class NoObstructionFound:
    verdict: Verdict = 'NO_OBSTRUCTION_FOUND'


def _witness_candidates(seed: int) -> Iterator[tuple[int, int, int]]:
    rng = random.Random(seed)
    for radius in WITNESS_RANGES:
        logger.debug("witness draws in [-%d, %d]^3", radius, radius)
        for _ in range(WITNESS_DRAWS_PER_RANGE):
            yield (rng.randint(-radius, radius), rng.randint(-radius, radius), rng.randint(-radius, radius))
        logger.warning("no witness among %d draws in [-%d, %d]^3", WITNESS_DRAWS_PER_RANGE, radius, radius)
    yield from product(range(-SWEEP_RADIUS, SWEEP_RADIUS + 1), repeat=3)


def ke_obstruction(w: Weights, seed: int = 0, caps: ResidueCaps | None = None) -> Obstructed | NoObstructionFound:
    """Decide whether the Futaki character obstructs a Kahler-Einstein metric on P^2_w.

    Valid weights always yield a verdict. IntegrityError is an internal
    consistency guard only and signals a bug in the residue or zeta
    computations, never a property of the input.

    Raises:
        UsageError: Weights not pairwise coprime.
        IntegrityError: Internal guard. Either a witness with zeta(a) != 0 has
            f(xi_a) = 0, or zeta is nonzero and no lattice point witnesses it.
    """
    _require_valid(w, None)
    obstruction = zeta(w)
    if obstruction.is_zero():
        logger.info("zeta vanishes for w=(%s)", w)
        return NoObstructionFound()
    for candidate in _witness_candidates(seed):
        a = TorusFieldParams.of(*candidate)
        if validate_params(w, a):
            continue
        value = obstruction.evaluate(a.values)  # type: ignore[arg-type]
        if value == 0:
            continue
        f = futaki_wps(w, a, caps).value
        if f == 0:
            raise IntegrityError(f"zeta({a}) = {exact_value(value)} but f(xi_a) = 0 for w=({w})")
        return Obstructed(a.values, f, value)  # type: ignore[arg-type]
    # A nonzero quartic cannot vanish on the whole sweep grid
    raise IntegrityError(f"no witness found for w=({w}) although zeta is nonzero")


def default_params(w: Weights) -> TorusFieldParams:
    """First generic a in the sweep over {0..8}^3."""
    for candidate in product(range(0, 9), repeat=3):
        a = TorusFieldParams.of(*candidate)
        if not [v for v in validate_params(w, a) if v.kind == 'genericity']:
            return a
    raise UsageError(f"no generic params found for w=({w})")


def euler_chern_number(w: Weights, phi: InvariantPolynomial) -> Fraction:
    """phi(c1 = |w| H, c2 = sigma2(w) H^2) integrated with int H^2 = 1/(w0 w1 w2)."""
    if phi.n != 2 or phi.k != 0:
        raise UsageError("Chern numbers of P^2_w need a degree-2 invariant polynomial in c1, c2")
    sigma2 = w[0] * w[1] + w[0] * w[2] + w[1] * w[2]
    value = phi.expression.evaluate({'c1': w.total, 'c2': sigma2})
    return value / prod(w)


def chern_number_wps(w: Weights, phi: InvariantPolynomial,
                     a: TorusFieldParams | None = None, caps: ResidueCaps | None = None) -> Fraction:
    """Characteristic number of P^2_w by residues, checked against the Euler sequence.

    Raises:
        UsageError: Invalid weights/params or phi not of degree 2.
        IntegrityError: The residue sum disagrees with the Euler-sequence value.
    """
    if phi.n != 2 or phi.k != 0:
        raise UsageError("Chern numbers of P^2_w need a degree-2 invariant polynomial in c1, c2")
    a = a or default_params(w)
    value = characteristic_number(fixed_point_charts(w, a), phi, caps).value
    expected = euler_chern_number(w, phi)
    if value != expected:
        raise IntegrityError(
            f"Chern number {exact_value(value)} for phi={phi} differs from {format_rational(expected)}"
        )
    return value  # type: ignore[return-value]


def pairwise_coprime_triples(max_weight: int) -> Iterator[Weights]:
    """Pairwise-coprime triples in [1, max_weight]^3 with some weight above 1."""
    for triple in product(range(1, max_weight + 1), repeat=3):
        w = Weights(*triple)
        if max(triple) > 1 and w.is_pairwise_coprime():
            yield w


def obstruction_sweep(max_weight: int = 10, seed: int = 0) -> pd.DataFrame:
    """Run ``ke_obstruction`` over every pairwise-coprime triple up to ``max_weight``.

    Returns:
        DataFrame with columns w0, w1, w2, verdict, a0, a1, a2, futaki
        (witness columns empty when no obstruction is found).
    """
    rows = []
    for w in pairwise_coprime_triples(max_weight):
        result = ke_obstruction(w, seed)
        row = {'w0': w.w0, 'w1': w.w1, 'w2': w.w2, 'verdict': result.verdict}
        if isinstance(result, Obstructed):
            row.update({f'a{i}': format_rational(x) for i, x in enumerate(result.witness)})
            row['futaki'] = format_rational(result.futaki)
        else:
            row.update({'a0': None, 'a1': None, 'a2': None, 'futaki': None})
        rows.append(row)
    df = pd.DataFrame(rows, columns=['w0', 'w1', 'w2', 'verdict', 'a0', 'a1', 'a2', 'futaki'])
    logger.info("swept %d weight triples, %d obstructed", len(df), int((df['verdict'] == 'OBSTRUCTED').sum()))
    return df
