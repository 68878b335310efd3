"""Independent residue oracles for the test suite.

- ``separable_residue``: exact, for germs whose components each depend on
  one variable. Uses its own truncated series arithmetic, not the engine's.
- ``perturbation_residue``: floating point, 2 variables. Splits the zero
  with a generic linear perturbation, finds the perturbed zeros through a
  resultant in z1 and sums ``h / det J`` over them.

Only the test tree imports this module.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from numpy.polynomial import polynomial as npoly

from src.residue_futaki.core.arith import Poly
from src.residue_futaki.core.residue import VectorFieldGerm
from src.residue_futaki.errors import UsageError

logger = logging.getLogger(__name__)

Monomial = tuple[int, ...]

# Generic linear perturbation z -> A z; entries chosen with no special relations
PERTURBATION = ((0.4285714, 0.4545454), (-0.1538461, 0.5294117))


class OracleInconclusive(Exception):
    """Numerical root isolation did not give a trustworthy answer."""


@dataclass
class SeriesTruncation:
    """Power series in ``variables`` kept up to total degree ``order``."""

    variables: tuple[str, ...]
    order: int
    terms: dict[Monomial, Fraction] = field(default_factory=dict)

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> SeriesTruncation:
        terms = {m: Fraction(c) for m, c in p.terms.items() if sum(m) <= order}
        return cls(p.variables, order, terms)

    @classmethod
    def one(cls, variables: tuple[str, ...], order: int) -> SeriesTruncation:
        return cls(variables, order, {(0,) * len(variables): Fraction(1)})

    def __mul__(self, other: SeriesTruncation) -> SeriesTruncation:
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if sum(m) > self.order:
                    continue
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return SeriesTruncation(self.variables, self.order, {m: c for m, c in out.items() if c})

    def inverse(self) -> SeriesTruncation:
        """Neumann series ``1/c0 * sum_k (1 - s/c0)^k`` up to ``order``."""
        zero = (0,) * len(self.variables)
        c0 = self.terms.get(zero, Fraction(0))
        if c0 == 0:
            raise UsageError("series with zero constant term has no inverse")
        rest = {m: -c / c0 for m, c in self.terms.items() if m != zero}
        r = SeriesTruncation(self.variables, self.order, rest)
        total = SeriesTruncation.one(self.variables, self.order)
        power = SeriesTruncation.one(self.variables, self.order)
        for _ in range(self.order):
            power = power * r
            for m, c in power.terms.items():
                total.terms[m] = total.terms.get(m, Fraction(0)) + c
        return SeriesTruncation(self.variables, self.order,
                                {m: c / c0 for m, c in total.terms.items() if c})

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))


def _separable_parts(germ: VectorFieldGerm) -> list[tuple[int, Poly]]:
    """(a_i, u_i) with xi_i = z_i^a_i * u_i(z_i)."""
    parts = []
    for i, (name, xi) in enumerate(zip(germ.variables, germ.components)):
        xi = xi.with_variables(germ.variables)
        if set(xi.used_variables()) != {name}:
            raise UsageError(f"component {i + 1} ({xi}) does not depend on {name} alone")
        a = min(m[i] for m in xi.terms)
        unit_terms = {}
        for m, c in xi.terms.items():
            shifted = list(m)
            shifted[i] -= a
            unit_terms[tuple(shifted)] = c
        parts.append((a, Poly(germ.variables, unit_terms)))
    return parts


def separable_residue(germ: VectorFieldGerm, numerator: Poly | int | Fraction,
                      order: int | None = None) -> Fraction:
    """Coefficient of ``prod z_i^(a_i-1)`` in ``h * prod 1/u_i``.

    The default truncation order ``deg h + sum(a_i - 1) + 1`` always suffices.

    Raises:
        UsageError: The germ is symbolic or not separable.
    """
    if germ.is_symbolic():
        raise UsageError("separable_residue needs numeric coefficients")
    parts = _separable_parts(germ)
    h = germ.lift(numerator).with_variables(germ.variables)
    if order is None:
        order = max(h.total_degree(), 0) + sum(a - 1 for a, _ in parts) + 1

    series = SeriesTruncation.from_poly(h, order)
    for _, unit in parts:
        series = series * SeriesTruncation.from_poly(unit, order).inverse()
    return series.coefficient(tuple(a - 1 for a, _ in parts))


@dataclass(frozen=True)
class PerturbationEstimate:
    value: float
    error: float
    zeros: int


def _coefficients(p: Poly) -> np.ndarray:
    """Dense array ``c[i, j]`` of ``z1^i z2^j``."""
    dx = max((m[0] for m in p.terms), default=0)
    dy = max((m[1] for m in p.terms), default=0)
    c = np.zeros((dx + 1, dy + 1), dtype=complex)
    for (i, j), coeff in p.terms.items():
        c[i, j] = float(coeff)
    return c


def _sylvester(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Sylvester matrix of two univariate polynomials given low-to-high."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    s = np.zeros((size, size), dtype=complex)
    for row in range(n):
        s[row, row:row + m + 1] = p[::-1]
    for row in range(m):
        s[n + row, row:row + n + 1] = q[::-1]
    return s


class _PerturbedSystem:
    """The perturbed field ``xi + eps * A z`` as dense complex arrays."""

    def __init__(self, components: list[Poly], numerator: Poly, eps: float):
        arrays = []
        for i, xi in enumerate(components):
            c = _coefficients(xi)
            shape = (max(c.shape[0], 2), max(c.shape[1], 2))
            padded = np.zeros(shape, dtype=complex)
            padded[:c.shape[0], :c.shape[1]] = c
            padded[1, 0] += eps * PERTURBATION[i][0]
            padded[0, 1] += eps * PERTURBATION[i][1]
            arrays.append(padded)
        self.p, self.q = arrays
        self.h = _coefficients(numerator)
        self.jac = [[npoly.polyder(c, axis=k) for k in (0, 1)] for c in arrays]

    def residual(self, x: complex, y: complex) -> float:
        return abs(npoly.polyval2d(x, y, self.p)) + abs(npoly.polyval2d(x, y, self.q))

    def jacobian(self, x: complex, y: complex) -> np.ndarray:
        return np.array([[npoly.polyval2d(x, y, d) for d in row] for row in self.jac])

    def polish(self, x: complex, y: complex, steps: int = 8) -> tuple[complex, complex]:
        for _ in range(steps):
            f = np.array([npoly.polyval2d(x, y, self.p), npoly.polyval2d(x, y, self.q)])
            try:
                dx, dy = np.linalg.solve(self.jacobian(x, y), -f)
            except np.linalg.LinAlgError:
                break
            x, y = x + dx, y + dy
        return x, y

    def resultant_roots(self, radius: float) -> np.ndarray:
        """Roots in z1 of the z2-resultant, interpolated on the circle |z1| = radius."""
        m, n = self.p.shape[1] - 1, self.q.shape[1] - 1
        bound = (sum(self.p.shape) - 2) * (sum(self.q.shape) - 2)
        samples = bound + 1
        points = radius * np.exp(2j * np.pi * np.arange(samples) / samples)
        values = []
        for x in points:
            px = npoly.polyval(x, self.p)
            qx = npoly.polyval(x, self.q)
            values.append(np.linalg.det(_sylvester(px[:m + 1], qx[:n + 1])))
        coeffs = np.fft.fft(np.array(values)) / samples
        coeffs = coeffs / radius ** np.arange(samples)
        scale = np.max(np.abs(coeffs))
        if scale == 0:
            raise OracleInconclusive("resultant vanishes identically")
        nonzero = np.nonzero(np.abs(coeffs) > 1e-12 * scale)[0]
        coeffs = coeffs[:nonzero[-1] + 1]
        return np.roots(coeffs[::-1])

    def zeros(self, radius: float) -> list[tuple[complex, complex]]:
        found: list[tuple[complex, complex]] = []
        for x in self.resultant_roots(radius):
            if abs(x) > radius:
                continue
            candidates = list(np.roots(npoly.polyval(x, self.p)[::-1])) + \
                list(np.roots(npoly.polyval(x, self.q)[::-1]))
            if not candidates:
                raise OracleInconclusive(f"no back-substitution candidates at z1={x}")
            y = min(candidates, key=lambda c: self.residual(x, c))
            x1, y1 = self.polish(x, y)
            if abs(x1) > radius or abs(y1) > radius:
                continue
            if self.residual(x1, y1) > 1e-9:
                raise OracleInconclusive(f"zero near ({x}, {y}) did not converge")
            if any(abs(x1 - a) + abs(y1 - b) < 1e-9 for a, b in found):
                continue
            found.append((x1, y1))
        return found

    def residue_sum(self, radius: float) -> tuple[complex, int]:
        total = 0j
        zeros = self.zeros(radius)
        for x, y in zeros:
            det = np.linalg.det(self.jacobian(x, y))
            if abs(det) < 1e-14:
                raise OracleInconclusive(f"perturbed zero ({x}, {y}) is not simple")
            total += npoly.polyval2d(x, y, self.h) / det
        return total, len(zeros)


def perturbation_residue(germ: VectorFieldGerm, numerator: Poly | int | Fraction,
                         epsilon: float = 1e-3, richardson_steps: int = 1,
                         radius: float = 0.1) -> PerturbationEstimate:
    """Approximate residue from the simple zeros of a perturbed germ.

    Runs at eps, eps/2, ..., eps/2^steps and extrapolates to eps = 0 with
    a Richardson table.

    Raises:
        UsageError: Not a numeric germ in 2 variables.
        OracleInconclusive: Root isolation failed or the zero count changed with eps.
    """
    if germ.n != 2 or germ.is_symbolic():
        raise UsageError("perturbation_residue needs a numeric germ in 2 variables")
    components = [c.with_variables(germ.variables) for c in germ.components]
    h = germ.lift(numerator).with_variables(germ.variables)

    runs = max(richardson_steps, 1) + 1
    values = []
    counts = set()
    for k in range(runs):
        system = _PerturbedSystem(components, h, epsilon / 2 ** k)
        value, count = system.residue_sum(radius)
        logger.debug("eps=%g: %d zeros, sum %s", epsilon / 2 ** k, count, value)
        values.append(value)
        counts.add(count)
    if len(counts) != 1:
        raise OracleInconclusive(f"zero count changed with eps: {sorted(counts)}")

    table = [[v] for v in values]
    for k in range(1, runs):
        for j in range(1, k + 1):
            factor = 2 ** j
            table[k].append((factor * table[k][j - 1] - table[k - 1][j - 1]) / (factor - 1))
    steps = richardson_steps
    if steps == 0:
        best, error = values[0], abs(values[1] - values[0])
    else:
        best = table[steps][steps]
        error = abs(best - table[steps][steps - 1])
    return PerturbationEstimate(float(best.real), float(error + abs(best.imag)), counts.pop())
