"""Cross-checks of the residue engine against the independent oracles."""

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).parent.parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from scripts.testing.oracle import (
    OracleInconclusive,
    SeriesTruncation,
    perturbation_residue,
    separable_residue,
)
from src.residue_futaki.core.arith import Poly
from src.residue_futaki.core.exprio import parse_poly
from src.residue_futaki.core.residue import VectorFieldGerm, grothendieck_residue, jacobian
from src.residue_futaki.errors import UsageError

VARS = ('z1', 'z2')
z1 = Poly.variable(VARS, 'z1')
z2 = Poly.variable(VARS, 'z2')


def germ(*components: str) -> VectorFieldGerm:
    return VectorFieldGerm.parse(VARS, list(components))


def random_unit(rng: random.Random, var: Poly) -> Poly:
    return 1 + sum((Fraction(rng.randint(-4, 4), rng.randint(1, 3)) * var ** k for k in (1, 2)), Poly.zero(VARS))


def random_numerator(rng: random.Random) -> Poly:
    out = {}
    for _ in range(4):
        i = rng.randint(0, 3)
        j = rng.randint(0, 3 - i)
        out[(i, j)] = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
    return Poly(VARS, out)


class TestSeriesTruncation:
    def test_inverse(self):
        s = SeriesTruncation.from_poly(1 + z1, 4)
        inv = s.inverse()
        assert [inv.coefficient((k, 0)) for k in range(5)] == [1, -1, 1, -1, 1]
        assert (s * inv).terms == {(0, 0): 1}

    def test_no_inverse_without_constant(self):
        with pytest.raises(UsageError):
            SeriesTruncation.from_poly(z1, 3).inverse()


class TestSeparableOracle:
    def test_examples(self):
        assert separable_residue(germ('z1^2', 'z2'), (2 * z1 + 1) ** 3) == 6
        assert separable_residue(germ('z1^3', 'z2^2'), 6 * z1 ** 2 * z2) == 6
        assert separable_residue(germ('z1', 'z2'), 1) == 1
        assert separable_residue(germ('z1^2*(1 + z1)', 'z2'), 1) == -1

    def test_order_is_sufficient(self):
        g = germ('z1^3*(1 - 2*z1)', 'z2^2*(1 + z2 + z2^2)')
        h = (z1 + z2 + 1) ** 4
        assert separable_residue(g, h) == separable_residue(g, h, order=20)

    def test_rejects_mixed_components(self):
        with pytest.raises(UsageError):
            separable_residue(germ('z1^2 - z2^2', 'z1*z2'), 1)

    def test_rejects_symbolic(self):
        g = VectorFieldGerm.parse(VARS, ['l1*z1', 'z2'], parameters=['l1'])
        with pytest.raises(UsageError):
            separable_residue(g, 1)

    def test_engine_agrees_on_random_germs(self):
        rng = random.Random(41)
        for _ in range(50):
            a, b = rng.randint(1, 3), rng.randint(1, 3)
            g = VectorFieldGerm(VARS, [z1 ** a * random_unit(rng, z1), z2 ** b * random_unit(rng, z2)])
            h = random_numerator(rng)
            assert grothendieck_residue(g, h).value == separable_residue(g, h)


@pytest.mark.slow
class TestPerturbationOracle:
    """Floating-point comparison; skipped when root isolation is inconclusive."""

    @pytest.mark.parametrize('components, numerator, expected', [
        (('z1', 'z2'), '1', 1),
        (('z1^3', 'z2^2'), '6*z1^2*z2', 6),
        (('z1^2 - z2^2', 'z1*z2'), '2*z1^2 + 2*z2^2', 4),
        (('z1^2 - z2^2', 'z1*z2'), '(2*z1 + 1)^3', 12),
    ])
    def test_matches_engine(self, components, numerator, expected):
        g = germ(*components)
        h = parse_poly(numerator, VARS)
        exact = grothendieck_residue(g, h).value
        assert exact == expected
        try:
            estimate = perturbation_residue(g, h, epsilon=1e-3, richardson_steps=1)
        except OracleInconclusive as exc:
            pytest.skip(str(exc))
        assert estimate.value == pytest.approx(float(exact), abs=1e-6)

    def test_multiplicity_counts_zeros(self):
        g = germ('z1^2 - z2^2', 'z1*z2')
        try:
            estimate = perturbation_residue(g, jacobian(g).det())
        except OracleInconclusive as exc:
            pytest.skip(str(exc))
        assert estimate.zeros == 4

    def test_rejects_three_variables(self):
        g = VectorFieldGerm.parse(('z1', 'z2', 'z3'), ['z1', 'z2', 'z3'])
        with pytest.raises(UsageError):
            perturbation_residue(g, 1)
