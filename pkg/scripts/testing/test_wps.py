"""Tests for weighted projective planes: charts, Futaki character, zeta, Chern numbers."""

import random
import sys
from fractions import Fraction
from itertools import combinations, permutations
from pathlib import Path
from types import SimpleNamespace

import pytest

PROJECT_ROOT = Path(__file__).parent.parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

import src.residue_futaki.analysis.wps as wps_module
from src.residue_futaki.analysis.wps import (
    NoObstructionFound,
    Obstructed,
    TorusFieldParams,
    Weights,
    chart_eigenvalues,
    chern_number_wps,
    closed_form_futaki,
    default_params,
    euler_chern_number,
    fixed_point_charts,
    futaki_wps,
    ke_obstruction,
    obstruction_sweep,
    pairwise_coprime_triples,
    validate_params,
    zeta,
)
from src.residue_futaki.core.arith import Poly, RatFunc
from src.residue_futaki.core.arith.ratfunc import normalize_factor
from src.residue_futaki.core.exprio import WPS_PARAM_VARS, WPS_WEIGHT_VARS, parse_poly
from src.residue_futaki.core.futaki import InvariantPolynomial
from src.residue_futaki.errors import IntegrityError, UsageError

FIXTURES = Path(__file__).parent / 'fixtures'
CHERN_WEIGHTS = [(1, 1, 1), (1, 1, 2), (1, 2, 3), (2, 3, 5)]


def random_params(rng: random.Random, w: Weights, radius: int = 9) -> TorusFieldParams:
    while True:
        a = TorusFieldParams.of(*(rng.randint(-radius, radius) for _ in range(3)))
        if not validate_params(w, a):
            return a


class TestValidation:
    def test_coprimality(self):
        violations = validate_params(Weights(2, 4, 1))
        assert [(v.kind, v.pair) for v in violations] == [('coprimality', (0, 1))]

    def test_genericity(self):
        violations = validate_params(Weights(1, 1, 1), TorusFieldParams.of(1, 1, 2))
        assert [(v.kind, v.pair) for v in violations] == [('genericity', (0, 1))]

    def test_valid(self):
        assert validate_params(Weights(1, 2, 3), TorusFieldParams.of(0, 1, 3)) == []
        assert validate_params(Weights(1, 2, 3), TorusFieldParams.symbolic()) == []

    def test_weights_parse(self):
        assert Weights.parse("1, 2,3") == Weights(1, 2, 3)
        with pytest.raises(UsageError):
            Weights.parse("1,2")
        with pytest.raises(UsageError):
            Weights.parse("1,x,2")
        with pytest.raises(UsageError):
            Weights(0, 1, 1)

    def test_params_parse(self):
        assert TorusFieldParams.parse(['0', '1/2', '-3']).values == (0, Fraction(1, 2), -3)
        with pytest.raises(UsageError):
            TorusFieldParams.parse(['0', '1'])

    def test_charts_reject_invalid_input(self):
        with pytest.raises(UsageError):
            fixed_point_charts(Weights(2, 4, 1), TorusFieldParams.of(0, 1, 3))
        with pytest.raises(UsageError):
            fixed_point_charts(Weights(1, 1, 1), TorusFieldParams.of(1, 1, 2))


class TestFixedPointCharts:
    def test_plane(self):
        charts = fixed_point_charts(Weights(1, 1, 1), TorusFieldParams.of(0, 1, 2))
        assert [c.group_order for c in charts] == [1, 1, 1]
        eigenvalues = [[e.constant_value() for e in chart_eigenvalues(c)] for c in charts]
        assert eigenvalues == [[1, 2], [-1, 1], [-2, -1]]

    def test_weighted(self):
        charts = fixed_point_charts(Weights(1, 1, 2), TorusFieldParams.of(0, 1, 3))
        assert [c.group_order for c in charts] == [1, 1, 2]
        assert [e.constant_value() for e in chart_eigenvalues(charts[2])] == [Fraction(-3, 2), Fraction(-1, 2)]

    def test_symbolic_params(self):
        charts = fixed_point_charts(Weights(1, 1, 1), TorusFieldParams.symbolic())
        ring = charts[0].germ.ring
        a0, a1, a2 = (Poly.variable(ring, v) for v in WPS_PARAM_VARS)
        assert charts[0].germ.is_symbolic()
        assert chart_eigenvalues(charts[0]) == [a1 - a0, a2 - a0]
        assert chart_eigenvalues(charts[2]) == [a0 - a2, a1 - a2]


class TestFutakiWps:
    def test_plane_vanishes(self):
        assert futaki_wps(Weights(1, 1, 1), TorusFieldParams.of(0, 1, 2)).value == 0

    def test_weighted_example(self):
        value = futaki_wps(Weights(1, 1, 2), TorusFieldParams.of(0, 1, 3))
        assert value.value == Fraction(-16, 9)
        assert str(value) == '-16/9'

    def test_fano_sanity(self):
        rng = random.Random(3)
        w = Weights(1, 1, 1)
        for _ in range(20):
            assert futaki_wps(w, random_params(rng, w)).value == 0

    def test_field_scaling(self):
        rng = random.Random(5)
        w = Weights(1, 2, 3)
        a = TorusFieldParams.of(0, 1, 3)
        base = futaki_wps(w, a).value
        for _ in range(10):
            lam = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))
            scaled = TorusFieldParams.of(*(lam * x for x in a.values))
            assert futaki_wps(w, scaled).value == lam * base

    def test_chart_sum_matches_closed_form(self):
        rng = random.Random(13)
        for triple in CHERN_WEIGHTS:
            w = Weights(*triple)
            a = random_params(rng, w)
            assert futaki_wps(w, a).value == closed_form_futaki(w, a)

    def test_symbolic_params(self):
        value = futaki_wps(Weights(1, 1, 2), TorusFieldParams.symbolic()).value
        assert isinstance(value, RatFunc)
        assert value.evaluate({'a0': Fraction(0), 'a1': Fraction(1), 'a2': Fraction(3)}) == Fraction(-16, 9)

    def test_symbolic_weights_and_params(self):
        value = futaki_wps(None, TorusFieldParams.symbolic()).value
        assert isinstance(value, RatFunc)
        ring = WPS_PARAM_VARS + WPS_WEIGHT_VARS
        a = [Poly.variable(ring, v) for v in WPS_PARAM_VARS]
        w = [Poly.variable(ring, v) for v in WPS_WEIGHT_VARS]
        allowed = set(w)
        for i, j in combinations(range(3), 2):
            allowed.update(normalize_factor(a[i] * w[j] - a[j] * w[i])[1])
        assert value.denominator_factors
        assert set(value.denominator_factors) <= allowed
        point = dict(zip(ring, map(Fraction, (0, 1, 3, 1, 1, 2))))
        assert value.evaluate(point) == Fraction(-16, 9)


class TestZeta:
    def test_plane_is_zero(self):
        assert zeta(Weights(1, 1, 1)).is_zero()

    def test_weighted_value(self):
        z = zeta(Weights(1, 1, 2))
        assert not z.is_zero()
        assert z.evaluate((0, 1, 3)) == -192

    def test_relation_to_futaki(self):
        w = Weights(1, 2, 3)
        a = TorusFieldParams.of(0, 1, 3)
        f = futaki_wps(w, a).value
        clearing = -9 * (1 * 4 * 9)
        for i, j in combinations(range(3), 2):
            clearing *= a[i] * w[j] - a[j] * w[i]
        assert zeta(w).evaluate(a.values) == clearing * f

    def test_homogeneous_in_params(self):
        assert zeta(Weights(1, 2, 3)).zeta.weighted_degrees([1, 1, 1]) == {4}

    def test_symbolic_matches_fixture(self):
        symbolic = zeta(None)
        text = (FIXTURES / 'symbolic_zeta.txt').read_text()
        assert symbolic.zeta == parse_poly(text, WPS_PARAM_VARS + WPS_WEIGHT_VARS)
        assert symbolic.zeta.weighted_degrees([0, 0, 0, 1, 1, 1]) == {8}

    def test_coefficient_factorization(self):
        coeff = zeta(None).coefficient('a0^2*a1*a2')
        w0, w1, w2 = (Poly.variable(WPS_WEIGHT_VARS, v) for v in WPS_WEIGHT_VARS)
        assert coeff == 3 * w0 * w1 ** 2 * w2 ** 2 * (w2 - w1) * (w0 + w1 + w2) ** 2
        expanded = parse_poly(
            "-3*w1^5*w2^2*w0 - 3*w1^4*w2^3*w0 + 3*w1^3*w2^4*w0 + 3*w1^2*w2^5*w0"
            " - 3*w0^4*w2^2*w1^2 + 3*w0^3*w2^3*w1^2 + 6*w0^2*w2^4*w1^2"
            " + 3*w0^4*w1^2*w2^2 - 3*w0^3*w1^3*w2^2 - 6*w0^2*w1^4*w2^2",
            WPS_WEIGHT_VARS,
        )
        assert coeff == expanded

    def test_symbolic_specializes(self):
        symbolic = zeta(None).evaluate((0, 1, 3))
        assert symbolic.subs({'w0': 1, 'w1': 1, 'w2': 2}).constant_value() == -192

    def test_bad_monomial(self):
        with pytest.raises(UsageError):
            zeta(Weights(1, 2, 3)).coefficient('a0 + a1')


def permutation_sign(perm: tuple[int, ...]) -> int:
    inversions = sum(1 for i, j in combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


class TestPermutationEquivariance:
    """Relabelling the homogeneous coordinates of the plane."""

    @pytest.mark.parametrize('perm', list(permutations(range(3))))
    @pytest.mark.parametrize('triple', [(1, 1, 2), (1, 2, 3), (2, 3, 5)])
    def test_futaki_is_invariant(self, triple, perm):
        rng = random.Random(sum(triple) * 10 + perm[0])
        w = Weights(*triple)
        pw = Weights(*(triple[k] for k in perm))
        for _ in range(5):
            a = random_params(rng, w)
            pa = TorusFieldParams.of(*(a[k] for k in perm))
            assert futaki_wps(pw, pa).value == futaki_wps(w, a).value

    @pytest.mark.parametrize('perm', list(permutations(range(3))))
    @pytest.mark.parametrize('triple', [(1, 1, 2), (1, 2, 3)])
    def test_zeta_permutes_with_sign(self, triple, perm):
        original = zeta(Weights(*triple)).zeta
        permuted = zeta(Weights(*(triple[k] for k in perm))).zeta
        ring = original.variables
        images = {ring[i]: Poly.variable(ring, ring[k]) for i, k in enumerate(perm)}
        assert permuted.subs(images) == permutation_sign(perm) * original

    @pytest.mark.parametrize('perm', list(permutations(range(3))))
    def test_zeta_values_permute_with_sign(self, perm):
        rng = random.Random(29)
        triple = (1, 2, 3)
        w = Weights(*triple)
        z, pz = zeta(w), zeta(Weights(*(triple[k] for k in perm)))
        for _ in range(5):
            a = random_params(rng, w).values
            pa = tuple(a[k] for k in perm)
            assert pz.evaluate(pa) == permutation_sign(perm) * z.evaluate(a)


class TestKeObstruction:
    def test_plane_has_no_obstruction(self):
        assert isinstance(ke_obstruction(Weights(1, 1, 1), seed=7), NoObstructionFound)

    @pytest.mark.parametrize('triple', [(1, 1, 2), (1, 2, 3)])
    def test_weighted_planes_obstructed(self, triple):
        w = Weights(*triple)
        result = ke_obstruction(w, seed=7)
        assert isinstance(result, Obstructed)
        assert result.verdict == 'OBSTRUCTED'
        assert result.futaki != 0
        assert result.zeta_value == zeta(w).evaluate(result.witness)
        assert futaki_wps(w, TorusFieldParams(result.witness)).value == result.futaki

    def test_seed_is_reproducible(self):
        assert ke_obstruction(Weights(1, 2, 3), seed=7) == ke_obstruction(Weights(1, 2, 3), seed=7)

    def test_rejects_non_coprime(self):
        with pytest.raises(UsageError):
            ke_obstruction(Weights(2, 4, 1))

    def test_vanishing_witness_is_an_internal_error(self, monkeypatch):
        monkeypatch.setattr(wps_module, 'futaki_wps', lambda w, a, caps=None: SimpleNamespace(value=Fraction(0)))
        with pytest.raises(IntegrityError):
            ke_obstruction(Weights(1, 1, 2), seed=7)

    def test_default_params(self):
        assert default_params(Weights(1, 1, 1)).values == (0, 1, 2)

    def test_small_sweep(self):
        df = obstruction_sweep(3, seed=1)
        assert len(df) == len(list(pairwise_coprime_triples(3)))
        assert set(df['verdict']) == {'OBSTRUCTED'}

    @pytest.mark.slow
    def test_full_sweep(self):
        df = obstruction_sweep(10)
        assert (df['verdict'] == 'OBSTRUCTED').all()
        assert df['futaki'].notna().all()


class TestChernNumbers:
    def test_euler_sequence_values(self):
        c1sq = InvariantPolynomial.parse('c1^2', 2)
        c2 = InvariantPolynomial.parse('c2', 2)
        assert euler_chern_number(Weights(1, 1, 1), c1sq) == 9
        assert euler_chern_number(Weights(1, 2, 3), c2) == Fraction(11, 6)

    @pytest.mark.parametrize('triple', CHERN_WEIGHTS)
    def test_residues_match_euler_sequence(self, triple):
        w = Weights(*triple)
        rng = random.Random(sum(triple))
        c1sq = InvariantPolynomial.parse('c1^2', 2)
        c2 = InvariantPolynomial.parse('c2', 2)
        for _ in range(10):
            a = random_params(rng, w)
            assert chern_number_wps(w, c1sq, a) == Fraction(w.total ** 2, w.w0 * w.w1 * w.w2)
            assert chern_number_wps(w, c2, a) == sum(Fraction(1, wi) for wi in w)

    def test_default_params_used(self):
        assert chern_number_wps(Weights(1, 1, 2), InvariantPolynomial.parse('c1^2', 2)) == 8

    def test_rejects_cubic(self):
        with pytest.raises(UsageError):
            chern_number_wps(Weights(1, 1, 1), InvariantPolynomial.trace_power(3, 2))
