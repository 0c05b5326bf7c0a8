"""Pytest tests for normal ordering, twisted products and quantum seminorms."""

from collections import defaultdict
from fractions import Fraction
import itertools
import math

from hypothesis import given, settings
from hypothesis import strategies as st
import numpy as np
import pytest

from free_series import FreeSeries
from models import RunConfig
from quantum_algebra import (
    DegenerateTorusError,
    OrderedSeries,
    ParameterMismatchError,
    SeminormRangeError,
    SeminormVariant,
    affine_seminorm,
    family_equivalence_constants,
    kappa,
    normal_order,
    quantum_polydisk_seminorm,
    sort_signed_word,
    torus_product,
    torus_seminorm,
    twisted_product,
)
from sampling import random_affine_series, random_free_series, random_torus_series
from scalars import GaussianRational, ModeMismatchError, NumericMode, ScalarError
from words import Flavor, MultiIndex, Word

EXACT = NumericMode.EXACT
HALF = Fraction(1, 2)


def x(q, *exponents, coefficient=1, flavor=Flavor.AFFINE):
    mode = EXACT if isinstance(q, int | Fraction) else NumericMode.FLOAT
    return OrderedSeries.monomial(q, MultiIndex(exponents, flavor), coefficient, mode)


def zeta(*letters, n=2):
    return FreeSeries.monomial(Word(n, letters), 1, EXACT)


class TestNormalOrder:
    """The quotient map from free series to the quantum affine space."""

    def test_sorted_word(self):
        assert normal_order(zeta(1, 2), HALF) == x(HALF, 1, 1)

    def test_one_swap(self):
        assert normal_order(zeta(2, 1), HALF) == x(HALF, 1, 1, coefficient=2)

    def test_ideal_generator_vanishes(self):
        assert normal_order(zeta(1, 2) - zeta(2, 1).scale(HALF), HALF).is_zero()

    def test_coefficients_accumulate(self):
        image = normal_order(zeta(1, 2) + zeta(2, 1), HALF)
        assert image.coefficient(MultiIndex((1, 1))) == 3

    def test_zero_q(self):
        with pytest.raises(ScalarError, match="nonzero"):
            normal_order(zeta(1), 0)

    def test_exact_mode_needs_rational_q(self):
        with pytest.raises(ModeMismatchError):
            normal_order(zeta(1), 0.5)

    @pytest.mark.parametrize("q", [HALF, Fraction(2), Fraction(3, 5)])
    def test_homomorphism(self, q):
        """normal_order(fg) = normal_order(f) ⋆ normal_order(g), exactly."""
        rng = np.random.default_rng(17)
        for n in (1, 2, 3):
            config = RunConfig(n=n, q=f"{q.numerator}/{q.denominator}", degree=5)
            for _ in range(60):
                f = random_free_series(rng, config)
                g = random_free_series(rng, config)
                assert normal_order(f * g, q) == twisted_product(
                    normal_order(f, q), normal_order(g, q)
                )

    @settings(max_examples=80, deadline=None)
    @given(
        st.lists(st.integers(1, 3), max_size=4),
        st.lists(st.integers(1, 3), max_size=4),
        st.sampled_from([(1, 2), (1, 3), (2, 3)]),
        st.sampled_from([HALF, Fraction(3, 5), Fraction(2)]),
    )
    def test_ideal_vanishing(self, u, v, pair, q):
        i, j = pair
        generator = zeta(i, j, n=3) - zeta(j, i, n=3).scale(q)
        element = zeta(*u, n=3) * generator * zeta(*v, n=3)
        assert normal_order(element, q).is_zero()


class TestKappa:
    """The closed form of the reordering exponent against the rewriting oracle."""

    def test_closed_form_matches_oracle(self):
        for n in (1, 2, 3):
            exponents = list(itertools.product(range(3), repeat=n))
            for a, b in itertools.product(exponents, repeat=2):
                alpha, beta = MultiIndex(a), MultiIndex(b)
                letters = [
                    index + 1
                    for part in (a, b)
                    for index, power in enumerate(part)
                    for _ in range(power)
                ]
                exponent, total = sort_signed_word(letters, n)
                assert exponent == -kappa(alpha, beta)
                assert total == alpha + beta

    def test_signed_oracle(self):
        """Inverse generators follow the conjugated relations."""
        rng = np.random.default_rng(5)
        for _ in range(300):
            n = int(rng.integers(1, 4))
            a = tuple(int(v) for v in rng.integers(-2, 3, size=n))
            b = tuple(int(v) for v in rng.integers(-2, 3, size=n))
            letters = []
            for part in (a, b):
                for index, power in enumerate(part):
                    sign = 1 if power > 0 else -1
                    letters.extend([sign * (index + 1)] * abs(power))
            exponent, _ = sort_signed_word(letters, n)
            alpha = MultiIndex(a, Flavor.TORUS)
            beta = MultiIndex(b, Flavor.TORUS)
            assert exponent == -kappa(alpha, beta)

    def test_oracle_rejects_bad_letters(self):
        with pytest.raises(ValueError, match="outside"):
            sort_signed_word([0], 2)


class TestProducts:
    """Twisted and torus products."""

    def test_twisted_examples(self):
        assert x(HALF, 1, 0) * x(HALF, 0, 1) == x(HALF, 1, 1)
        assert x(HALF, 0, 1) * x(HALF, 1, 0) == x(HALF, 1, 1, coefficient=2)

    def test_unit(self):
        rng = np.random.default_rng(1)
        a = random_affine_series(rng, RunConfig(n=3, q="1/3"))
        one = OrderedSeries.constant(3, Fraction(1, 3), 1)
        assert a * one == a
        assert one * a == a

    def test_parameter_mismatch(self):
        with pytest.raises(ParameterMismatchError, match="differ"):
            x(HALF, 1, 0) * x(Fraction(1, 3), 0, 1)

    def test_wrong_flavor(self):
        torus = x(1, 1, 0, flavor=Flavor.TORUS)
        with pytest.raises(ParameterMismatchError):
            twisted_product(torus, torus)
        with pytest.raises(ParameterMismatchError):
            torus_product(x(1, 1, 0), x(1, 1, 0))

    def test_torus_examples(self):
        q = Fraction(1)
        t = Flavor.TORUS
        assert x(q, 1, 0, flavor=t) * x(q, -1, 0, flavor=t) == OrderedSeries.constant(
            2, q, 1, flavor=t
        )
        q = complex(0.6, 0.8)
        product = x(q, 0, 1, flavor=t) * x(q, -1, 0, flavor=t)
        assert product.coefficient(MultiIndex((-1, 1), t)) == pytest.approx(q)

    def test_torus_associativity(self):
        rng = np.random.default_rng(8)
        config = RunConfig(n=2, q="1/1", degree=3)
        for _ in range(50):
            a, b, c = (random_torus_series(rng, config) for _ in range(3))
            assert (a * b) * c == a * (b * c)

    def test_q_one_is_commutative(self):
        """At q = 1 the product is ordinary polynomial multiplication."""
        rng = np.random.default_rng(4)
        config = RunConfig(n=3, q="1/1", degree=4)
        for _ in range(100):
            a = random_affine_series(rng, config)
            b = random_affine_series(rng, config)
            expected = defaultdict(lambda: GaussianRational(0))
            for alpha, c in a.terms.items():
                for beta, d in b.terms.items():
                    key = (alpha + beta).exponents
                    expected[key] = expected[key] + c * d
            product = a * b
            assert {alpha.exponents: c for alpha, c in product.terms.items()} == {
                key: value for key, value in expected.items() if value
            }

    def test_power(self):
        q = HALF
        square = x(q, 0, 1) + x(q, 1, 0)
        assert (square**2).coefficient(MultiIndex((1, 1))) == 3


class TestSeminorms:
    """Weighted affine seminorms, torus seminorms and the family constants."""

    def test_affine_examples(self):
        a = x(0.5, 1, 0) + x(0.5, 0, 1)
        assert affine_seminorm(a, 1) == pytest.approx(2)
        assert affine_seminorm(a, 1, SeminormVariant.L2) == pytest.approx(math.sqrt(2))
        assert affine_seminorm(x(0.5, 1, 1), 2) == pytest.approx(2)

    def test_affine_sup(self):
        a = x(0.5, 2, 0, coefficient=3) + x(0.5, 0, 0)
        assert affine_seminorm(a, 1, SeminormVariant.SUP) == pytest.approx(3)
        assert affine_seminorm(OrderedSeries.zero(2, 0.5), 1, "inf") == 0

    def test_affine_rejects_nonpositive_rho(self):
        with pytest.raises(SeminormRangeError, match="positive"):
            affine_seminorm(x(0.5, 1, 0), -1)

    def test_quantum_polydisk_range(self):
        assert quantum_polydisk_seminorm(x(0.5, 1, 0), 0.5, 0.9) == pytest.approx(0.5)
        with pytest.raises(SeminormRangeError, match="0 < rho < r"):
            quantum_polydisk_seminorm(x(0.5, 1, 0), 0.9, 0.9)

    def test_torus_examples(self):
        t = Flavor.TORUS
        a = x(1, 1, 0, flavor=t) + x(1, -1, 0, flavor=t)
        assert torus_seminorm(a, 2) == pytest.approx(4)
        assert torus_seminorm(OrderedSeries.constant(2, 1, 1, flavor=t), 3) == 1

    def test_torus_spot_submultiplicativity(self):
        t = Flavor.TORUS
        product = x(1, 1, 0, flavor=t) * x(1, -1, 0, flavor=t)
        for rho in (1.0, 1.5, 3.0):
            assert torus_seminorm(product, rho) <= rho * rho

    def test_torus_needs_unit_modulus(self):
        with pytest.raises(DegenerateTorusError, match=r"\|q\| = 1"):
            torus_seminorm(x(0.5, 1, 0, flavor=Flavor.TORUS), 1)

    def test_family_constants(self):
        assert family_equivalence_constants(0.5, 1, 1).upper == pytest.approx(
            math.sqrt(4 / 3)
        )
        assert family_equivalence_constants(0.8, 1, 2).upper == pytest.approx(1 / 0.36)
        assert family_equivalence_constants(1e-9, 1, 3).upper == pytest.approx(1)
        assert family_equivalence_constants(0.5, 1, 1).lower == 1
        with pytest.raises(SeminormRangeError):
            family_equivalence_constants(1, 1, 2)

    @pytest.mark.parametrize("q", ["0.3", "0.5", "1", "2"])
    def test_submultiplicative(self, q):
        rng = np.random.default_rng(99)
        config = RunConfig(n=3, q=q, degree=4)
        for _ in range(100):
            a = random_affine_series(rng, config)
            b = random_affine_series(rng, config)
            for rho in (0.5, 1.0, 2.0):
                lhs = affine_seminorm(a * b, rho)
                rhs = affine_seminorm(a, rho) * affine_seminorm(b, rho)
                assert lhs <= rhs * (1 + 1e-12)

    def test_family_chain(self):
        rng = np.random.default_rng(12)
        config = RunConfig(n=2, q="0.4", degree=5)
        constant = family_equivalence_constants(0.6, 0.9, 2).upper
        for _ in range(100):
            a = random_affine_series(rng, config)
            sup = affine_seminorm(a, 0.6, SeminormVariant.SUP)
            l2 = affine_seminorm(a, 0.6, SeminormVariant.L2)
            l1 = affine_seminorm(a, 0.6, SeminormVariant.L1)
            assert sup <= l2 * (1 + 1e-12)
            assert l2 <= l1 * (1 + 1e-12)
            l2_outer = affine_seminorm(a, 0.9, SeminormVariant.L2)
            assert l1 <= constant * l2_outer * (1 + 1e-12)


def test_canonical_text():
    a = x(0.5, 1, 0) + x(0.5, 0, 1, coefficient=2)
    assert a.canonical_text() == "(1,0)*x[1,0] + (2,0)*x[0,1]"
    assert OrderedSeries.zero(2, 0.5).canonical_text() == "0"


def test_to_float():
    a = x(HALF, 1, 1, coefficient=GaussianRational(1, 2))
    converted = a.to_float()
    assert converted.mode is NumericMode.FLOAT
    assert converted.q == 0.5
    assert converted.coefficient(MultiIndex((1, 1))) == complex(1, 2)
