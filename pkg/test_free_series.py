"""Pytest tests for free series arithmetic and seminorm families."""

from fractions import Fraction
import math

from hypothesis import given, settings
from hypothesis import strategies as st
import numpy as np
import pytest
import structlog
from structlog.testing import capture_logs

from free_series import (
    DegreeCapError,
    FreeSeries,
    FreeSeriesError,
    SeminormFamily,
    SeminormParameterError,
    concat_product,
    entire_seminorm,
    level_l2,
    polydisk_seminorm,
    popescu_seminorm,
    taylor_seminorm,
)
from models import RunConfig
from sampling import random_free_series
from scalars import GaussianRational, ModeMismatchError, NumericMode
from words import AlphabetMismatchError, Word

EXACT = NumericMode.EXACT


def zeta(*letters, n=2, coefficient=1):
    return FreeSeries.monomial(Word(n, letters), coefficient, NumericMode.FLOAT)


exact_terms = st.lists(
    st.tuples(
        st.lists(st.integers(1, 2), max_size=3),
        st.fractions(min_value=-3, max_value=3, max_denominator=6),
        st.fractions(min_value=-3, max_value=3, max_denominator=6),
    ),
    max_size=4,
)


def exact_series(terms):
    return FreeSeries.from_terms(
        2,
        [(Word(2, tuple(letters)), GaussianRational(re, im)) for letters, re, im in terms],
        mode=EXACT,
    )


class TestConstruction:
    """Canonical form of stored terms."""

    def test_zero_coefficients_are_dropped(self):
        series = zeta(1) - zeta(1)
        assert series.is_zero()
        assert series.canonical_text() == "0"

    def test_like_terms_accumulate(self):
        series = FreeSeries.from_terms(
            2, [(Word(2, (1,)), 1), (Word(2, (1,)), 2)], mode=EXACT
        )
        assert series.coefficient(Word(2, (1,))) == 3

    def test_terms_are_graded_lex(self):
        series = zeta(2, 1) + zeta(2) + FreeSeries.one(2) + zeta(1, 2)
        assert [tuple(w.letters) for w in series.terms] == [(), (2,), (1, 2), (2, 1)]

    def test_canonical_text(self):
        series = FreeSeries.one(2) + zeta(1, 2, coefficient=2)
        assert series.canonical_text() == "(1,0)*we + (2,0)*w1,2"

    def test_degree_cap_rejects_long_words(self):
        with pytest.raises(DegreeCapError, match="exceeds degree cap"):
            FreeSeries.from_terms(2, [(Word(2, (1, 2)), 1)], degree_cap=1)

    def test_exact_mode_refuses_floats(self):
        with pytest.raises(ModeMismatchError):
            FreeSeries.from_terms(2, [(Word(2), 0.5)], mode=EXACT)

    def test_negative_power(self):
        with pytest.raises(FreeSeriesError, match="nonnegative"):
            zeta(1) ** -1


class TestConcatProduct:
    """The concatenation product."""

    def test_generators(self):
        assert zeta(1) * zeta(2) == zeta(1, 2)

    def test_square_of_sum(self):
        square = (zeta(1) + zeta(2)) ** 2
        assert square == zeta(1, 1) + zeta(1, 2) + zeta(2, 1) + zeta(2, 2)

    def test_unit(self):
        f = random_free_series(np.random.default_rng(3), RunConfig(n=2, degree=3))
        assert FreeSeries.one(2) * f == f
        assert f * FreeSeries.one(2) == f

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatchError):
            zeta(1, n=2) * zeta(1, n=3)

    def test_mode_mismatch(self):
        with pytest.raises(ModeMismatchError):
            zeta(1) * FreeSeries.generator(2, 1, EXACT)

    def test_truncation_is_recorded(self):
        f = FreeSeries.from_terms(2, [(Word(2, (1, 2)), 1)], degree_cap=3)
        g = FreeSeries.from_terms(2, [(Word(2, (2, 2)), 1), (Word(2, (1,)), 1)], degree_cap=3)
        product = concat_product(f, g)
        assert product.degree_cap == 3
        assert product.truncated
        assert product == FreeSeries.from_terms(
            2, [(Word(2, (1, 2, 1)), 1)], degree_cap=3
        )

    def test_truncation_is_logged(self):
        structlog.reset_defaults()
        f = FreeSeries.from_terms(2, [(Word(2, (1, 2)), 1)], degree_cap=3)
        with capture_logs() as events:
            concat_product(f, f)
        assert events == [
            {
                "event": "Dropped products above the degree cap",
                "cap": 3,
                "dropped": 1,
                "log_level": "debug",
            }
        ]

    @settings(max_examples=60, deadline=None)
    @given(exact_terms, exact_terms, exact_terms)
    def test_ring_identities(self, a, b, c):
        """Associativity and distributivity hold exactly."""
        f, g, h = exact_series(a), exact_series(b), exact_series(c)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert (f + g) * h == f * h + g * h


class TestSeminorms:
    """Entire, Taylor, polydisk and Popescu seminorms."""

    def test_entire(self):
        assert entire_seminorm(zeta(1) + zeta(2), 3).value == pytest.approx(6)
        assert entire_seminorm(FreeSeries.one(2), 0.1).value == pytest.approx(1)
        f = zeta(1, 2, coefficient=2) - FreeSeries.one(2)
        assert entire_seminorm(f, 0.5).value == pytest.approx(1.5)

    def test_entire_rejects_nonpositive_rho(self):
        with pytest.raises(SeminormParameterError, match="positive"):
            entire_seminorm(zeta(1), 0)

    def test_taylor(self):
        assert taylor_seminorm(zeta(1), 0.9, 1).value == pytest.approx(0.9)
        with pytest.raises(SeminormParameterError, match="below the radius"):
            taylor_seminorm(zeta(1), 1.0, 1)

    def test_taylor_without_radius_is_entire(self):
        f = random_free_series(np.random.default_rng(11), RunConfig(n=2, degree=4))
        assert taylor_seminorm(f, 1.7).value == entire_seminorm(f, 1.7).value

    def test_polydisk(self):
        assert polydisk_seminorm(zeta(1, 2), 0.5, 2).value == pytest.approx(1)
        assert polydisk_seminorm(FreeSeries.one(2), 0.3, 5).value == pytest.approx(1)
        assert polydisk_seminorm(zeta(1, 1, 2), 1, 3).value == pytest.approx(9)

    def test_polydisk_radius(self):
        with pytest.raises(SeminormParameterError):
            polydisk_seminorm(zeta(1), 0.5, 1, r=0.5)

    def test_polydisk_below_one_is_not_submultiplicative(self):
        """ζ₁·ζ₁ has alternation degree 0, so ρ₂ < 1 breaks the product bound."""
        square = zeta(1) * zeta(1)
        single = polydisk_seminorm(zeta(1), 0.5, 0.5).value
        assert polydisk_seminorm(square, 0.5, 0.5).value > single * single

    def test_popescu(self):
        assert popescu_seminorm(zeta(1) + zeta(2), 0.5).value == pytest.approx(
            math.sqrt(2) * 0.5
        )
        assert popescu_seminorm(FreeSeries.one(2), 0.5).value == pytest.approx(1)
        f = zeta(1, 1, coefficient=3) + zeta(2, 1, coefficient=4)
        assert popescu_seminorm(f, 0.1).value == pytest.approx(0.05)

    def test_popescu_radius(self):
        with pytest.raises(SeminormParameterError, match=r"\(0, 1\)"):
            popescu_seminorm(zeta(1), 1.0)

    def test_level_l2(self):
        assert level_l2(zeta(1) + zeta(2), 1) == pytest.approx(math.sqrt(2))
        assert level_l2(zeta(1), 3) == 0
        f = zeta(1, 2) + zeta(2, 1, coefficient=-1j)
        assert level_l2(f, 2) == pytest.approx(math.sqrt(2))

    def test_value_carries_provenance(self):
        value = polydisk_seminorm(zeta(1), 0.5, 2)
        assert value.family is SeminormFamily.POLYDISK
        assert value.parameters["rho2"] == 2
        assert float(value) == value.value

    def test_capped_values_are_lower_bounds(self):
        f = FreeSeries.from_terms(2, [(Word(2, (1, 2)), 1)], degree_cap=3)
        assert entire_seminorm(f * f, 1).lower_bound


class TestSeminormProperties:
    """Homogeneity, monotonicity and comparisons on random series."""

    @pytest.fixture
    def samples(self):
        rng = np.random.default_rng(2024)
        config = RunConfig(n=3, degree=5)
        return [random_free_series(rng, config) for _ in range(100)]

    def test_homogeneity(self, samples):
        for f in samples:
            scaled = f.scale(complex(0, -2.5))
            assert entire_seminorm(scaled, 0.8).value == pytest.approx(
                2.5 * entire_seminorm(f, 0.8).value
            )

    def test_triangle_inequality(self, samples):
        for f, g in zip(samples, samples[1:], strict=False):
            for rho in (0.5, 2.0):
                assert entire_seminorm(f + g, rho).value <= (
                    entire_seminorm(f, rho).value + entire_seminorm(g, rho).value + 1e-12
                )

    def test_monotone_in_parameters(self, samples):
        for f in samples:
            assert entire_seminorm(f, 0.5).value <= entire_seminorm(f, 0.7).value
            assert popescu_seminorm(f, 0.3).value <= popescu_seminorm(f, 0.6).value

    def test_popescu_is_sum_of_levels(self, samples):
        for f in samples:
            total = 0.0
            for k in range(f.degree + 1):
                total += level_l2(f, k) * 0.4**k
            assert popescu_seminorm(f, 0.4).value == total

    def test_popescu_below_entire(self, samples):
        for f in samples:
            assert popescu_seminorm(f, 0.6).value <= entire_seminorm(f, 0.6).value + 1e-12

    def test_exact_and_float_agree(self):
        f = FreeSeries.from_terms(
            2, [(Word(2, (1, 2)), Fraction(1, 3)), (Word(2), GaussianRational(0, 2))]
        )
        assert f.mode is EXACT
        assert entire_seminorm(f, 2).value == pytest.approx(4 / 3 + 2)


class TestSubmultiplicativity:
    """``‖fg‖ ≤ ‖f‖‖g‖`` for every family in its submultiplicative range."""

    @staticmethod
    def assert_submultiplicative(seminorm, f, g):
        bound = seminorm(f) * seminorm(g)
        assert seminorm(f * g) <= bound * (1 + 1e-12) + 1e-15

    @settings(max_examples=80, deadline=None)
    @given(exact_terms, exact_terms, st.floats(0.05, 4.0))
    def test_entire(self, a, b, rho):
        self.assert_submultiplicative(
            lambda f: entire_seminorm(f, rho).value, exact_series(a), exact_series(b)
        )

    @settings(max_examples=80, deadline=None)
    @given(exact_terms, exact_terms, st.floats(0.05, 0.95))
    def test_taylor(self, a, b, rho):
        self.assert_submultiplicative(
            lambda f: taylor_seminorm(f, rho, 1).value, exact_series(a), exact_series(b)
        )

    @settings(max_examples=80, deadline=None)
    @given(exact_terms, exact_terms, st.floats(0.05, 4.0), st.floats(1.0, 4.0))
    def test_polydisk(self, a, b, rho1, rho2):
        self.assert_submultiplicative(
            lambda f: polydisk_seminorm(f, rho1, rho2).value,
            exact_series(a),
            exact_series(b),
        )

    @settings(max_examples=80, deadline=None)
    @given(exact_terms, exact_terms, st.floats(0.05, 0.95))
    def test_popescu(self, a, b, r):
        self.assert_submultiplicative(
            lambda f: popescu_seminorm(f, r).value, exact_series(a), exact_series(b)
        )
