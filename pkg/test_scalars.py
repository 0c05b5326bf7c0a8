"""Pytest tests for exact scalars and numeric modes."""

from fractions import Fraction

import pytest

from scalars import (
    GaussianRational,
    ModeMismatchError,
    NumericMode,
    ScalarError,
    check_q,
    format_real,
    format_scalar,
    mode_of,
    q_power,
    to_mode,
)


class TestGaussianRational:
    """Field arithmetic on exact complex rationals."""

    def test_multiplication(self):
        """(1 + i)(1 - i) = 2."""
        value = GaussianRational(1, 1) * GaussianRational(1, -1)
        assert value == GaussianRational(2)
        assert value == 2

    def test_division_inverts_multiplication(self):
        a = GaussianRational(Fraction(1, 2), 3)
        b = GaussianRational(-2, Fraction(1, 3))
        assert (a * b) / b == a

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError, match="exact zero"):
            GaussianRational(1) / GaussianRational(0)

    def test_negative_power(self):
        assert GaussianRational(0, 2) ** -1 == GaussianRational(0, Fraction(-1, 2))

    def test_mixed_with_fraction(self):
        assert Fraction(1, 2) - GaussianRational(0, 1) == GaussianRational(
            Fraction(1, 2), -1
        )
        assert 3 * GaussianRational(1, 1) == GaussianRational(3, 3)

    def test_float_operands_are_refused(self):
        with pytest.raises(TypeError):
            GaussianRational(1) + 0.5  # noqa: B018

    def test_abs_and_conjugate(self):
        value = GaussianRational(3, 4)
        assert abs(value) == pytest.approx(5.0)
        assert value.conjugate() == GaussianRational(3, -4)

    def test_hash_matches_fraction_for_reals(self):
        assert hash(GaussianRational(Fraction(1, 3))) == hash(Fraction(1, 3))

    def test_falsy_only_at_zero(self):
        assert not GaussianRational(0)
        assert GaussianRational(0, 1)


class TestModes:
    """Mode detection and conversion."""

    def test_mode_of(self):
        assert mode_of(Fraction(1, 2)) is NumericMode.EXACT
        assert mode_of(3) is NumericMode.EXACT
        assert mode_of(0.5) is NumericMode.FLOAT
        assert mode_of(1j) is NumericMode.FLOAT

    def test_float_into_exact_mode_is_rejected(self):
        with pytest.raises(ModeMismatchError, match="Floating coefficient"):
            to_mode(0.5, NumericMode.EXACT)

    def test_exact_into_float_mode(self):
        assert to_mode(GaussianRational(1, 2), NumericMode.FLOAT) == complex(1, 2)

    def test_check_q(self):
        assert check_q(Fraction(1, 2), NumericMode.EXACT) == Fraction(1, 2)
        with pytest.raises(ModeMismatchError):
            check_q(0.5, NumericMode.EXACT)
        with pytest.raises(ScalarError, match="nonzero"):
            check_q(0, NumericMode.FLOAT)

    def test_q_power(self):
        assert q_power(Fraction(1, 2), -2, NumericMode.EXACT) == GaussianRational(4)
        assert q_power(0.5, 3, NumericMode.FLOAT) == pytest.approx(0.125)


def test_formatting():
    """Rationals print as num/den, floats without a trailing .0."""
    assert format_real(Fraction(1, 2)) == "1/2"
    assert format_real(2.0) == "2"
    assert format_real(0.1) == "0.1"
    assert format_scalar(GaussianRational(1, Fraction(-1, 3))) == "(1,-1/3)"
    assert format_scalar(complex(1.5, 0)) == "(1.5,0)"
