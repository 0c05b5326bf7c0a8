"""Scalar coefficients: exact complex rationals and double-precision complex."""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
import math
from numbers import Rational
from typing import TypeAlias


class ScalarError(ValueError):
    """Base error raised for invalid scalar values or mode mixing."""


class ModeMismatchError(ScalarError):
    """Raised when exact and floating coefficients are combined."""


class NumericMode(StrEnum):
    """How the coefficients of a series are stored."""

    EXACT = "exact"
    FLOAT = "float"


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """A complex number whose real and imaginary parts are rationals."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value: object) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, Rational):
            return cls(Fraction(value))
        raise ScalarError(f"Cannot represent {value!r} exactly")

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def __add__(self, other: object) -> GaussianRational:
        if not isinstance(other, GaussianRational | Rational):
            return NotImplemented
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: object) -> GaussianRational:
        if not isinstance(other, GaussianRational | Rational):
            return NotImplemented
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other: object) -> GaussianRational:
        if not isinstance(other, GaussianRational | Rational):
            return NotImplemented
        return GaussianRational.coerce(other) - self

    def __mul__(self, other: object) -> GaussianRational:
        if not isinstance(other, GaussianRational | Rational):
            return NotImplemented
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> GaussianRational:
        if not isinstance(other, GaussianRational | Rational):
            return NotImplemented
        other = GaussianRational.coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by exact zero")
        return self * GaussianRational(other.re / norm, -other.im / norm)

    def __pow__(self, exponent: int) -> GaussianRational:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return GaussianRational(1) / (self ** (-exponent))
        result = GaussianRational(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, Rational):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self) -> str:
        return f"({self.re},{self.im})"


Scalar: TypeAlias = complex | GaussianRational
QParameter: TypeAlias = Fraction | complex | float


def mode_of(value: object) -> NumericMode:
    """Return the numeric mode a raw coefficient belongs to."""

    if isinstance(value, GaussianRational | Rational):
        return NumericMode.EXACT
    return NumericMode.FLOAT


def to_mode(value: object, mode: NumericMode) -> Scalar:
    """Convert a coefficient into the canonical type of ``mode``."""

    if mode is NumericMode.EXACT:
        if isinstance(value, float | complex):
            raise ModeMismatchError(
                f"Floating coefficient {value!r} in an exact-mode series"
            )
        return GaussianRational.coerce(value)
    if isinstance(value, GaussianRational):
        return complex(value)
    return complex(value)  # type: ignore[arg-type]


def zero(mode: NumericMode) -> Scalar:
    return GaussianRational(0) if mode is NumericMode.EXACT else 0j


def one(mode: NumericMode) -> Scalar:
    return GaussianRational(1) if mode is NumericMode.EXACT else 1 + 0j


def is_exact_q(q: object) -> bool:
    return isinstance(q, Rational)


def check_q(q: QParameter, mode: NumericMode) -> QParameter:
    """Validate a deformation parameter against the coefficient mode."""

    if q == 0:
        raise ScalarError("q must be nonzero")
    if mode is NumericMode.EXACT:
        if not is_exact_q(q):
            raise ModeMismatchError("Exact-mode algebra requires a rational q")
        return Fraction(q)  # type: ignore[arg-type]
    return q


def q_power(q: QParameter, exponent: int, mode: NumericMode) -> Scalar:
    """Return ``q**exponent`` as a coefficient of the given mode."""

    if mode is NumericMode.EXACT:
        return GaussianRational(Fraction(q) ** exponent)  # type: ignore[arg-type]
    return complex(q) ** exponent


def format_real(value: Fraction | float) -> str:
    """Format a real part: ``1/2`` for rationals, shortest round-trip for floats."""

    if isinstance(value, Fraction):
        return str(value)
    text = repr(float(value))
    return text.removesuffix(".0")


def format_scalar(value: Scalar) -> str:
    """Format a coefficient as ``(re,im)``."""

    if isinstance(value, GaussianRational):
        return f"({format_real(value.re)},{format_real(value.im)})"
    return f"({format_real(value.real)},{format_real(value.imag)})"
