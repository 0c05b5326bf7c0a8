"""Quantum affine space and quantum torus: normal ordering, products, seminorms.

Generators satisfy ``x_i x_j = q x_j x_i`` for ``i < j``. Every element is stored
in the ordered monomial basis ``x^α = x_1^{α_1}···x_n^{α_n}``; sorting a descending
pair ``x_j x_i`` (``j > i``) into ascending order contributes a factor ``q^{-1}``.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
import math
from numbers import Number
from types import MappingProxyType

from free_series import FreeSeries
from scalars import (
    GaussianRational,
    ModeMismatchError,
    NumericMode,
    QParameter,
    Scalar,
    check_q,
    format_scalar,
    mode_of,
    one,
    q_power,
    to_mode,
)
from words import (
    Flavor,
    MultiIndex,
    abelianize,
    check_same_alphabet,
    format_multi_index,
    inversion_count,
    weight_wq,
)

_UNIT_MODULUS_TOLERANCE = 1e-12


class QuantumAlgebraError(ValueError):
    """Base error raised by quantum polynomial operations."""


class ParameterMismatchError(QuantumAlgebraError):
    """Raised when series with different ``n``, ``q`` or flavor are combined."""


class DegenerateTorusError(QuantumAlgebraError):
    """Raised when torus seminorms are requested for ``|q| ≠ 1``."""


class SeminormRangeError(QuantumAlgebraError):
    """Raised for seminorm parameters outside their range."""


class SeminormVariant(StrEnum):
    """The ℓ¹, ℓ² and sup variants of the weighted seminorms."""

    L1 = "1"
    L2 = "2"
    SUP = "inf"


@dataclass(frozen=True)
class FamilyConstants:
    """Comparison constants between the ℓ¹/ℓ²/sup seminorm families."""

    lower: float
    upper: float


@dataclass(frozen=True)
class OrderedSeries:
    """A finite combination ``Σ c_α x^α`` in the quantum affine space or torus."""

    n: int
    q: QParameter
    flavor: Flavor
    terms: Mapping[MultiIndex, Scalar]
    mode: NumericMode = NumericMode.FLOAT

    @classmethod
    def from_terms(
        cls,
        n: int,
        q: QParameter,
        terms: Mapping[MultiIndex, object] | Iterable[tuple[MultiIndex, object]],
        *,
        flavor: Flavor = Flavor.AFFINE,
        mode: NumericMode | None = None,
    ) -> OrderedSeries:
        items = list(terms.items() if isinstance(terms, Mapping) else terms)
        if mode is None:
            mode = mode_of(items[0][1]) if items else NumericMode.FLOAT
        q = check_q(q, mode)
        accumulated: dict[MultiIndex, Scalar] = {}
        for alpha, coefficient in items:
            check_same_alphabet(n, alpha.n)
            if flavor is Flavor.AFFINE and alpha.flavor is Flavor.TORUS:
                # torus indices with nonnegative entries are still affine
                alpha = MultiIndex(alpha.exponents, Flavor.AFFINE)
            key = alpha.as_flavor(flavor)
            value = to_mode(coefficient, mode)
            accumulated[key] = accumulated[key] + value if key in accumulated else value
        ordered = {
            alpha: accumulated[alpha]
            for alpha in sorted(accumulated, key=MultiIndex.sort_key)
            if accumulated[alpha] != 0
        }
        return cls(n, q, flavor, MappingProxyType(ordered), mode)

    @classmethod
    def zero(
        cls,
        n: int,
        q: QParameter,
        flavor: Flavor = Flavor.AFFINE,
        mode: NumericMode = NumericMode.FLOAT,
    ) -> OrderedSeries:
        return cls.from_terms(n, q, {}, flavor=flavor, mode=mode)

    @classmethod
    def constant(
        cls,
        n: int,
        q: QParameter,
        value: object,
        flavor: Flavor = Flavor.AFFINE,
        mode: NumericMode | None = None,
    ) -> OrderedSeries:
        return cls.from_terms(
            n, q, [(MultiIndex.zero(n, flavor), value)], flavor=flavor, mode=mode
        )

    @classmethod
    def monomial(
        cls,
        q: QParameter,
        alpha: MultiIndex,
        coefficient: object = 1,
        mode: NumericMode | None = None,
    ) -> OrderedSeries:
        return cls.from_terms(
            alpha.n, q, [(alpha, coefficient)], flavor=alpha.flavor, mode=mode
        )

    @classmethod
    def generator(
        cls,
        n: int,
        q: QParameter,
        index: int,
        *,
        flavor: Flavor = Flavor.AFFINE,
        power: int = 1,
        mode: NumericMode = NumericMode.FLOAT,
    ) -> OrderedSeries:
        """``x_index^power``; negative powers need the torus flavor."""

        return cls.from_terms(
            n,
            q,
            [(MultiIndex.unit(n, index, flavor, power), one(mode))],
            flavor=flavor,
            mode=mode,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrderedSeries):
            return NotImplemented
        return (
            self.n == other.n
            and self.q == other.q
            and self.flavor is other.flavor
            and self.mode is other.mode
            and dict(self.terms) == dict(other.terms)
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def degree(self) -> int:
        return max((alpha.total_degree for alpha in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, alpha: MultiIndex) -> Scalar:
        return self.terms.get(alpha.as_flavor(self.flavor), to_mode(0, self.mode))

    def check_compatible(self, other: OrderedSeries) -> None:
        if (
            self.n != other.n
            or self.q != other.q
            or self.flavor is not other.flavor
        ):
            raise ParameterMismatchError(
                "Series differ in n, q or flavor: "
                f"({self.n}, {self.q}, {self.flavor}) vs "
                f"({other.n}, {other.q}, {other.flavor})"
            )
        if self.mode is not other.mode:
            raise ModeMismatchError(
                f"Cannot combine {self.mode} and {other.mode} series"
            )

    def __add__(self, other: OrderedSeries) -> OrderedSeries:
        if not isinstance(other, OrderedSeries):
            return NotImplemented
        self.check_compatible(other)
        return OrderedSeries.from_terms(
            self.n,
            self.q,
            [*self.terms.items(), *other.terms.items()],
            flavor=self.flavor,
            mode=self.mode,
        )

    def __neg__(self) -> OrderedSeries:
        return self.scale(-1)

    def __sub__(self, other: OrderedSeries) -> OrderedSeries:
        if not isinstance(other, OrderedSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: object) -> OrderedSeries:
        value = to_mode(factor, self.mode)
        return OrderedSeries.from_terms(
            self.n,
            self.q,
            [(alpha, coefficient * value) for alpha, coefficient in self.terms.items()],
            flavor=self.flavor,
            mode=self.mode,
        )

    def to_float(self) -> OrderedSeries:
        """The same series with double-precision coefficients and ``q``."""

        return OrderedSeries.from_terms(
            self.n,
            float(self.q) if isinstance(self.q, Fraction) else self.q,
            [(alpha, complex(coefficient)) for alpha, coefficient in self.terms.items()],
            flavor=self.flavor,
            mode=NumericMode.FLOAT,
        )

    def __mul__(self, other: object) -> OrderedSeries:
        if isinstance(other, OrderedSeries):
            if self.flavor is Flavor.TORUS:
                return torus_product(self, other)
            return twisted_product(self, other)
        if isinstance(other, Number | GaussianRational):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: object) -> OrderedSeries:
        if isinstance(other, Number | GaussianRational):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> OrderedSeries:
        if exponent < 0:
            raise QuantumAlgebraError("Use generator inverses for negative powers")
        result = OrderedSeries.constant(
            self.n, self.q, one(self.mode), self.flavor, self.mode
        )
        for _ in range(exponent):
            result = result * self
        return result

    def canonical_text(self) -> str:
        """``"(1,0)*x[1,0] + (2,0)*x[0,1]"``; the zero series is ``"0"``."""

        if not self.terms:
            return "0"
        return " + ".join(
            f"{format_scalar(coefficient)}*x{format_multi_index(alpha)}"
            for alpha, coefficient in self.terms.items()
        )

    def __str__(self) -> str:
        return self.canonical_text()


def kappa(alpha: MultiIndex, beta: MultiIndex) -> int:
    """``κ(α, β) = Σ_{i<j} α_j β_i``, so that ``x^α x^β = q^{-κ(α,β)} x^{α+β}``."""

    check_same_alphabet(alpha.n, beta.n)
    total = 0
    prefix = 0
    for a, b in zip(alpha.exponents, beta.exponents, strict=True):
        total += a * prefix
        prefix += b
    return total


def sort_signed_word(letters: Sequence[int], n: int) -> tuple[int, MultiIndex]:
    """Rewrite a word in ``x_i`` (letter ``i``) and ``x_i^{-1}`` (letter ``-i``).

    Bubble-sorts the letters into ascending generator order using
    ``x_j^a x_i^b = q^{-ab} x_i^b x_j^a`` (``i < j``, ``a, b = ±1``), the inverse
    relations being conjugates of the defining ones. Returns ``(e, α)`` with
    ``word = q^e x^α``. Serves as the oracle for :func:`kappa`.
    """

    word = list(letters)
    for letter in word:
        if letter == 0 or abs(letter) > n:
            raise QuantumAlgebraError(f"Letter {letter} outside ±1..±{n}")
    exponent = 0
    swapped = True
    while swapped:
        swapped = False
        for position in range(len(word) - 1):
            left, right = word[position], word[position + 1]
            if abs(left) > abs(right):
                exponent -= (1 if left > 0 else -1) * (1 if right > 0 else -1)
                word[position], word[position + 1] = right, left
                swapped = True
    counts = [0] * n
    for letter in word:
        counts[abs(letter) - 1] += 1 if letter > 0 else -1
    flavor = Flavor.TORUS if any(letter < 0 for letter in letters) else Flavor.AFFINE
    return exponent, MultiIndex(tuple(counts), flavor)


def normal_order(series: FreeSeries, q: QParameter) -> OrderedSeries:
    """The quotient map ``ℱ → O_q``: ``ζ_w ↦ q^{-inv(w)} x^{ab(w)}``."""

    q = check_q(q, series.mode)
    terms = [
        (
            abelianize(word),
            coefficient * q_power(q, -inversion_count(word), series.mode),
        )
        for word, coefficient in series.terms.items()
    ]
    return OrderedSeries.from_terms(series.n, q, terms, mode=series.mode)


def _ordered_product(left: OrderedSeries, right: OrderedSeries) -> OrderedSeries:
    left.check_compatible(right)
    products = []
    for alpha, left_coefficient in left.terms.items():
        for beta, right_coefficient in right.terms.items():
            factor = q_power(left.q, -kappa(alpha, beta), left.mode)
            products.append(
                (alpha + beta, left_coefficient * right_coefficient * factor)
            )
    return OrderedSeries.from_terms(
        left.n, left.q, products, flavor=left.flavor, mode=left.mode
    )


def twisted_product(left: OrderedSeries, right: OrderedSeries) -> OrderedSeries:
    """Product in the quantum affine space: ``x^α ⋆ x^β = q^{-κ(α,β)} x^{α+β}``."""

    if left.flavor is not Flavor.AFFINE:
        raise ParameterMismatchError("twisted_product expects affine series")
    return _ordered_product(left, right)


def torus_product(left: OrderedSeries, right: OrderedSeries) -> OrderedSeries:
    """Product in the quantum torus, with the same κ extended to ``ℤⁿ``."""

    if left.flavor is not Flavor.TORUS:
        raise ParameterMismatchError("torus_product expects torus series")
    return _ordered_product(left, right)


def _require_affine(series: OrderedSeries) -> None:
    if series.flavor is not Flavor.AFFINE:
        raise ParameterMismatchError("Expected an affine series")


def affine_seminorm(
    series: OrderedSeries,
    rho: float,
    variant: SeminormVariant = SeminormVariant.L1,
) -> float:
    """The weighted ℓ¹ / ℓ² / sup seminorms ``(|c_α| w_q(α) ρ^{|α|})_α``."""

    _require_affine(series)
    if not rho > 0:
        raise SeminormRangeError(f"rho must be positive, got {rho}")
    variant = SeminormVariant(variant)
    weighted = [
        abs(coefficient) * weight_wq(alpha, series.q) * rho**alpha.total_degree
        for alpha, coefficient in series.terms.items()
    ]
    if variant is SeminormVariant.L1:
        total = 0.0
        for value in weighted:
            total += value
        return total
    if variant is SeminormVariant.L2:
        total = 0.0
        for value in weighted:
            total += value * value
        return math.sqrt(total)
    return max(weighted, default=0.0)


def quantum_polydisk_seminorm(
    series: OrderedSeries,
    rho: float,
    r: float,
    variant: SeminormVariant = SeminormVariant.L1,
) -> float:
    """Seminorm of the quantum polydisk of radius ``r``; requires ``0 < ρ < r``."""

    if not 0 < rho < r:
        raise SeminormRangeError(f"Need 0 < rho < r, got rho={rho}, r={r}")
    return affine_seminorm(series, rho, variant)


def torus_seminorm(series: OrderedSeries, rho: float) -> float:
    """``Σ |c_α| ρ^{‖α‖₁}`` over ``α ∈ ℤⁿ``; defined for ``|q| = 1`` only."""

    if series.flavor is not Flavor.TORUS:
        raise ParameterMismatchError("Expected a torus series")
    if abs(float(abs(series.q)) - 1.0) > _UNIT_MODULUS_TOLERANCE:
        raise DegenerateTorusError(
            f"Torus seminorms need |q| = 1, got |q| = {abs(series.q)}"
        )
    if not rho > 0:
        raise SeminormRangeError(f"rho must be positive, got {rho}")
    total = 0.0
    for alpha, coefficient in series.terms.items():
        total += abs(coefficient) * rho**alpha.total_degree
    return total


def family_equivalence_constants(rho: float, r: float, n: int) -> FamilyConstants:
    """Constants of ``‖·‖^{(∞)} ≤ ‖·‖^{(2)} ≤ ‖·‖^{(1)}_ρ ≤ C ‖·‖^{(2)}_r``.

    ``C = (r²/(r²-ρ²))^{n/2}`` from Cauchy–Schwarz and
    ``Σ_{α∈ℤ₊ⁿ} (ρ/r)^{2|α|} = (1-ρ²/r²)^{-n}``.
    """

    if not 0 < rho < r:
        raise SeminormRangeError(f"Need 0 < rho < r, got rho={rho}, r={r}")
    if n < 1:
        raise SeminormRangeError(f"n must be positive, got {n}")
    return FamilyConstants(lower=1.0, upper=(r * r / (r * r - rho * rho)) ** (n / 2))
