"""Truncated free noncommutative series and their seminorm families.

A :class:`FreeSeries` is a finite section ``Σ c_α ζ_α`` of a free power series,
with the concatenation product. Four families of seminorms are provided:

* entire ``Σ|c_α| ρ^{|α|}`` (ℱ_n),
* Taylor ``Σ|c_α| ρ^{|α|}`` restricted to ``ρ < r`` (ℱ_n(r)),
* free polydisk ``Σ|c_α| ρ₁^{|α|} ρ₂^{d(α)+1}`` (ℱ(𝔻_rⁿ)),
* free ball ``Σ_k (Σ_{|α|=k}|c_α|²)^{1/2} r^k`` (ℱ(𝔹ⁿ)).

Values on a truncated series are lower bounds of the untruncated value.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import StrEnum
import math
from numbers import Number
from types import MappingProxyType

import structlog

from scalars import (
    GaussianRational,
    ModeMismatchError,
    NumericMode,
    Scalar,
    format_scalar,
    mode_of,
    one,
    to_mode,
)
from words import Word, alternation_degree, check_same_alphabet, format_word

log = structlog.get_logger()


class FreeSeriesError(ValueError):
    """Base error raised by free series operations."""


class DegreeCapError(FreeSeriesError):
    """Raised when a term exceeds the degree cap of its series."""


class SeminormParameterError(FreeSeriesError):
    """Raised when a seminorm parameter is outside its admissible range."""


class SeminormFamily(StrEnum):
    ENTIRE = "entire"
    TAYLOR = "taylor"
    POLYDISK = "polydisk"
    POPESCU = "popescu"


@dataclass(frozen=True)
class SeminormValue:
    """A seminorm value together with the family and parameters it came from."""

    value: float
    family: SeminormFamily
    parameters: Mapping[str, float]
    lower_bound: bool = False

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class FreeSeries:
    """A finitely supported map ``Word → coefficient`` over the alphabet ``{1..n}``.

    Use :meth:`from_terms` to build instances; it drops exact zeros and stores the
    terms in graded-lex order.
    """

    n: int
    terms: Mapping[Word, Scalar]
    mode: NumericMode = NumericMode.FLOAT
    degree_cap: int | None = None
    truncated: bool = field(default=False, compare=False)

    @classmethod
    def from_terms(
        cls,
        n: int,
        terms: Mapping[Word, object] | Iterable[tuple[Word, object]],
        *,
        mode: NumericMode | None = None,
        degree_cap: int | None = None,
        truncated: bool = False,
    ) -> FreeSeries:
        items = list(terms.items() if isinstance(terms, Mapping) else terms)
        if mode is None:
            mode = mode_of(items[0][1]) if items else NumericMode.FLOAT
        if degree_cap is not None and degree_cap < 0:
            raise DegreeCapError("Degree cap must be nonnegative")
        accumulated: dict[Word, Scalar] = {}
        for word, coefficient in items:
            check_same_alphabet(n, word.n)
            if degree_cap is not None and len(word) > degree_cap:
                raise DegreeCapError(
                    f"Word {format_word(word)} exceeds degree cap {degree_cap}"
                )
            value = to_mode(coefficient, mode)
            if word in accumulated:
                accumulated[word] = accumulated[word] + value
            else:
                accumulated[word] = value
        ordered = {
            word: accumulated[word]
            for word in sorted(accumulated, key=Word.sort_key)
            if accumulated[word] != 0
        }
        return cls(n, MappingProxyType(ordered), mode, degree_cap, truncated)

    @classmethod
    def zero(cls, n: int, mode: NumericMode = NumericMode.FLOAT) -> FreeSeries:
        return cls.from_terms(n, {}, mode=mode)

    @classmethod
    def constant(
        cls, n: int, value: object, mode: NumericMode | None = None
    ) -> FreeSeries:
        return cls.from_terms(n, [(Word.empty(n), value)], mode=mode)

    @classmethod
    def one(cls, n: int, mode: NumericMode = NumericMode.FLOAT) -> FreeSeries:
        return cls.constant(n, one(mode), mode)

    @classmethod
    def generator(
        cls, n: int, index: int, mode: NumericMode = NumericMode.FLOAT
    ) -> FreeSeries:
        """The free generator ``ζ_index``."""

        return cls.from_terms(n, [(Word(n, (index,)), one(mode))], mode=mode)

    @classmethod
    def monomial(
        cls, word: Word, coefficient: object = 1, mode: NumericMode | None = None
    ) -> FreeSeries:
        if mode is None:
            mode = mode_of(coefficient)
        return cls.from_terms(word.n, [(word, coefficient)], mode=mode)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeSeries):
            return NotImplemented
        return (
            self.n == other.n
            and self.mode == other.mode
            and self.degree_cap == other.degree_cap
            and dict(self.terms) == dict(other.terms)
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def degree(self) -> int:
        """Largest word length present (0 for the zero series)."""

        return max((len(word) for word in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: Word) -> Scalar:
        return self.terms.get(word, to_mode(0, self.mode))

    def _check_compatible(self, other: FreeSeries) -> None:
        check_same_alphabet(self.n, other.n)
        if self.mode is not other.mode:
            raise ModeMismatchError(
                f"Cannot combine {self.mode} and {other.mode} series"
            )

    def __add__(self, other: FreeSeries) -> FreeSeries:
        if not isinstance(other, FreeSeries):
            return NotImplemented
        self._check_compatible(other)
        return FreeSeries.from_terms(
            self.n,
            [*self.terms.items(), *other.terms.items()],
            mode=self.mode,
            degree_cap=_combined_cap(self.degree_cap, other.degree_cap),
            truncated=self.truncated or other.truncated,
        )

    def __neg__(self) -> FreeSeries:
        return self.scale(-1)

    def __sub__(self, other: FreeSeries) -> FreeSeries:
        if not isinstance(other, FreeSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: object) -> FreeSeries:
        value = to_mode(factor, self.mode)
        return FreeSeries.from_terms(
            self.n,
            [(word, coefficient * value) for word, coefficient in self.terms.items()],
            mode=self.mode,
            degree_cap=self.degree_cap,
            truncated=self.truncated,
        )

    def __mul__(self, other: object) -> FreeSeries:
        if isinstance(other, FreeSeries):
            return concat_product(self, other)
        if isinstance(other, Number | GaussianRational):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: object) -> FreeSeries:
        if isinstance(other, Number | GaussianRational):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> FreeSeries:
        if exponent < 0:
            raise FreeSeriesError("Free series only have nonnegative powers")
        result = FreeSeries.one(self.n, self.mode)
        for _ in range(exponent):
            result = concat_product(result, self)
        return result

    def canonical_text(self) -> str:
        """``"(1,0)*we + (2,0)*w1,2"``; the zero series is ``"0"``."""

        if not self.terms:
            return "0"
        return " + ".join(
            f"{format_scalar(coefficient)}*w{format_word(word)}"
            for word, coefficient in self.terms.items()
        )

    def __str__(self) -> str:
        return self.canonical_text()


def _combined_cap(left: int | None, right: int | None) -> int | None:
    caps = [cap for cap in (left, right) if cap is not None]
    return min(caps) if caps else None


def concat_product(left: FreeSeries, right: FreeSeries) -> FreeSeries:
    """Concatenation product; terms above the combined degree cap are dropped."""

    left._check_compatible(right)
    cap = _combined_cap(left.degree_cap, right.degree_cap)
    truncated = left.truncated or right.truncated
    products: list[tuple[Word, Scalar]] = []
    dropped = 0
    for left_word, left_coefficient in left.terms.items():
        for right_word, right_coefficient in right.terms.items():
            if cap is not None and len(left_word) + len(right_word) > cap:
                dropped += 1
                continue
            products.append(
                (left_word + right_word, left_coefficient * right_coefficient)
            )
    if dropped:
        truncated = True
        log.debug("Dropped products above the degree cap", cap=cap, dropped=dropped)
    return FreeSeries.from_terms(
        left.n, products, mode=left.mode, degree_cap=cap, truncated=truncated
    )


def _require_positive(name: str, value: float) -> None:
    if not value > 0:
        raise SeminormParameterError(f"{name} must be positive, got {value}")


def _weighted_l1(series: FreeSeries, rho: float) -> float:
    total = 0.0
    for word, coefficient in series.terms.items():
        total += abs(coefficient) * rho ** len(word)
    return total


def entire_seminorm(series: FreeSeries, rho: float) -> SeminormValue:
    """``‖f‖_ρ = Σ|c_α| ρ^{|α|}``, the seminorms of the free entire algebra."""

    _require_positive("rho", rho)
    return SeminormValue(
        _weighted_l1(series, rho),
        SeminormFamily.ENTIRE,
        MappingProxyType({"rho": rho}),
        series.truncated,
    )


def taylor_seminorm(
    series: FreeSeries, rho: float, r: float = math.inf
) -> SeminormValue:
    """The seminorm of Taylor's free power series algebra of radius ``r``."""

    _require_positive("rho", rho)
    if not rho < r:
        raise SeminormParameterError(f"rho must be below the radius: {rho} >= {r}")
    return SeminormValue(
        _weighted_l1(series, rho),
        SeminormFamily.TAYLOR,
        MappingProxyType({"rho": rho, "r": r}),
        series.truncated,
    )


def polydisk_seminorm(
    series: FreeSeries, rho1: float, rho2: float, r: float = math.inf
) -> SeminormValue:
    """``Σ|c_α| ρ₁^{|α|} ρ₂^{d(α)+1}`` for the free polydisk of radius ``r``."""

    _require_positive("rho1", rho1)
    _require_positive("rho2", rho2)
    if not rho1 < r:
        raise SeminormParameterError(f"rho1 must be below the radius: {rho1} >= {r}")
    total = 0.0
    for word, coefficient in series.terms.items():
        total += (
            abs(coefficient) * rho1 ** len(word) * rho2 ** (alternation_degree(word) + 1)
        )
    return SeminormValue(
        total,
        SeminormFamily.POLYDISK,
        MappingProxyType({"rho1": rho1, "rho2": rho2, "r": r}),
        series.truncated,
    )


def level_l2(series: FreeSeries, k: int) -> float:
    """``(Σ_{|α|=k} |c_α|²)^{1/2}``."""

    total = 0.0
    for word, coefficient in series.terms.items():
        if len(word) == k:
            total += abs(coefficient) ** 2
    return math.sqrt(total)


def popescu_seminorm(series: FreeSeries, r: float) -> SeminormValue:
    """``Σ_k level_l2(f, k) r^k``, the explicit seminorms of the free ball."""

    if not 0 < r < 1:
        raise SeminormParameterError(f"r must lie in (0, 1), got {r}")
    total = 0.0
    for k in range(series.degree + 1):
        total += level_l2(series, k) * r**k
    return SeminormValue(
        total,
        SeminormFamily.POPESCU,
        MappingProxyType({"r": r}),
        series.truncated,
    )
