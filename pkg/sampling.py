"""Seeded random generators for series, star words, matrix tuples and expressions.

Every generator draws from a caller-supplied ``numpy.random.Generator``; equal
seeds give identical output.
"""

from __future__ import annotations

from fractions import Fraction
import math
from typing import Final

import numpy as np

from calculus import MatrixTuple
from expression import Add, Expression, Generator, Literal, Mul, Neg, Pow, Sub
from free_series import FreeSeries
from models import Mode, RunConfig
from quantum_algebra import OrderedSeries
from scalars import GaussianRational, NumericMode, Scalar
from star_rep import StarPolynomial, star_letter
from words import Flavor, MultiIndex, Word

MAX_TERMS: Final = 5


def make_rng(config: RunConfig) -> np.random.Generator:
    return np.random.default_rng(config.seed)


def numeric_mode(config: RunConfig) -> NumericMode:
    return NumericMode.EXACT if config.exact else NumericMode.FLOAT


def random_degree(rng: np.random.Generator, degree: int) -> int:
    """Uniform on ``0..degree``."""

    return int(rng.integers(0, degree + 1))


def random_word(rng: np.random.Generator, n: int, length: int) -> Word:
    return Word(n, tuple(int(letter) for letter in rng.integers(1, n + 1, size=length)))


def random_composition(rng: np.random.Generator, n: int, total: int) -> tuple[int, ...]:
    """A uniformly chosen ``α ∈ ℤ₊ⁿ`` with ``|α| = total`` (stars and bars)."""

    if n == 1:
        return (total,)
    bars = sorted(int(bar) for bar in rng.choice(total + n - 1, size=n - 1, replace=False))
    parts = []
    previous = -1
    for bar in bars:
        parts.append(bar - previous - 1)
        previous = bar
    parts.append(total + n - 2 - previous)
    return tuple(parts)


def random_float_coefficient(rng: np.random.Generator, radius: float) -> complex:
    """Uniform on the closed disk of the given radius."""

    modulus = radius * math.sqrt(rng.random())
    angle = 2 * math.pi * rng.random()
    return complex(modulus * math.cos(angle), modulus * math.sin(angle))


def random_exact_coefficient(
    rng: np.random.Generator, radius: float, denominator_bound: int
) -> GaussianRational:
    """Rational real and imaginary parts with denominators ``≤ denominator_bound``."""

    limit = Fraction(radius).limit_denominator(denominator_bound)
    while True:
        parts = []
        for _ in range(2):
            denominator = int(rng.integers(1, denominator_bound + 1))
            bound = math.floor(limit * denominator)
            parts.append(Fraction(int(rng.integers(-bound, bound + 1)), denominator))
        value = GaussianRational(parts[0], parts[1])
        if parts[0] ** 2 + parts[1] ** 2 <= limit**2:
            return value


def random_coefficient(rng: np.random.Generator, config: RunConfig) -> Scalar:
    if config.exact:
        return random_exact_coefficient(
            rng, config.coefficient_radius, config.denominator_bound
        )
    return random_float_coefficient(rng, config.coefficient_radius)


def _term_count(rng: np.random.Generator) -> int:
    return int(rng.integers(1, MAX_TERMS + 1))


def random_free_series(
    rng: np.random.Generator, config: RunConfig, n: int | None = None
) -> FreeSeries:
    n = config.n if n is None else n
    terms = []
    for _ in range(_term_count(rng)):
        word = random_word(rng, n, random_degree(rng, config.degree))
        terms.append((word, random_coefficient(rng, config)))
    return FreeSeries.from_terms(n, terms, mode=numeric_mode(config))


def random_affine_series(rng: np.random.Generator, config: RunConfig) -> OrderedSeries:
    terms = []
    for _ in range(_term_count(rng)):
        alpha = MultiIndex(
            random_composition(rng, config.n, random_degree(rng, config.degree))
        )
        terms.append((alpha, random_coefficient(rng, config)))
    return OrderedSeries.from_terms(
        config.n, config.q_value, terms, mode=numeric_mode(config)
    )


def random_torus_series(rng: np.random.Generator, config: RunConfig) -> OrderedSeries:
    """Laurent polynomial with ``‖α‖₁`` uniform on ``0..degree``."""

    terms = []
    for _ in range(_term_count(rng)):
        magnitudes = random_composition(rng, config.n, random_degree(rng, config.degree))
        signs = rng.choice((-1, 1), size=config.n)
        alpha = MultiIndex(
            tuple(int(sign) * value for sign, value in zip(signs, magnitudes, strict=True)),
            Flavor.TORUS,
        )
        terms.append((alpha, random_coefficient(rng, config)))
    return OrderedSeries.from_terms(
        config.n,
        config.q_value,
        terms,
        flavor=Flavor.TORUS,
        mode=numeric_mode(config),
    )


def random_star_polynomial(
    rng: np.random.Generator, config: RunConfig
) -> StarPolynomial:
    terms = []
    for _ in range(_term_count(rng)):
        total = random_degree(rng, config.degree)
        split = int(rng.integers(0, total + 1))
        alpha = MultiIndex(random_composition(rng, config.n, split))
        beta = MultiIndex(random_composition(rng, config.n, total - split))
        terms.append(((alpha, beta), random_coefficient(rng, config)))
    return StarPolynomial.from_terms(
        config.n, config.q_value, terms, mode=numeric_mode(config)
    )


def random_series(
    rng: np.random.Generator, config: RunConfig, shape: Mode | None = None
) -> FreeSeries | OrderedSeries | StarPolynomial:
    """A random element of the algebra named by ``shape`` (default ``config.mode``)."""

    match Mode(shape or config.mode):
        case Mode.FREE:
            return random_free_series(rng, config)
        case Mode.AFFINE:
            return random_affine_series(rng, config)
        case Mode.TORUS:
            return random_torus_series(rng, config)
        case Mode.STAR:
            return random_star_polynomial(rng, config)


def random_star_word(
    rng: np.random.Generator, n: int, max_length: int, mode: NumericMode
) -> FreeSeries:
    """A single word over ``z_i`` and ``z_i*`` with coefficient 1, as a ``2n``-letter series."""

    length = random_degree(rng, max_length)
    letters = tuple(
        star_letter(n, int(rng.integers(1, n + 1)), bool(rng.integers(0, 2)))
        for _ in range(length)
    )
    return FreeSeries.monomial(Word(2 * n, letters), 1, mode)


def random_matrix_tuple(
    rng: np.random.Generator, n: int, d: int, scale: float = 1.0
) -> MatrixTuple:
    """Complex Gaussian entries with variance ``scale² / d``."""

    factor = scale / math.sqrt(2 * d)
    return MatrixTuple(
        tuple(
            factor * (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
            for _ in range(n)
        )
    )


def random_normal_matrix(rng: np.random.Generator, d: int, radius: float) -> np.ndarray:
    """``U diag(λ) U*`` with Haar-like unitary ``U`` and eigenvalues in the disk."""

    gaussian = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    unitary, _ = np.linalg.qr(gaussian)
    eigenvalues = np.array([random_float_coefficient(rng, radius) for _ in range(d)])
    return unitary @ np.diag(eigenvalues) @ unitary.conj().T


def random_expression(
    rng: np.random.Generator, n: int, mode: Mode, depth: int = 3
) -> Expression:
    """A random syntax tree that respects the context rules of ``mode``."""

    if depth <= 0 or rng.random() < 0.3:
        return _random_leaf(rng, n, mode)
    choice = int(rng.integers(0, 6))
    if choice == 0:
        return Neg(random_expression(rng, n, mode, depth - 1))
    if choice == 1:
        base = random_expression(rng, n, mode, depth - 1)
        exponent = int(rng.integers(0, 4))
        if mode is Mode.TORUS and isinstance(base, Generator) and rng.random() < 0.5:
            exponent = -exponent
        return Pow(base, exponent)
    left = random_expression(rng, n, mode, depth - 1)
    right = random_expression(rng, n, mode, depth - 1)
    return (Add, Sub, Mul, Mul)[choice - 2](left, right)


def _random_leaf(rng: np.random.Generator, n: int, mode: Mode) -> Expression:
    kind = int(rng.integers(0, 4))
    if kind == 0:
        return Literal(str(int(rng.integers(0, 10))))
    if kind == 1:
        whole, tenths = int(rng.integers(0, 10)), int(rng.integers(0, 10))
        return Literal(f"{whole}.{tenths}", imaginary=bool(rng.integers(0, 2)))
    index = int(rng.integers(1, n + 1))
    if mode is Mode.STAR:
        return Generator(index, starred=bool(rng.integers(0, 2)), name="z")
    return Generator(index, name=str(rng.choice(("x", "z"))))
