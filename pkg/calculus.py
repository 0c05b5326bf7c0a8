"""Functional calculus on matrix tuples and joint spectral radius estimates."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum
import math
from typing import Final

import numpy as np
import structlog

from free_series import FreeSeries, level_l2
from quantum_algebra import OrderedSeries
from star_rep import dense_op_norm
from words import Flavor, check_same_alphabet

COMMUTATOR_TOLERANCE: Final = 1e-12
DEFAULT_WORD_BUDGET: Final = 2**20
DEFAULT_CONTRACTIVITY_MARGIN: Final = 1e-12
DEFAULT_BOUND_TOLERANCE: Final = 1e-12

log = structlog.get_logger()


class CalculusError(ValueError):
    """Base error raised by the functional calculus."""


class TupleShapeError(CalculusError):
    """Raised for empty tuples or matrices of unequal or non-square shape."""


class NonCommutingError(CalculusError):
    """Raised when the commutative calculus receives a non-commuting tuple."""


class BudgetExceededError(CalculusError):
    """Raised when word enumeration would exceed the configured budget."""


class ContractivityError(CalculusError):
    """Raised when a tuple is outside the domain of a calculus."""


class Verdict(StrEnum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True, eq=False)
class MatrixTuple:
    """``n`` complex ``d×d`` matrices ``(a_1, …, a_n)``."""

    matrices: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if not self.matrices:
            raise TupleShapeError("A matrix tuple needs at least one matrix")
        arrays = tuple(np.asarray(matrix, dtype=complex) for matrix in self.matrices)
        shape = arrays[0].shape
        if len(shape) != 2 or shape[0] != shape[1]:
            raise TupleShapeError(f"Matrices must be square, got shape {shape}")
        for array in arrays:
            if array.shape != shape:
                raise TupleShapeError(
                    f"Matrices have different shapes: {shape} vs {array.shape}"
                )
        object.__setattr__(self, "matrices", arrays)

    @classmethod
    def zeros(cls, n: int, d: int) -> MatrixTuple:
        return cls(tuple(np.zeros((d, d), dtype=complex) for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.matrices)

    @property
    def d(self) -> int:
        return self.matrices[0].shape[0]

    def scale(self, factor: complex) -> MatrixTuple:
        return MatrixTuple(tuple(factor * matrix for matrix in self.matrices))

    def word_product(self, letters: Sequence[int]) -> np.ndarray:
        """``a_{α_1}···a_{α_k}``, multiplied left to right; ``I`` for the empty word."""

        result = np.eye(self.d, dtype=complex)
        for letter in letters:
            result = result @ self.matrices[letter - 1]
        return result


def free_eval(series: FreeSeries, a: MatrixTuple) -> np.ndarray:
    """``Σ_α c_α a_α`` in graded-lex order, reusing the product of each prefix."""

    check_same_alphabet(series.n, a.n)
    products: dict[tuple[int, ...], np.ndarray] = {(): np.eye(a.d, dtype=complex)}

    def product(letters: tuple[int, ...]) -> np.ndarray:
        if letters not in products:
            products[letters] = product(letters[:-1]) @ a.matrices[letters[-1] - 1]
        return products[letters]

    result = np.zeros((a.d, a.d), dtype=complex)
    for word, coefficient in series.terms.items():
        result = result + complex(coefficient) * product(word.letters)
    return result


def max_commutator(a: MatrixTuple) -> float:
    """Largest entry of any commutator ``[a_i, a_j]``."""

    largest = 0.0
    for i in range(a.n):
        for j in range(i + 1, a.n):
            left, right = a.matrices[i], a.matrices[j]
            commutator = left @ right - right @ left
            largest = max(largest, float(np.max(np.abs(commutator), initial=0.0)))
    return largest


def commutative_eval(series: OrderedSeries, a: MatrixTuple) -> np.ndarray:
    """``Σ_α c_α a_1^{α_1}···a_n^{α_n}`` for a commuting tuple."""

    if series.flavor is not Flavor.AFFINE:
        raise CalculusError("The entire functional calculus needs an affine series")
    check_same_alphabet(series.n, a.n)
    residual = max_commutator(a)
    if residual > COMMUTATOR_TOLERANCE:
        raise NonCommutingError(
            f"Tuple does not commute: commutator entry {residual:.3e}"
        )
    result = np.zeros((a.d, a.d), dtype=complex)
    for alpha, coefficient in series.terms.items():
        monomial = np.eye(a.d, dtype=complex)
        for matrix, power in zip(a.matrices, alpha.exponents, strict=True):
            monomial = monomial @ np.linalg.matrix_power(matrix, power)
        result = result + complex(coefficient) * monomial
    return result


def spectral_radius(matrix: np.ndarray) -> float:
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(matrix))))


@dataclass(frozen=True)
class JsrEstimate:
    """Joint spectral radius estimate with the per-level data it came from.

    ``per_level[k-1]`` is ``s_k^{1/k}`` with ``s_k = max_{|α|=k} ‖a_α‖``.
    ``value`` is the maximum over ``k_window``; ``certified_upper`` (minimum over
    all levels) and ``certified_lower`` (largest ``ρ(a_α)^{1/|α|}``) bracket the
    true radius.
    """

    value: float
    k_window: tuple[int, int]
    per_level: tuple[float, ...]
    certified_upper: float
    certified_lower: float


def joint_spectral_radius(
    a: MatrixTuple, k_max: int, budget: int = DEFAULT_WORD_BUDGET
) -> JsrEstimate:
    if k_max < 2:
        raise CalculusError(f"k_max must be at least 2, got {k_max}")
    if a.n**k_max > budget:
        raise BudgetExceededError(
            f"{a.n}^{k_max} words exceed the enumeration budget {budget}"
        )
    level = [np.eye(a.d, dtype=complex)]
    per_level = []
    certified_lower = 0.0
    for k in range(1, k_max + 1):
        level = [prefix @ matrix for prefix in level for matrix in a.matrices]
        largest = max(dense_op_norm(product) for product in level)
        per_level.append(largest ** (1 / k))
        radius = max(spectral_radius(product) for product in level)
        certified_lower = max(certified_lower, radius ** (1 / k))
    start = math.ceil(k_max / 2)
    estimate = JsrEstimate(
        value=max(per_level[start - 1 :]),
        k_window=(start, k_max),
        per_level=tuple(per_level),
        certified_upper=min(per_level),
        certified_lower=certified_lower,
    )
    log.debug("Estimated joint spectral radius", k_max=k_max, value=estimate.value)
    return estimate


def is_strictly_r_contractive(
    a: MatrixTuple,
    r: float,
    k_max: int,
    budget: int = DEFAULT_WORD_BUDGET,
    margin: float = DEFAULT_CONTRACTIVITY_MARGIN,
) -> Verdict:
    """Whether ``r_∞(a) < r``, decided only from certified bounds."""

    if not r > 0:
        raise CalculusError(f"r must be positive, got {r}")
    estimate = joint_spectral_radius(a, k_max, budget)
    if estimate.certified_upper + margin < r:
        return Verdict.YES
    if estimate.certified_lower >= r:
        return Verdict.NO
    return Verdict.INCONCLUSIVE


def row_norm(t: MatrixTuple) -> float:
    """``‖Σ T_i T_i*‖^{1/2}``, the norm of the row operator ``[T_1 … T_n]``."""

    gram = sum(matrix @ matrix.conj().T for matrix in t.matrices)
    largest = float(np.max(np.linalg.eigvalsh(gram)))
    return math.sqrt(max(largest, 0.0))


@dataclass(frozen=True)
class PopescuBoundCheck:
    lhs: float
    rhs: float
    row_norm: float
    passed: bool


def popescu_eval_bound_check(
    series: FreeSeries, t: MatrixTuple, tolerance: float = DEFAULT_BOUND_TOLERANCE
) -> PopescuBoundCheck:
    """Check ``‖f(T)‖ ≤ Σ_k level_l2(f, k)·‖T‖_row^k`` for a strict row contraction."""

    norm = row_norm(t)
    if norm >= 1:
        raise ContractivityError(f"Row norm {norm} is not below 1")
    lhs = dense_op_norm(free_eval(series, t))
    rhs = 0.0
    for k in range(series.degree + 1):
        rhs += level_l2(series, k) * norm**k
    return PopescuBoundCheck(lhs, rhs, norm, lhs <= rhs + tolerance * max(1.0, rhs))


def random_row_contraction(
    rng: np.random.Generator, n: int, d: int, radius: float
) -> MatrixTuple:
    """A Gaussian tuple rescaled to row norm ``radius``."""

    matrices = tuple(
        rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        for _ in range(n)
    )
    t = MatrixTuple(matrices)
    norm = row_norm(t)
    return t.scale(radius / norm) if norm > 0 else t


def sampled_popescu_norm(
    series: FreeSeries,
    r: float,
    *,
    d: int = 4,
    samples: int = 64,
    seed: int = 0,
) -> float:
    """Sampled lower estimate of ``sup ‖f(T)‖`` over tuples of row norm ``r``."""

    if not 0 < r < 1:
        raise CalculusError(f"r must lie in (0, 1), got {r}")
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(samples):
        t = random_row_contraction(rng, series.n, d, r)
        best = max(best, dense_op_norm(free_eval(series, t)))
    return best


def taylor_eval(
    series: FreeSeries,
    a: MatrixTuple,
    r: float,
    k_max: int = 8,
    budget: int = DEFAULT_WORD_BUDGET,
) -> np.ndarray:
    """Evaluate a section of ``f ∈ ℱ_n(r)`` at a tuple certified strictly r-contractive."""

    verdict = is_strictly_r_contractive(a, r, k_max, budget)
    if verdict is not Verdict.YES:
        raise ContractivityError(
            f"Tuple is not certified strictly {r}-contractive (verdict: {verdict})"
        )
    return free_eval(series, a)
