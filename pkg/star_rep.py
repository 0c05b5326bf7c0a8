"""The *-algebra Pol_q(ℂⁿ) and its truncated Fock representation.

Star words live in a :class:`~free_series.FreeSeries` over ``2n`` letters: letter
``i`` is ``z_i`` and letter ``n + i`` is ``z_i*``. :func:`star_normal_order`
rewrites them into the normal form ``Σ c_{αβ} z^α (z*)^β`` with the twisted
canonical commutation relations

* ``z_j z_i = q^{-1} z_i z_j`` and ``z_j* z_i* = q z_i* z_j*`` for ``j > i``,
* ``z_i* z_j = q z_j z_i*`` for ``i ≠ j``,
* ``z_i* z_i = q² z_i z_i* + (1 - q²)(1 - Σ_{k>i} z_k z_k*)``.

Every rewrite strictly decreases ``(length, starred-before-unstarred pairs,
inversions within each block)`` in the lexicographic order, so rewriting
terminates under any strategy.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from enum import StrEnum
from functools import cached_property
import itertools
import math
from numbers import Number, Rational
from types import MappingProxyType
from typing import Final

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import ArpackNoConvergence, eigsh
import structlog

from free_series import FreeSeries
from quantum_algebra import OrderedSeries, SeminormRangeError
from scalars import (
    GaussianRational,
    ModeMismatchError,
    NumericMode,
    QParameter,
    Scalar,
    format_scalar,
    mode_of,
    one,
    to_mode,
)
from words import (
    Flavor,
    MultiIndex,
    check_same_alphabet,
    format_multi_index,
    weight_exponent,
)

DEFAULT_NORM_TOLERANCE: Final = 1e-12
DEFAULT_MAX_ITERATIONS: Final = 100_000
DEFAULT_EULER_MAX_TERMS: Final = 100_000
DENSE_NORM_MAX_DIM: Final = 256

log = structlog.get_logger()


class StarRepError(ValueError):
    """Base error raised by the star algebra and its representation."""


class RewriteError(StarRepError):
    """Raised for malformed star expressions or an inadmissible q."""


class RepresentationMismatchError(StarRepError):
    """Raised when operands disagree on n, q or dimension."""


class ConvergenceError(StarRepError):
    """Raised when an iterative norm computation fails to converge."""


class TruncationError(StarRepError):
    """Raised when the cutoff is too small for the requested quantity."""


class EulerProductError(StarRepError):
    """Raised when the Euler product tail cannot be certified."""


class RewriteStrategy(StrEnum):
    """Which redex the rewriter reduces first."""

    LEFTMOST = "leftmost"
    RIGHTMOST = "rightmost"


class OpNormMethod(StrEnum):
    """Largest-singular-value algorithm used by :func:`op_norm`."""

    AUTO = "auto"
    DENSE = "dense"
    LANCZOS = "lanczos"
    POWER = "power"


StarKey = tuple[MultiIndex, MultiIndex]


def _star_sort_key(key: StarKey) -> tuple:
    alpha, beta = key
    return alpha.total_degree + beta.total_degree, alpha.sort_key(), beta.sort_key()


def star_letter(n: int, index: int, starred: bool = False) -> int:
    """Letter of ``z_index`` (or ``z_index*``) in the ``2n``-letter alphabet."""

    if not 1 <= index <= n:
        raise RewriteError(f"Generator index {index} outside 1..{n}")
    return index + n if starred else index


def _check_star_q(q: QParameter, mode: NumericMode) -> QParameter:
    if isinstance(q, complex):
        if q.imag != 0:
            raise RewriteError(f"q must be real, got {q}")
        q = q.real
    if mode is NumericMode.EXACT:
        if not isinstance(q, Rational):
            raise ModeMismatchError("Exact-mode star algebra requires a rational q")
        if not 0 < q <= 1:
            raise RewriteError(f"Exact-mode q must lie in (0, 1], got {q}")
        return q
    if not 0 < q < 1:
        raise RewriteError(f"q must lie in (0, 1), got {q}")
    return q


@dataclass(frozen=True)
class StarPolynomial:
    """A normal-ordered element ``Σ c_{αβ} z^α (z*)^β`` of Pol_q(ℂⁿ)."""

    n: int
    q: QParameter
    terms: Mapping[StarKey, Scalar]
    mode: NumericMode = NumericMode.FLOAT

    @classmethod
    def from_terms(
        cls,
        n: int,
        q: QParameter,
        terms: Mapping[StarKey, object] | Iterable[tuple[StarKey, object]],
        *,
        mode: NumericMode | None = None,
    ) -> StarPolynomial:
        items = list(terms.items() if isinstance(terms, Mapping) else terms)
        if mode is None:
            mode = mode_of(items[0][1]) if items else NumericMode.FLOAT
        q = _check_star_q(q, mode)
        accumulated: dict[StarKey, Scalar] = {}
        for (alpha, beta), coefficient in items:
            check_same_alphabet(n, alpha.n, beta.n)
            key = (alpha.as_flavor(Flavor.AFFINE), beta.as_flavor(Flavor.AFFINE))
            value = to_mode(coefficient, mode)
            accumulated[key] = accumulated[key] + value if key in accumulated else value
        ordered = {
            key: accumulated[key]
            for key in sorted(accumulated, key=_star_sort_key)
            if accumulated[key] != 0
        }
        return cls(n, q, MappingProxyType(ordered), mode)

    @classmethod
    def constant(
        cls, n: int, q: QParameter, value: object, mode: NumericMode | None = None
    ) -> StarPolynomial:
        zero_index = MultiIndex.zero(n)
        return cls.from_terms(n, q, [((zero_index, zero_index), value)], mode=mode)

    @classmethod
    def generator(
        cls,
        n: int,
        q: QParameter,
        index: int,
        starred: bool = False,
        mode: NumericMode = NumericMode.FLOAT,
    ) -> StarPolynomial:
        unit = MultiIndex.unit(n, index)
        key = (MultiIndex.zero(n), unit) if starred else (unit, MultiIndex.zero(n))
        return cls.from_terms(n, q, [(key, one(mode))], mode=mode)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StarPolynomial):
            return NotImplemented
        return (
            self.n == other.n
            and self.q == other.q
            and self.mode is other.mode
            and dict(self.terms) == dict(other.terms)
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def degree(self) -> int:
        return max(
            (alpha.total_degree + beta.total_degree for alpha, beta in self.terms),
            default=0,
        )

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, alpha: MultiIndex, beta: MultiIndex) -> Scalar:
        return self.terms.get((alpha, beta), to_mode(0, self.mode))

    def _check_compatible(self, other: StarPolynomial) -> None:
        if self.n != other.n or self.q != other.q:
            raise RepresentationMismatchError(
                f"Star polynomials differ in n or q: ({self.n}, {self.q}) vs "
                f"({other.n}, {other.q})"
            )
        if self.mode is not other.mode:
            raise ModeMismatchError(
                f"Cannot combine {self.mode} and {other.mode} polynomials"
            )

    def __add__(self, other: StarPolynomial) -> StarPolynomial:
        if not isinstance(other, StarPolynomial):
            return NotImplemented
        self._check_compatible(other)
        return StarPolynomial.from_terms(
            self.n, self.q, [*self.terms.items(), *other.terms.items()], mode=self.mode
        )

    def __neg__(self) -> StarPolynomial:
        return self.scale(-1)

    def __sub__(self, other: StarPolynomial) -> StarPolynomial:
        if not isinstance(other, StarPolynomial):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: object) -> StarPolynomial:
        value = to_mode(factor, self.mode)
        return StarPolynomial.from_terms(
            self.n,
            self.q,
            [(key, coefficient * value) for key, coefficient in self.terms.items()],
            mode=self.mode,
        )

    def __mul__(self, other: object) -> StarPolynomial:
        if isinstance(other, StarPolynomial):
            return star_product(self, other)
        if isinstance(other, Number | GaussianRational):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: object) -> StarPolynomial:
        if isinstance(other, Number | GaussianRational):
            return self.scale(other)
        return NotImplemented

    def canonical_text(self) -> str:
        """``"(1,0)*z[1,0]z*[0,1]"``; the zero polynomial is ``"0"``."""

        if not self.terms:
            return "0"
        return " + ".join(
            f"{format_scalar(coefficient)}*z{format_multi_index(alpha)}"
            f"z*{format_multi_index(beta)}"
            for (alpha, beta), coefficient in self.terms.items()
        )

    def __str__(self) -> str:
        return self.canonical_text()


def monomial_letters(n: int, alpha: MultiIndex, beta: MultiIndex) -> tuple[int, ...]:
    """The letters of ``z^α (z*)^β`` in the ``2n``-letter alphabet."""

    letters: list[int] = []
    for index, power in enumerate(alpha.exponents, start=1):
        letters.extend([index] * power)
    for index, power in enumerate(beta.exponents, start=1):
        letters.extend([index + n] * power)
    return tuple(letters)


def _split_normal_word(n: int, letters: Sequence[int]) -> StarKey:
    unstarred = [0] * n
    starred = [0] * n
    for letter in letters:
        if letter > n:
            starred[letter - n - 1] += 1
        else:
            unstarred[letter - 1] += 1
    return MultiIndex(tuple(unstarred)), MultiIndex(tuple(starred))


class _Rewriter:
    """One application of the commutation relations at a time."""

    def __init__(self, n: int, q: QParameter, mode: NumericMode) -> None:
        self.n = n
        self.mode = mode
        self.q = to_mode(q, mode)
        self.q_inverse = to_mode(1, mode) / self.q
        self.q_squared = self.q * self.q
        self.defect = to_mode(1, mode) - self.q_squared

    def is_redex(self, left: int, right: int) -> bool:
        n = self.n
        left_starred, right_starred = left > n, right > n
        if left_starred and not right_starred:
            return True
        if left_starred == right_starred:
            return left > right
        return False

    def find_redex(self, word: Sequence[int], strategy: RewriteStrategy) -> int | None:
        positions = range(len(word) - 1)
        if strategy is RewriteStrategy.RIGHTMOST:
            positions = reversed(positions)
        for position in positions:
            if self.is_redex(word[position], word[position + 1]):
                return position
        return None

    def rewrite(
        self, word: tuple[int, ...], position: int
    ) -> list[tuple[tuple[int, ...], Scalar]]:
        n = self.n
        prefix, suffix = word[:position], word[position + 2 :]
        left, right = word[position], word[position + 1]
        swapped = (*prefix, right, left, *suffix)
        if left <= n:
            # z_j z_i with j > i
            return [(swapped, self.q_inverse)]
        if right > n:
            # z_j* z_i* with j > i
            return [(swapped, self.q)]
        if left - n != right:
            return [(swapped, self.q)]
        index = right
        replacements = [
            (swapped, self.q_squared),
            ((*prefix, *suffix), self.defect),
        ]
        replacements.extend(
            ((*prefix, k, k + n, *suffix), -self.defect)
            for k in range(index + 1, n + 1)
        )
        return replacements


def _normalize(
    n: int,
    q: QParameter,
    mode: NumericMode,
    words: Iterable[tuple[tuple[int, ...], Scalar]],
    strategy: RewriteStrategy,
) -> StarPolynomial:
    rewriter = _Rewriter(n, q, mode)
    pending: dict[tuple[int, ...], Scalar] = {}
    for word, coefficient in words:
        pending[word] = pending[word] + coefficient if word in pending else coefficient
    normal: list[tuple[StarKey, Scalar]] = []
    while pending:
        word, coefficient = pending.popitem()
        if coefficient == 0:
            continue
        position = rewriter.find_redex(word, strategy)
        if position is None:
            normal.append((_split_normal_word(n, word), coefficient))
            continue
        for new_word, factor in rewriter.rewrite(word, position):
            value = coefficient * factor
            pending[new_word] = (
                pending[new_word] + value if new_word in pending else value
            )
    return StarPolynomial.from_terms(n, q, normal, mode=mode)


def star_normal_order(
    expr: FreeSeries,
    q: QParameter,
    strategy: RewriteStrategy = RewriteStrategy.LEFTMOST,
) -> StarPolynomial:
    """Normal-order a star word series over the ``2n``-letter alphabet.

    ``q`` must lie in ``(0, 1)``; exact mode also admits ``q = 1``, where the
    relations degenerate to commutativity plus ``z_i* z_i = z_i z_i*``.
    """

    if expr.n % 2:
        raise RewriteError(
            f"Star expressions use an even alphabet of 2n letters, got {expr.n}"
        )
    n = expr.n // 2
    q = _check_star_q(q, expr.mode)
    return _normalize(
        n,
        q,
        expr.mode,
        ((word.letters, coefficient) for word, coefficient in expr.terms.items()),
        RewriteStrategy(strategy),
    )


def star_product(
    left: StarPolynomial,
    right: StarPolynomial,
    strategy: RewriteStrategy = RewriteStrategy.LEFTMOST,
) -> StarPolynomial:
    """Product in Pol_q(ℂⁿ), normal-ordered."""

    left._check_compatible(right)
    n = left.n
    words = [
        (
            monomial_letters(n, *left_key) + monomial_letters(n, *right_key),
            left_coefficient * right_coefficient,
        )
        for left_key, left_coefficient in left.terms.items()
        for right_key, right_coefficient in right.terms.items()
    ]
    return _normalize(n, left.q, left.mode, words, RewriteStrategy(strategy))


def star_adjoint(polynomial: StarPolynomial) -> StarPolynomial:
    """The involution: reverse each monomial, toggle stars, conjugate, re-normal-order."""

    n = polynomial.n
    words = []
    for (alpha, beta), coefficient in polynomial.terms.items():
        letters = monomial_letters(n, alpha, beta)
        adjoint_letters = tuple(
            letter - n if letter > n else letter + n for letter in reversed(letters)
        )
        words.append((adjoint_letters, coefficient.conjugate()))
    return _normalize(
        n, polynomial.q, polynomial.mode, words, RewriteStrategy.LEFTMOST
    )


def embed(series: OrderedSeries) -> StarPolynomial:
    """``x^α ↦ z^α``, the inclusion of the quantum affine space."""

    if series.flavor is not Flavor.AFFINE:
        raise RepresentationMismatchError("Only affine series embed into Pol_q")
    zero_index = MultiIndex.zero(series.n)
    return StarPolynomial.from_terms(
        series.n,
        series.q,
        [((alpha, zero_index), coefficient) for alpha, coefficient in series.terms.items()],
        mode=series.mode,
    )


def qint(k: int, q: QParameter) -> QParameter:
    """The q-integer ``[k]_q = Σ_{i<k} q^{2i}``."""

    if k < 1:
        raise StarRepError(f"q-integers need k >= 1, got {k}")
    total = q**0
    for i in range(1, k):
        total += q ** (2 * i)
    return total


@dataclass(frozen=True, eq=False)
class SparseOperator:
    """A complex matrix on the truncated Fock space, stored as CSR."""

    matrix: sparse.csr_matrix

    @classmethod
    def from_entries(
        cls, dim: int, entries: Mapping[tuple[int, int], complex]
    ) -> SparseOperator:
        for row, col in entries:
            if not (0 <= row < dim and 0 <= col < dim):
                raise RepresentationMismatchError(
                    f"Entry ({row}, {col}) outside a {dim}x{dim} operator"
                )
        rows = [row for row, _ in entries]
        cols = [col for _, col in entries]
        values = np.array([complex(value) for value in entries.values()], dtype=complex)
        matrix = sparse.csr_matrix((values, (rows, cols)), shape=(dim, dim))
        return cls(matrix)

    @classmethod
    def identity(cls, dim: int) -> SparseOperator:
        return cls(sparse.identity(dim, dtype=complex, format="csr"))

    @classmethod
    def zero(cls, dim: int) -> SparseOperator:
        return cls(sparse.csr_matrix((dim, dim), dtype=complex))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def entries(self) -> dict[tuple[int, int], complex]:
        coo = self.matrix.tocoo()
        return {
            (int(row), int(col)): complex(value)
            for row, col, value in zip(coo.row, coo.col, coo.data, strict=True)
            if value != 0
        }

    def _check_dim(self, other: SparseOperator) -> None:
        if self.dim != other.dim:
            raise RepresentationMismatchError(
                f"Operator dimensions differ: {self.dim} vs {other.dim}"
            )

    def adjoint(self) -> SparseOperator:
        return SparseOperator(self.matrix.conj().T.tocsr())

    def __matmul__(self, other: SparseOperator) -> SparseOperator:
        self._check_dim(other)
        return SparseOperator((self.matrix @ other.matrix).tocsr())

    def __add__(self, other: SparseOperator) -> SparseOperator:
        self._check_dim(other)
        return SparseOperator((self.matrix + other.matrix).tocsr())

    def __sub__(self, other: SparseOperator) -> SparseOperator:
        self._check_dim(other)
        return SparseOperator((self.matrix - other.matrix).tocsr())

    def scale(self, factor: complex) -> SparseOperator:
        return SparseOperator((self.matrix * complex(factor)).tocsr())

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def to_triplets(self) -> str:
        """One ``row col re im`` line per stored entry, sorted row-major."""

        lines = [
            f"{row} {col} {value.real!r} {value.imag!r}"
            for (row, col), value in sorted(self.entries.items())
        ]
        return "\n".join(lines) + ("\n" if lines else "")


def _compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    # stars and bars
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        previous = -1
        values = []
        for bar in bars:
            values.append(bar - previous - 1)
            previous = bar
        values.append(total + parts - 1 - previous - 1)
        yield tuple(values)


@dataclass(frozen=True)
class TruncatedRep:
    """The Fock representation compressed to ``span{e_α : |α| ≤ cutoff}``."""

    n: int
    q: float
    cutoff: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise StarRepError(f"n must be positive, got {self.n}")
        if not 0 < self.q < 1:
            raise StarRepError(f"q must lie in (0, 1), got {self.q}")
        if self.cutoff < 0:
            raise StarRepError(f"Cutoff must be nonnegative, got {self.cutoff}")
        object.__setattr__(self, "q", float(self.q))

    @property
    def dim(self) -> int:
        return math.comb(self.cutoff + self.n, self.n)

    @cached_property
    def basis(self) -> tuple[MultiIndex, ...]:
        indices = [
            MultiIndex(exponents)
            for degree in range(self.cutoff + 1)
            for exponents in _compositions(degree, self.n)
        ]
        return tuple(sorted(indices, key=MultiIndex.sort_key))

    @cached_property
    def index(self) -> Mapping[MultiIndex, int]:
        return MappingProxyType(
            {alpha: position for position, alpha in enumerate(self.basis)}
        )

    @cached_property
    def generators(self) -> tuple[SparseOperator, ...]:
        return tuple(build_rep(self))

    @cached_property
    def adjoint_generators(self) -> tuple[SparseOperator, ...]:
        return tuple(operator.adjoint() for operator in self.generators)


def build_rep(rep: TruncatedRep) -> list[SparseOperator]:
    """Matrices of ``π_N(z_1), …, π_N(z_n)``; top-degree columns map to zero."""

    q = rep.q
    base = math.sqrt(1 - q * q)
    operators = []
    for j in range(rep.n):
        entries: dict[tuple[int, int], complex] = {}
        for column, alpha in enumerate(rep.basis):
            if alpha.total_degree >= rep.cutoff:
                continue
            exponents = alpha.exponents
            raised = MultiIndex.unit(rep.n, j + 1) + alpha
            weight = (
                base
                * math.sqrt(qint(exponents[j] + 1, q))
                * q ** sum(exponents[j + 1 :])
            )
            entries[(rep.index[raised], column)] = weight
        operators.append(SparseOperator.from_entries(rep.dim, entries))
    log.debug(
        "Built truncated representation", n=rep.n, q=q, cutoff=rep.cutoff, dim=rep.dim
    )
    return operators


def _check_rep_parameters(n: int, q: QParameter, rep: TruncatedRep) -> None:
    if n != rep.n:
        raise RepresentationMismatchError(
            f"Polynomial has n={n}, representation has n={rep.n}"
        )
    if not math.isclose(float(q), rep.q, rel_tol=1e-15, abs_tol=0.0):
        raise RepresentationMismatchError(
            f"Polynomial has q={q}, representation has q={rep.q}"
        )


def rep_apply(polynomial: StarPolynomial, rep: TruncatedRep) -> SparseOperator:
    """``π_N`` of a normal-ordered polynomial, products taken left to right."""

    _check_rep_parameters(polynomial.n, polynomial.q, rep)
    n = rep.n
    letter_operators = (*rep.generators, *rep.adjoint_generators)
    result = SparseOperator.zero(rep.dim)
    for (alpha, beta), coefficient in polynomial.terms.items():
        product = SparseOperator.identity(rep.dim)
        for letter in monomial_letters(n, alpha, beta):
            product = product @ letter_operators[letter - 1]
        result = result + product.scale(complex(coefficient))
    return result


def scale_automorphism(series: OrderedSeries, r: float) -> OrderedSeries:
    """``γ_r``: multiply the coefficient of ``x^α`` by ``r^{|α|}``."""

    if not 0 < r < 1:
        raise SeminormRangeError(f"r must lie in (0, 1), got {r}")
    if series.flavor is not Flavor.AFFINE:
        raise RepresentationMismatchError("γ_r acts on affine series")
    factor = to_mode(r, series.mode)
    return OrderedSeries.from_terms(
        series.n,
        series.q,
        [
            (alpha, coefficient * factor**alpha.total_degree)
            for alpha, coefficient in series.terms.items()
        ],
        mode=series.mode,
    )


def dense_op_norm(matrix: np.ndarray) -> float:
    """Spectral norm of a dense matrix (0 for an empty one)."""

    if matrix.size == 0:
        return 0.0
    return float(np.linalg.norm(matrix, 2))


def _lanczos_norm(operator: SparseOperator, tol: float, max_iter: int) -> float:
    if operator.dim <= 2:
        return dense_op_norm(operator.to_dense())
    gram = (operator.matrix.conj().T @ operator.matrix).tocsr()
    start = np.ones(operator.dim, dtype=complex) / math.sqrt(operator.dim)
    try:
        values = eigsh(
            gram, k=1, which="LA", v0=start, tol=tol, maxiter=max_iter,
            return_eigenvectors=False,
        )
    except ArpackNoConvergence as exc:
        raise ConvergenceError(
            f"Lanczos did not converge in {max_iter} iterations"
        ) from exc
    return math.sqrt(max(float(values[0].real), 0.0))


def _power_norm(operator: SparseOperator, tol: float, max_iter: int) -> float:
    gram = (operator.matrix.conj().T @ operator.matrix).tocsr()
    vector = np.ones(operator.dim, dtype=complex) / math.sqrt(operator.dim)
    previous = None
    for _ in range(max_iter):
        image = gram @ vector
        rayleigh = float(np.vdot(vector, image).real)
        if previous is not None and abs(rayleigh - previous) < tol:
            return math.sqrt(max(rayleigh, 0.0))
        length = float(np.linalg.norm(image))
        if length == 0:
            return 0.0
        vector = image / length
        previous = rayleigh
    raise ConvergenceError(f"Power iteration did not converge in {max_iter} iterations")


def op_norm(
    operator: SparseOperator,
    tol: float = DEFAULT_NORM_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITERATIONS,
    method: OpNormMethod = OpNormMethod.AUTO,
) -> float:
    """Largest singular value of ``operator``.

    ``POWER`` is plain power iteration on ``A†A`` from the normalized all-ones
    vector, stopped when successive Rayleigh quotients differ by less than
    ``tol``. It is not the default: that rule stops early when the top two
    singular values nearly coincide, as they do for the truncated shifts
    (``√(1-q^{2N})`` next to ``√(1-q^{2N-2})``). The default ``AUTO`` uses a
    dense SVD up to ``DENSE_NORM_MAX_DIM`` and ARPACK Lanczos above it.
    """

    if not tol > 0:
        raise StarRepError(f"tol must be positive, got {tol}")
    if operator.matrix.count_nonzero() == 0:
        return 0.0
    method = OpNormMethod(method)
    if method is OpNormMethod.AUTO:
        method = (
            OpNormMethod.DENSE
            if operator.dim <= DENSE_NORM_MAX_DIM
            else OpNormMethod.LANCZOS
        )
    if method is OpNormMethod.DENSE:
        return dense_op_norm(operator.to_dense())
    if method is OpNormMethod.LANCZOS:
        return _lanczos_norm(operator, tol, max_iter)
    return _power_norm(operator, tol, max_iter)


def ball_seminorm(
    series: OrderedSeries,
    r: float,
    rep: TruncatedRep,
    *,
    tol: float = DEFAULT_NORM_TOLERANCE,
    method: OpNormMethod = OpNormMethod.AUTO,
) -> float:
    """``‖π_N(γ_r(a))‖``, a lower bound of the quantum-ball seminorm ``‖a‖_r``."""

    if series.mode is NumericMode.EXACT and not isinstance(r, Rational):
        series = series.to_float()
    scaled = scale_automorphism(series, r)
    return op_norm(rep_apply(embed(scaled), rep), tol=tol, method=method)


def vacuum_lower_bound(series: OrderedSeries, rep: TruncatedRep) -> float:
    """``‖π(a)e₀‖``; exact once the cutoff reaches ``deg(a)``."""

    if rep.cutoff < series.degree:
        raise TruncationError(
            f"Cutoff {rep.cutoff} is below the degree {series.degree}"
        )
    operator = rep_apply(embed(series), rep)
    column = operator.matrix[:, [0]].toarray().ravel()
    return float(np.linalg.norm(column))


def vacuum_norm_formula(alpha: MultiIndex, q: float) -> float:
    """``‖π(z^α)e₀‖² = q^{2Σ_{i<j}α_iα_j} Π_j Π_{k≤α_j} (1 - q^{2k})``."""

    value = q ** (2 * weight_exponent(alpha))
    for power in alpha.exponents:
        for k in range(1, power + 1):
            value *= 1 - q ** (2 * k)
    return value


def euler_product_lower(
    q: float,
    tol: float = DEFAULT_NORM_TOLERANCE,
    max_terms: int = DEFAULT_EULER_MAX_TERMS,
) -> float:
    """A certified lower bound of ``Π_{j≥1} (1 - q^{2j})``.

    The partial product ``P_J`` is multiplied by ``1 - q^{2(J+1)}/(1 - q²)``,
    which bounds the remaining factors from below; ``J`` is the first index where
    that tail drops below ``tol``.
    """

    if not 0 < q < 1:
        raise StarRepError(f"q must lie in (0, 1), got {q}")
    if not 0 < tol < 1:
        raise StarRepError(f"tol must lie in (0, 1), got {tol}")
    q_squared = q * q
    partial = 1.0
    terms = 0
    while True:
        tail = q_squared ** (terms + 1) / (1 - q_squared)
        if tail < tol:
            break
        if terms >= max_terms:
            raise EulerProductError(
                f"Tail bound {tail} still above {tol} after {max_terms} factors; "
                "raise max_terms or tol"
            )
        terms += 1
        partial *= 1 - q_squared**terms
    return partial * (1 - tail)


@dataclass(frozen=True)
class RelationResidual:
    """Largest interior entry of one commutation-relation defect."""

    relation: str
    i: int
    j: int
    residual: float


def relation_residuals(rep: TruncatedRep) -> list[RelationResidual]:
    """Residuals of the three relation families on ``span{e_α : |α| ≤ N-2}``."""

    if rep.cutoff < 2:
        raise TruncationError("Relation residuals need a cutoff of at least 2")
    q = rep.q
    z = rep.generators
    z_star = rep.adjoint_generators
    identity = SparseOperator.identity(rep.dim)
    interior = [
        column
        for column, alpha in enumerate(rep.basis)
        if alpha.total_degree <= rep.cutoff - 2
    ]

    def interior_residual(defect: SparseOperator) -> float:
        block = defect.matrix[:, interior]
        return float(abs(block).max()) if block.nnz else 0.0

    residuals = []
    for i in range(rep.n):
        tail = SparseOperator.zero(rep.dim)
        for k in range(i + 1, rep.n):
            tail = tail + z[k] @ z_star[k]
        defect = (
            z_star[i] @ z[i]
            - (z[i] @ z_star[i]).scale(q * q)
            - (identity - tail).scale(1 - q * q)
        )
        residuals.append(
            RelationResidual("ccr-diagonal", i + 1, i + 1, interior_residual(defect))
        )
    for i, j in itertools.permutations(range(rep.n), 2):
        defect = z_star[i] @ z[j] - (z[j] @ z_star[i]).scale(q)
        residuals.append(
            RelationResidual("ccr-mixed", i + 1, j + 1, interior_residual(defect))
        )
    for i, j in itertools.combinations(range(rep.n), 2):
        defect = z[i] @ z[j] - (z[j] @ z[i]).scale(q)
        residuals.append(
            RelationResidual("q-commute", i + 1, j + 1, interior_residual(defect))
        )
    return residuals
