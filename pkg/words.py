"""Words of the free monoid and integer multi-indices.

Words index the coefficients of free noncommutative series, multi-indices index
ordered monomials ``x^α``. Both carry their alphabet size explicitly, and every
collection of them is iterated in graded-lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
import itertools
import re
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Iterator, Sequence

    from scalars import QParameter


class WordError(ValueError):
    """Base error raised for malformed words and multi-indices."""


class LetterOutOfRangeError(WordError):
    """Raised when a letter is outside ``{1, ..., n}``."""


class AlphabetMismatchError(WordError):
    """Raised when words or indices over different alphabets are combined."""


class MultiIndexError(WordError):
    """Raised for malformed multi-indices."""


class Flavor(StrEnum):
    """Exponent range of a multi-index: ``ℤ₊ⁿ`` or ``ℤⁿ``."""

    AFFINE = "affine"
    TORUS = "torus"


@dataclass(frozen=True, slots=True)
class Word:
    """A finite sequence of generator indices over the alphabet ``{1, ..., n}``."""

    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise WordError(f"Alphabet size must be positive, got {self.n}")
        letters = tuple(int(letter) for letter in self.letters)
        for letter in letters:
            if not 1 <= letter <= self.n:
                raise LetterOutOfRangeError(
                    f"Letter {letter} outside alphabet {{1, ..., {self.n}}}"
                )
        object.__setattr__(self, "letters", letters)

    @classmethod
    def empty(cls, n: int) -> Word:
        return cls(n)

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: Word) -> Word:
        check_same_alphabet(self.n, other.n)
        return Word(self.n, self.letters + other.letters)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Graded-lexicographic key: length first, then letters."""

        return len(self.letters), self.letters

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True, slots=True)
class MultiIndex:
    """An exponent vector in ``ℤ₊ⁿ`` (affine) or ``ℤⁿ`` (torus)."""

    exponents: tuple[int, ...]
    flavor: Flavor = Flavor.AFFINE

    def __post_init__(self) -> None:
        exponents = tuple(int(value) for value in self.exponents)
        if not exponents:
            raise MultiIndexError("A multi-index needs at least one component")
        if self.flavor is Flavor.AFFINE and any(value < 0 for value in exponents):
            raise MultiIndexError(
                f"Affine multi-index has a negative exponent: {exponents}"
            )
        object.__setattr__(self, "exponents", exponents)
        object.__setattr__(self, "flavor", Flavor(self.flavor))

    @classmethod
    def zero(cls, n: int, flavor: Flavor = Flavor.AFFINE) -> MultiIndex:
        return cls((0,) * n, flavor)

    @classmethod
    def unit(
        cls, n: int, index: int, flavor: Flavor = Flavor.AFFINE, power: int = 1
    ) -> MultiIndex:
        """Return ``power·δ_index`` (``index`` is 1-based)."""

        if not 1 <= index <= n:
            raise LetterOutOfRangeError(f"Generator index {index} outside 1..{n}")
        exponents = [0] * n
        exponents[index - 1] = power
        return cls(tuple(exponents), flavor)

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def total_degree(self) -> int:
        """``|α|``; the ℓ¹-norm on the torus."""

        return sum(abs(value) for value in self.exponents)

    def __add__(self, other: MultiIndex) -> MultiIndex:
        check_same_alphabet(self.n, other.n)
        flavor = (
            Flavor.TORUS
            if Flavor.TORUS in (self.flavor, other.flavor)
            else Flavor.AFFINE
        )
        return MultiIndex(
            tuple(a + b for a, b in zip(self.exponents, other.exponents, strict=True)),
            flavor,
        )

    def as_flavor(self, flavor: Flavor) -> MultiIndex:
        return MultiIndex(self.exponents, flavor)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Graded order: total degree, then ``x_1``-heavy indices first."""

        return self.total_degree, tuple(-value for value in self.exponents)

    def __str__(self) -> str:
        return format_multi_index(self)


def check_same_alphabet(*sizes: int) -> int:
    if len(set(sizes)) > 1:
        raise AlphabetMismatchError(f"Alphabet sizes differ: {sorted(set(sizes))}")
    return sizes[0]


def word_length(word: Word) -> int:
    return len(word.letters)


def alternation_degree(word: Word) -> int:
    """Number of adjacent unequal letters; ``|w| - 1`` for words of length 0 or 1."""

    if len(word.letters) < 2:
        return len(word.letters) - 1
    return sum(1 for a, b in itertools.pairwise(word.letters) if a != b)


def inversion_count(word: Word) -> int:
    """Number of position pairs ``p < s`` with ``w_p > w_s``."""

    seen = [0] * (word.n + 1)
    count = 0
    for letter in word.letters:
        # letters already seen that are larger than the current one
        count += sum(seen[letter + 1 :])
        seen[letter] += 1
    return count


def cross_inversions(left: Word, right: Word) -> int:
    """Pairs (letter of ``left``, letter of ``right``) with the left letter larger."""

    check_same_alphabet(left.n, right.n)
    counts = abelianize(right).exponents
    return sum(sum(counts[: letter - 1]) for letter in left.letters)


def abelianize(word: Word) -> MultiIndex:
    """Occurrence counts of each letter."""

    counts = [0] * word.n
    for letter in word.letters:
        counts[letter - 1] += 1
    return MultiIndex(tuple(counts))


def weight_exponent(alpha: MultiIndex) -> int:
    """The exact integer ``Σ_{i<j} α_i α_j``."""

    total = 0
    running = 0
    for value in alpha.exponents:
        total += running * value
        running += value
    return total


def weight_wq(alpha: MultiIndex, q: QParameter) -> float:
    """The weight ``w_q(α)``: 1 for ``|q| ≥ 1``, ``|q|^{Σ_{i<j} α_i α_j}`` otherwise."""

    if alpha.flavor is not Flavor.AFFINE:
        raise MultiIndexError("The weight w_q is defined on affine multi-indices")
    if q == 0:
        raise WordError("q must be nonzero")
    modulus = float(abs(q))
    if modulus >= 1:
        return 1.0
    return modulus ** weight_exponent(alpha)


def words_of_length(n: int, length: int) -> Iterator[Word]:
    """All words of a given length, in lexicographic order."""

    for letters in itertools.product(range(1, n + 1), repeat=length):
        yield Word(n, letters)


def format_word(word: Word) -> str:
    """``"1,2,1"``; the empty word is ``"e"``."""

    if not word.letters:
        return "e"
    return ",".join(str(letter) for letter in word.letters)


def parse_word(text: str, n: int) -> Word:
    stripped = text.strip()
    if stripped == "e":
        return Word.empty(n)
    try:
        letters = tuple(int(part) for part in stripped.split(","))
    except ValueError as exc:
        raise WordError(f"Malformed word: {text!r}") from exc
    return Word(n, letters)


_MULTI_INDEX_PATTERN = re.compile(r"^\[\s*-?\d+(\s*,\s*-?\d+)*\s*\]$")


def format_multi_index(alpha: MultiIndex) -> str:
    """``"[2,0,1]"``."""

    return "[" + ",".join(str(value) for value in alpha.exponents) + "]"


def parse_multi_index(text: str, flavor: Flavor = Flavor.AFFINE) -> MultiIndex:
    stripped = text.strip()
    if not _MULTI_INDEX_PATTERN.fullmatch(stripped):
        raise MultiIndexError(f"Malformed multi-index: {text!r}")
    values: Sequence[int] = [int(part) for part in stripped[1:-1].split(",")]
    return MultiIndex(tuple(values), flavor)
