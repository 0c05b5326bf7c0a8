"""Lexer, parser, printer and evaluator for algebra expressions.

The accepted language is documented in ``grammar.ebnf``. ``*`` is the
noncommutative product; in star mode a ``*`` written directly after a
``z``-generator (``z1*``) is part of that generator and denotes its adjoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, auto
from fractions import Fraction
import re
from typing import TYPE_CHECKING, TypeAlias

from free_series import FreeSeries
from models import Mode, RunConfig
from quantum_algebra import OrderedSeries, normal_order
from scalars import GaussianRational, NumericMode, Scalar
from star_rep import StarPolynomial, star_letter, star_normal_order
from words import Flavor

if TYPE_CHECKING:
    from scalars import QParameter


class ExpressionError(ValueError):
    """Base error for expressions; ``position`` is a 0-based column or ``None``."""

    def __init__(self, message: str, position: int | None = None) -> None:
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class LexicalError(ExpressionError):
    """Raised for characters that start no token."""


class ExpressionSyntaxError(ExpressionError):
    """Raised for missing operands, unbalanced parentheses and juxtaposition."""


class IndexOutOfRangeError(ExpressionError):
    """Raised for generator indices outside ``1..n``."""


class ModeError(ExpressionError):
    """Raised for generators, stars or inverses the current mode does not allow."""


class TokenKind(Enum):
    NUMBER = auto()
    IMAGINARY = auto()
    GENERATOR = auto()
    PLUS = auto()
    MINUS = auto()
    TIMES = auto()
    CARET = auto()
    LPAREN = auto()
    RPAREN = auto()
    END = auto()


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    position: int
    index: int = 0
    starred: bool = False


_NUMBER = re.compile(r"\d+(?:\.\d+)?")
_GENERATOR = re.compile(r"([xz])(\d+)")
_PUNCTUATION = {
    "+": TokenKind.PLUS,
    "-": TokenKind.MINUS,
    "*": TokenKind.TIMES,
    "^": TokenKind.CARET,
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
}
_OPERAND_STARTS = frozenset(
    {TokenKind.NUMBER, TokenKind.IMAGINARY, TokenKind.GENERATOR, TokenKind.LPAREN}
)


def _dangling_star(source: str, end: int) -> bool:
    """A ``*`` right after a generator that no operand follows, as in ``z1* * z2``."""

    if not source.startswith("*", end):
        return False
    rest = source[end + 1 :].lstrip()
    return not rest or rest[0] in "*)+"


def tokenize(source: str, n: int, mode: Mode) -> list[Token]:
    tokens: list[Token] = []
    position = 0
    while position < len(source):
        char = source[position]
        if char.isspace():
            position += 1
            continue
        if number := _NUMBER.match(source, position):
            end = number.end()
            if source.startswith("i", end):
                tokens.append(Token(TokenKind.IMAGINARY, number.group(), position))
                end += 1
            else:
                tokens.append(Token(TokenKind.NUMBER, number.group(), position))
            position = end
        elif generator := _GENERATOR.match(source, position):
            index = int(generator.group(2))
            if not 1 <= index <= n:
                raise IndexOutOfRangeError(
                    f"Generator {generator.group()} outside 1..{n}", position
                )
            end = generator.end()
            if mode is Mode.STAR and generator.group(1) != "z":
                raise ModeError(
                    f"Star mode takes z-generators, found {generator.group()}",
                    position,
                )
            if mode is not Mode.STAR and _dangling_star(source, end):
                raise ModeError("Starred generators need star mode", end)
            starred = mode is Mode.STAR and source.startswith("*", end)
            text = generator.group() + ("*" if starred else "")
            tokens.append(
                Token(TokenKind.GENERATOR, text, position, index=index, starred=starred)
            )
            position = end + 1 if starred else end
        elif char == "i":
            tokens.append(Token(TokenKind.IMAGINARY, "1", position))
            position += 1
        elif char in _PUNCTUATION:
            tokens.append(Token(_PUNCTUATION[char], char, position))
            position += 1
        else:
            raise LexicalError(f"Unexpected character {char!r}", position)
    tokens.append(Token(TokenKind.END, "", len(source)))
    return tokens


# AST


@dataclass(frozen=True)
class Literal:
    """A real (``imaginary=False``) or imaginary number; ``text`` is its digits."""

    text: str
    imaginary: bool = False


@dataclass(frozen=True)
class Generator:
    index: int
    starred: bool = False
    name: str = "x"


@dataclass(frozen=True)
class Neg:
    operand: Expression


@dataclass(frozen=True)
class Add:
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Sub:
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Mul:
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Pow:
    base: Expression
    exponent: int


Expression: TypeAlias = Literal | Generator | Neg | Add | Sub | Mul | Pow


class _Parser:
    def __init__(self, tokens: list[Token], mode: Mode) -> None:
        self.tokens = tokens
        self.mode = mode
        self.cursor = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.cursor]

    def advance(self) -> Token:
        token = self.current
        self.cursor += 1
        return token

    def unexpected(self, expected: str) -> ExpressionSyntaxError:
        token = self.current
        if token.kind in _OPERAND_STARTS:
            return ExpressionSyntaxError(
                f"Juxtaposition is not multiplication, write '*' before {token.text!r}",
                token.position,
            )
        if token.kind is TokenKind.END:
            return ExpressionSyntaxError(
                f"Expected {expected}, found end of input", token.position
            )
        return ExpressionSyntaxError(
            f"Expected {expected}, found {token.text!r}", token.position
        )

    def parse(self) -> Expression:
        expression = self.sum()
        if self.current.kind is not TokenKind.END:
            raise self.unexpected("an operator or end of input")
        return expression

    def sum(self) -> Expression:
        left = self.product()
        while self.current.kind in (TokenKind.PLUS, TokenKind.MINUS):
            operator = self.advance()
            right = self.product()
            left = Add(left, right) if operator.kind is TokenKind.PLUS else Sub(left, right)
        return left

    def product(self) -> Expression:
        left = self.unary()
        while self.current.kind is TokenKind.TIMES:
            self.advance()
            left = Mul(left, self.unary())
        return left

    def unary(self) -> Expression:
        if self.current.kind is TokenKind.MINUS:
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expression:
        base = self.atom()
        if self.current.kind is not TokenKind.CARET:
            return base
        caret = self.advance()
        negative = False
        if self.current.kind is TokenKind.MINUS:
            self.advance()
            negative = True
        token = self.current
        if token.kind is TokenKind.NUMBER and not token.text.isdigit():
            raise ExpressionSyntaxError("Exponents must be integers", token.position)
        if token.kind is not TokenKind.NUMBER:
            found = repr(token.text) if token.text else "end of input"
            raise ExpressionSyntaxError(
                f"Expected an integer exponent, found {found}", token.position
            )
        self.advance()
        exponent = -int(token.text) if negative else int(token.text)
        if exponent < 0:
            if self.mode is not Mode.TORUS:
                raise ModeError("Negative exponents need torus mode", caret.position)
            if not isinstance(base, Generator):
                raise ModeError(
                    "Negative exponents apply to generators only", caret.position
                )
        return Pow(base, exponent)

    def atom(self) -> Expression:
        token = self.current
        if token.kind is TokenKind.NUMBER:
            self.advance()
            return Literal(token.text)
        if token.kind is TokenKind.IMAGINARY:
            self.advance()
            return Literal(token.text, imaginary=True)
        if token.kind is TokenKind.GENERATOR:
            self.advance()
            return Generator(token.index, token.starred, token.text[0])
        if token.kind is TokenKind.LPAREN:
            self.advance()
            inner = self.sum()
            if self.current.kind is not TokenKind.RPAREN:
                raise self.unexpected("')'")
            self.advance()
            return inner
        raise self.unexpected("an operand")


def parse(source: str, config: RunConfig) -> Expression:
    """Parse ``source`` for the alphabet size and mode of ``config``."""

    return _Parser(tokenize(source, config.n, config.mode), config.mode).parse()


# printing

_ADD, _MUL, _NEG, _POW, _ATOM = 1, 2, 3, 4, 5


def _precedence(node: Expression) -> int:
    match node:
        case Add() | Sub():
            return _ADD
        case Mul():
            return _MUL
        case Neg():
            return _NEG
        case Pow():
            return _POW
        case _:
            return _ATOM


def _wrapped(node: Expression, parenthesize: bool) -> str:
    text = to_text(node)
    return f"({text})" if parenthesize else text


def to_text(node: Expression) -> str:
    """Print an expression so that ``parse`` reads back the same tree."""

    match node:
        case Literal(text=text, imaginary=imaginary):
            return f"{text}i" if imaginary else text
        case Generator(index=index, starred=starred, name=name):
            return f"{name}{index}{'*' if starred else ''}"
        case Neg(operand=operand):
            return "-" + _wrapped(operand, _precedence(operand) < _NEG)
        case Pow(base=base, exponent=exponent):
            return _wrapped(base, _precedence(base) < _ATOM) + f"^{exponent}"
        case Mul(left=left, right=right):
            return (
                _wrapped(left, _precedence(left) < _MUL)
                + " * "
                + _wrapped(right, _precedence(right) <= _MUL)
            )
        case Add(left=left, right=right) | Sub(left=left, right=right):
            symbol = " + " if isinstance(node, Add) else " - "
            return (
                _wrapped(left, _precedence(left) < _ADD)
                + symbol
                + _wrapped(right, _precedence(right) <= _ADD)
            )
    raise ExpressionError(f"Not an expression node: {node!r}")


# evaluation


def _numeric_mode(config: RunConfig) -> NumericMode:
    return NumericMode.EXACT if config.exact else NumericMode.FLOAT


def _literal_value(literal: Literal, mode: NumericMode) -> Scalar:
    if mode is NumericMode.EXACT:
        value = Fraction(literal.text)
        return GaussianRational(0, value) if literal.imaginary else GaussianRational(value)
    value = float(literal.text)
    return complex(0, value) if literal.imaginary else complex(value)


def _free(node: Expression, n: int, star: bool, mode: NumericMode) -> FreeSeries:
    letters = 2 * n if star else n
    match node:
        case Literal():
            return FreeSeries.constant(letters, _literal_value(node, mode), mode)
        case Generator(index=index, starred=starred):
            letter = star_letter(n, index, starred) if star else index
            return FreeSeries.generator(letters, letter, mode)
        case Neg(operand=operand):
            return -_free(operand, n, star, mode)
        case Add(left=left, right=right):
            return _free(left, n, star, mode) + _free(right, n, star, mode)
        case Sub(left=left, right=right):
            return _free(left, n, star, mode) - _free(right, n, star, mode)
        case Mul(left=left, right=right):
            return _free(left, n, star, mode) * _free(right, n, star, mode)
        case Pow(base=base, exponent=exponent):
            return _free(base, n, star, mode) ** exponent
    raise ExpressionError(f"Not an expression node: {node!r}")


def _torus(node: Expression, n: int, q: QParameter, mode: NumericMode) -> OrderedSeries:
    match node:
        case Literal():
            return OrderedSeries.constant(
                n, q, _literal_value(node, mode), Flavor.TORUS, mode
            )
        case Generator(index=index):
            return OrderedSeries.generator(n, q, index, flavor=Flavor.TORUS, mode=mode)
        case Pow(base=Generator(index=index), exponent=exponent):
            return OrderedSeries.generator(
                n, q, index, flavor=Flavor.TORUS, power=exponent, mode=mode
            )
        case Neg(operand=operand):
            return -_torus(operand, n, q, mode)
        case Add(left=left, right=right):
            return _torus(left, n, q, mode) + _torus(right, n, q, mode)
        case Sub(left=left, right=right):
            return _torus(left, n, q, mode) - _torus(right, n, q, mode)
        case Mul(left=left, right=right):
            return _torus(left, n, q, mode) * _torus(right, n, q, mode)
        case Pow(base=base, exponent=exponent):
            return _torus(base, n, q, mode) ** exponent
    raise ExpressionError(f"Not an expression node: {node!r}")


def evaluate_free(expression: Expression, config: RunConfig) -> FreeSeries:
    """The free word series of an expression (over ``2n`` letters in star mode)."""

    if config.mode is Mode.TORUS:
        raise ModeError("Torus expressions have no free word series")
    star = config.mode is Mode.STAR
    return _free(expression, config.n, star, _numeric_mode(config))


def evaluate(
    expression: Expression, config: RunConfig
) -> FreeSeries | OrderedSeries | StarPolynomial:
    """Evaluate in the algebra selected by ``config.mode``."""

    mode = _numeric_mode(config)
    match config.mode:
        case Mode.FREE:
            return evaluate_free(expression, config)
        case Mode.AFFINE:
            return normal_order(evaluate_free(expression, config), config.q_value)
        case Mode.STAR:
            return star_normal_order(evaluate_free(expression, config), config.q_value)
        case Mode.TORUS:
            return _torus(expression, config.n, config.q_value, mode)
    raise ModeError(f"Unknown mode {config.mode!r}")
