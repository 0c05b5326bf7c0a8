"""Conversion between algebra values and their JSON interchange payloads."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np
from pydantic import BaseModel, ValidationError

from calculus import MatrixTuple
from free_series import FreeSeries
from models import (
    ComplexQPayload,
    ExactQPayload,
    FreeSeriesPayload,
    FreeTermPayload,
    MatrixTuplePayload,
    OrderedSeriesPayload,
    OrderedTermPayload,
    StarPolynomialPayload,
    StarTermPayload,
)
from quantum_algebra import OrderedSeries
from scalars import GaussianRational, NumericMode, QParameter, Scalar
from star_rep import StarPolynomial
from words import Flavor, MultiIndex, Word

if TYPE_CHECKING:
    from models import ScalarPart


class PayloadError(ValueError):
    """Raised when a payload cannot be converted into an algebra value."""


def resolve_json_source(source: str | Path) -> str:
    """
    Return JSON text for a command-line argument.

    Args:
        source: Either a path to a JSON file or the JSON text itself.

    Returns:
        The JSON text.

    Examples:
        >>> resolve_json_source('{"n": 1, "terms": []}')
        '{"n": 1, "terms": []}'
    """
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8")
    stripped = source.strip()
    if stripped.startswith(("{", "[")):
        return stripped
    path = Path(stripped)
    if path.exists():
        return path.read_text(encoding="utf-8")
    raise PayloadError(f"Neither a JSON document nor an existing file: {source!r}")


def _validate[ModelT: BaseModel](model: type[ModelT], source: str | Path) -> ModelT:
    try:
        return model.model_validate_json(resolve_json_source(source))
    except ValidationError as exc:
        raise PayloadError(f"Invalid {model.__name__}: {exc}") from exc


def _scalar_parts(value: Scalar) -> tuple[ScalarPart, ScalarPart]:
    if isinstance(value, GaussianRational):
        return str(value.re), str(value.im)
    return float(value.real), float(value.imag)


def _exact_part(part: ScalarPart) -> Fraction:
    if isinstance(part, str):
        return Fraction(part)
    if not float(part).is_integer():
        raise PayloadError("Exact payloads carry non-integer parts as 'num/den' strings")
    return Fraction(int(part))


def _scalar_from_parts(
    re: ScalarPart, im: ScalarPart, mode: NumericMode
) -> Scalar:
    if mode is NumericMode.EXACT:
        return GaussianRational(_exact_part(re), _exact_part(im))
    real = float(Fraction(re)) if isinstance(re, str) else re
    imag = float(Fraction(im)) if isinstance(im, str) else im
    return complex(real, imag)


def _q_payload(q: QParameter) -> ExactQPayload | ComplexQPayload:
    if isinstance(q, Fraction):
        return ExactQPayload(num=q.numerator, den=q.denominator)
    value = complex(q)
    return ComplexQPayload(re=value.real, im=value.imag)


def _q_from_payload(payload: ExactQPayload | ComplexQPayload) -> QParameter:
    if isinstance(payload, ExactQPayload):
        return Fraction(payload.num, payload.den)
    if payload.im == 0:
        return payload.re
    return complex(payload.re, payload.im)


def _mode(text: str) -> NumericMode:
    try:
        return NumericMode(text)
    except ValueError as exc:
        raise PayloadError(f"Unknown numeric mode {text!r}") from exc


def free_series_to_payload(series: FreeSeries) -> FreeSeriesPayload:
    terms = []
    for word, coefficient in series.terms.items():
        re, im = _scalar_parts(coefficient)
        terms.append(FreeTermPayload(word=list(word.letters), re=re, im=im))
    return FreeSeriesPayload(n=series.n, mode=str(series.mode), terms=terms)


def free_series_from_payload(payload: FreeSeriesPayload) -> FreeSeries:
    mode = _mode(payload.mode)
    return FreeSeries.from_terms(
        payload.n,
        [
            (Word(payload.n, tuple(term.word)), _scalar_from_parts(term.re, term.im, mode))
            for term in payload.terms
        ],
        mode=mode,
    )


def ordered_series_to_payload(series: OrderedSeries) -> OrderedSeriesPayload:
    terms = []
    for alpha, coefficient in series.terms.items():
        re, im = _scalar_parts(coefficient)
        terms.append(OrderedTermPayload(alpha=list(alpha.exponents), re=re, im=im))
    return OrderedSeriesPayload(
        n=series.n,
        q=_q_payload(series.q),
        flavor=str(series.flavor),
        mode=str(series.mode),
        terms=terms,
    )


def ordered_series_from_payload(payload: OrderedSeriesPayload) -> OrderedSeries:
    mode = _mode(payload.mode)
    flavor = Flavor(payload.flavor)
    return OrderedSeries.from_terms(
        payload.n,
        _q_from_payload(payload.q),
        [
            (MultiIndex(tuple(term.alpha), flavor), _scalar_from_parts(term.re, term.im, mode))
            for term in payload.terms
        ],
        flavor=flavor,
        mode=mode,
    )


def star_polynomial_to_payload(polynomial: StarPolynomial) -> StarPolynomialPayload:
    terms = []
    for (alpha, beta), coefficient in polynomial.terms.items():
        re, im = _scalar_parts(coefficient)
        terms.append(
            StarTermPayload(
                alpha=list(alpha.exponents), beta=list(beta.exponents), re=re, im=im
            )
        )
    return StarPolynomialPayload(
        n=polynomial.n,
        q=_q_payload(polynomial.q),
        mode=str(polynomial.mode),
        terms=terms,
    )


def matrix_tuple_to_payload(a: MatrixTuple) -> MatrixTuplePayload:
    return MatrixTuplePayload(
        n=a.n,
        d=a.d,
        matrices=[
            [[(float(value.real), float(value.imag)) for value in row] for row in matrix]
            for matrix in a.matrices
        ],
    )


def matrix_tuple_from_payload(payload: MatrixTuplePayload) -> MatrixTuple:
    matrices = []
    for matrix in payload.matrices:
        array = np.array(
            [[complex(re, im) for re, im in row] for row in matrix], dtype=complex
        )
        matrices.append(array)
    return MatrixTuple(tuple(matrices))


def load_free_series(source: str | Path) -> FreeSeries:
    return free_series_from_payload(_validate(FreeSeriesPayload, source))


def load_ordered_series(source: str | Path) -> OrderedSeries:
    return ordered_series_from_payload(_validate(OrderedSeriesPayload, source))


def load_matrix_tuple(source: str | Path) -> MatrixTuple:
    return matrix_tuple_from_payload(_validate(MatrixTuplePayload, source))


def dump_payload(payload: BaseModel) -> str:
    """Compact JSON with a stable key order."""

    return payload.model_dump_json()
