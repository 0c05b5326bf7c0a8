"""Pytest tests for the JSON interchange payloads."""

from fractions import Fraction
import json

import numpy as np
import pytest

from calculus import MatrixTuple
from free_series import FreeSeries
from models import ComplexQPayload, ExactQPayload
from quantum_algebra import OrderedSeries
from scalars import GaussianRational, NumericMode
from serialization import (
    PayloadError,
    dump_payload,
    free_series_to_payload,
    load_free_series,
    load_matrix_tuple,
    load_ordered_series,
    matrix_tuple_to_payload,
    ordered_series_to_payload,
    resolve_json_source,
    star_polynomial_to_payload,
)
from star_rep import StarPolynomial
from words import Flavor, MultiIndex, Word


class TestResolveJsonSource:
    """Inline JSON versus files."""

    def test_inline(self):
        assert resolve_json_source('  {"n": 1}  ') == '{"n": 1}'

    def test_file(self, tmp_path):
        path = tmp_path / "series.json"
        path.write_text('{"n": 1}', encoding="utf-8")
        assert resolve_json_source(str(path)) == '{"n": 1}'
        assert resolve_json_source(path) == '{"n": 1}'

    def test_neither(self, tmp_path):
        with pytest.raises(PayloadError, match="Neither"):
            resolve_json_source(str(tmp_path / "missing.json"))


class TestFreeSeriesPayload:
    """Free series in both numeric modes."""

    def test_exact(self):
        series = load_free_series(
            '{"n": 2, "mode": "exact", "terms": ['
            '{"word": [1, 2], "re": "1/2", "im": "-3"}, {"word": [], "re": 2}]}'
        )
        assert series.mode is NumericMode.EXACT
        assert series.coefficient(Word(2, (1, 2))) == GaussianRational(
            Fraction(1, 2), -3
        )
        assert series.coefficient(Word(2)) == 2

    def test_float(self):
        series = load_free_series('{"n": 1, "terms": [{"word": [1, 1], "re": 0.5}]}')
        assert series.coefficient(Word(1, (1, 1))) == 0.5

    def test_exact_refuses_fractional_floats(self):
        with pytest.raises(PayloadError, match="num/den"):
            load_free_series(
                '{"n": 1, "mode": "exact", "terms": [{"word": [1], "re": 0.5}]}'
            )

    def test_unknown_mode(self):
        with pytest.raises(PayloadError, match="Unknown numeric mode"):
            load_free_series('{"n": 1, "mode": "decimal", "terms": []}')

    def test_invalid_document(self):
        with pytest.raises(PayloadError, match="Invalid FreeSeriesPayload"):
            load_free_series('{"n": 0, "terms": []}')

    def test_to_payload(self):
        series = FreeSeries.from_terms(
            2, [(Word(2, (2,)), GaussianRational(Fraction(-1, 3), 1))]
        )
        payload = json.loads(dump_payload(free_series_to_payload(series)))
        assert payload == {
            "n": 2,
            "mode": "exact",
            "terms": [{"word": [2], "re": "-1/3", "im": "1"}],
        }


class TestOrderedSeriesPayload:
    """Affine and torus series with their deformation parameter."""

    def test_exact_round_trip(self):
        series = OrderedSeries.from_terms(
            2,
            Fraction(2, 3),
            [(MultiIndex((1, 2)), GaussianRational(Fraction(5, 7), 0))],
        )
        payload = ordered_series_to_payload(series)
        assert payload.q == ExactQPayload(num=2, den=3)
        assert load_ordered_series(dump_payload(payload)) == series

    def test_torus_round_trip(self):
        q = complex(0.6, 0.8)
        series = OrderedSeries.from_terms(
            2,
            q,
            [(MultiIndex((-1, 2), Flavor.TORUS), 1.5 - 2j)],
            flavor=Flavor.TORUS,
        )
        payload = ordered_series_to_payload(series)
        assert payload.q == ComplexQPayload(re=0.6, im=0.8)
        assert payload.flavor == "torus"
        assert load_ordered_series(dump_payload(payload)) == series

    def test_real_float_q(self):
        series = load_ordered_series(
            '{"n": 1, "q": {"re": 0.5}, "terms": [{"alpha": [2], "re": 1.0}]}'
        )
        assert series.q == 0.5
        assert isinstance(series.q, float)
        assert series.coefficient(MultiIndex((2,))) == 1


def test_star_polynomial_payload():
    polynomial = StarPolynomial.from_terms(
        1, 0.5, [((MultiIndex((1,)), MultiIndex((2,))), 0.25 + 1j)]
    )
    payload = json.loads(dump_payload(star_polynomial_to_payload(polynomial)))
    assert payload == {
        "n": 1,
        "q": {"re": 0.5, "im": 0.0},
        "mode": "float",
        "terms": [{"alpha": [1], "beta": [2], "re": 0.25, "im": 1.0}],
    }


def test_matrix_tuple_file(tmp_path):
    rng = np.random.default_rng(0)
    a = MatrixTuple(
        tuple(
            rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            for _ in range(2)
        )
    )
    path = tmp_path / "tuple.json"
    path.write_text(dump_payload(matrix_tuple_to_payload(a)), encoding="utf-8")
    loaded = load_matrix_tuple(str(path))
    assert loaded.n == 2
    assert loaded.d == 3
    for original, restored in zip(a.matrices, loaded.matrices, strict=True):
        assert np.array_equal(original, restored)


def test_matrix_tuple_bad_shape():
    with pytest.raises(PayloadError, match="Invalid MatrixTuplePayload"):
        load_matrix_tuple('{"n": 1, "d": 2, "matrices": [[[[1, 0]]]]}')
