"""Pydantic models for run configuration, verification reports and JSON payloads."""

from __future__ import annotations

from enum import StrEnum
from fractions import Fraction
from typing import Annotated, Any, Self

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

DEFAULT_WORD_BUDGET = 2**20
DEFAULT_SAMPLES = 100
DEFAULT_DEGREE = 3
DEFAULT_KMAX = 8
DEFAULT_STAR_WORD_LENGTH = 6

RationalText = Annotated[str, Field(pattern=r"^-?\d+(/\d+)?$")]
PositiveFloat = Annotated[float, Field(gt=0)]


class Mode(StrEnum):
    """Which algebra an expression is read in."""

    FREE = "free"
    AFFINE = "affine"
    TORUS = "torus"
    STAR = "star"


class ReportFormat(StrEnum):
    JSON = "json"
    CSV = "csv"


class SuiteName(StrEnum):
    KEY_EST = "key-est"
    KEY2 = "key2"
    FAMILIES = "families"
    SUBMULT = "submult"
    RELATIONS = "relations"
    IDEAL = "ideal"
    HOMOMORPHISM = "homomorphism"
    SHIFT_NORM = "shift-norm"
    JSR_SANITY = "jsr-sanity"
    CONFLUENCE = "confluence"
    POPESCU_BOUND = "popescu-bound"


def parse_q(text: str) -> Fraction | float | complex:
    """``"num/den"`` is exact, a decimal is a float, ``"a+bi"`` is complex."""

    stripped = text.strip().replace(" ", "")
    if not stripped:
        raise ValueError("q must not be empty")
    try:
        if "/" in stripped:
            return Fraction(stripped)
        if stripped.endswith("i"):
            return complex(stripped[:-1] + "j")
        return float(stripped)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"Malformed q: {text!r}") from exc


class RunConfig(BaseModel):
    """Everything a command or suite run depends on; no other configuration exists."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(default=2, ge=1)
    q: str = "0.5"
    mode: Mode = Mode.AFFINE
    cutoff: int | None = Field(default=None, ge=0)
    rho_grid: tuple[PositiveFloat, ...] | None = None
    rho2_grid: tuple[PositiveFloat, ...] | None = None
    r_grid: tuple[PositiveFloat, ...] | None = None
    seed: int = 0
    samples: int = Field(default=DEFAULT_SAMPLES, ge=1)
    degree: int = Field(default=DEFAULT_DEGREE, ge=0)
    coefficient_radius: float = Field(default=2.0, gt=0)
    denominator_bound: int = Field(default=8, ge=1)
    tolerance: float | None = Field(default=None, ge=0)
    output_format: ReportFormat = ReportFormat.JSON
    budget: int = Field(default=DEFAULT_WORD_BUDGET, ge=1)
    kmax: int = Field(default=DEFAULT_KMAX, ge=2)
    star_word_length: int = Field(default=DEFAULT_STAR_WORD_LENGTH, ge=0)

    @field_validator("q")
    @classmethod
    def _check_q(cls, value: str) -> str:
        if parse_q(value) == 0:
            raise ValueError("q must be nonzero")
        return value.strip()

    @property
    def q_value(self) -> Fraction | float | complex:
        return parse_q(self.q)

    @property
    def exact(self) -> bool:
        return isinstance(self.q_value, Fraction)

    @property
    def q_float(self) -> float:
        value = self.q_value
        if isinstance(value, complex):
            raise ValueError(f"q must be real here, got {self.q}")
        return float(value)


def _format_parameter(value: Any) -> str:
    return repr(value) if isinstance(value, float) else str(value)


class CheckRecord(BaseModel):
    """One evaluated inequality or identity of a verification suite."""

    model_config = ConfigDict(populate_by_name=True)

    check_name: str
    sample_index: int = 0
    parameters: dict[str, str | int | float] = Field(default_factory=dict)
    lhs: float
    rhs: float
    margin: float
    tolerance: float = Field(ge=0)
    passed: bool = Field(alias="pass")

    @model_validator(mode="after")
    def _pass_matches_margin(self) -> Self:
        if self.passed != (self.margin >= -self.tolerance):
            raise ValueError(
                f"pass={self.passed} contradicts margin {self.margin} "
                f"at tolerance {self.tolerance}"
            )
        return self

    @classmethod
    def inequality(
        cls,
        check_name: str,
        sample_index: int,
        parameters: dict[str, str | int | float],
        lhs: float,
        rhs: float,
        tolerance: float,
    ) -> CheckRecord:
        """``lhs ≤ rhs`` with the margin relative to ``max(1, |rhs|)``."""

        margin = (rhs - lhs) / max(1.0, abs(rhs))
        return cls(
            check_name=check_name,
            sample_index=sample_index,
            parameters=parameters,
            lhs=lhs,
            rhs=rhs,
            margin=margin,
            tolerance=tolerance,
            passed=margin >= -tolerance,
        )

    @classmethod
    def equality(
        cls,
        check_name: str,
        sample_index: int,
        parameters: dict[str, str | int | float],
        lhs: float,
        rhs: float,
        tolerance: float,
    ) -> CheckRecord:
        margin = -abs(lhs - rhs)
        return cls(
            check_name=check_name,
            sample_index=sample_index,
            parameters=parameters,
            lhs=lhs,
            rhs=rhs,
            margin=margin,
            tolerance=tolerance,
            passed=margin >= -tolerance,
        )

    @classmethod
    def exact_zero(
        cls,
        check_name: str,
        sample_index: int,
        parameters: dict[str, str | int | float],
        nonzero_terms: int,
    ) -> CheckRecord:
        """An exact identity: ``lhs`` counts the terms that failed to cancel."""

        return cls(
            check_name=check_name,
            sample_index=sample_index,
            parameters=parameters,
            lhs=float(nonzero_terms),
            rhs=0.0,
            margin=-float(nonzero_terms),
            tolerance=0.0,
            passed=nonzero_terms == 0,
        )

    @property
    def param_string(self) -> str:
        return ";".join(
            f"{key}={_format_parameter(value)}"
            for key, value in self.parameters.items()
        )


class ReportSummary(BaseModel):
    total: int
    passed: int
    min_margin: float | None = None


class Report(BaseModel):
    """A suite run: its configuration, sorted records and summary."""

    suite: str
    config: RunConfig
    records: list[CheckRecord] = Field(default_factory=list)
    summary: ReportSummary

    @classmethod
    def build(
        cls, suite: str, config: RunConfig, records: list[CheckRecord]
    ) -> Report:
        ordered = sorted(
            records, key=lambda record: (record.check_name, record.sample_index)
        )
        summary = ReportSummary(
            total=len(ordered),
            passed=sum(1 for record in ordered if record.passed),
            min_margin=min((record.margin for record in ordered), default=None),
        )
        return cls(suite=suite, config=config, records=ordered, summary=summary)

    @property
    def all_passed(self) -> bool:
        return self.summary.passed == self.summary.total


# JSON interchange payloads. Exact parts are "num/den" strings, floats are numbers.

ScalarPart = float | RationalText


class FreeTermPayload(BaseModel):
    word: list[int]
    re: ScalarPart
    im: ScalarPart = 0.0


class FreeSeriesPayload(BaseModel):
    n: int = Field(ge=1)
    mode: str = "float"
    terms: list[FreeTermPayload] = Field(default_factory=list)


class ExactQPayload(BaseModel):
    num: int
    den: int = Field(default=1, ge=1)


class ComplexQPayload(BaseModel):
    re: float
    im: float = 0.0


class OrderedTermPayload(BaseModel):
    alpha: list[int]
    re: ScalarPart
    im: ScalarPart = 0.0


class OrderedSeriesPayload(BaseModel):
    n: int = Field(ge=1)
    q: ExactQPayload | ComplexQPayload
    flavor: str = "affine"
    mode: str = "float"
    terms: list[OrderedTermPayload] = Field(default_factory=list)


class StarTermPayload(BaseModel):
    alpha: list[int]
    beta: list[int]
    re: ScalarPart
    im: ScalarPart = 0.0


class StarPolynomialPayload(BaseModel):
    n: int = Field(ge=1)
    q: ExactQPayload | ComplexQPayload
    mode: str = "float"
    terms: list[StarTermPayload] = Field(default_factory=list)


class MatrixTuplePayload(BaseModel):
    """``matrices[k][row][col] = [re, im]``."""

    n: int = Field(ge=1)
    d: int = Field(ge=1)
    matrices: list[list[list[tuple[float, float]]]]

    @model_validator(mode="after")
    def _check_shape(self) -> Self:
        if len(self.matrices) != self.n:
            raise ValueError(f"Expected {self.n} matrices, got {len(self.matrices)}")
        for matrix in self.matrices:
            if len(matrix) != self.d or any(len(row) != self.d for row in matrix):
                raise ValueError(f"Every matrix must be {self.d}x{self.d}")
        return self
