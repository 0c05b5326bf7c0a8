"""Matrix-tuple checks: joint spectral radius sanity and the free-ball evaluation bound."""

from __future__ import annotations

from calculus import (
    MatrixTuple,
    joint_spectral_radius,
    popescu_eval_bound_check,
    random_row_contraction,
    spectral_radius,
)
from models import CheckRecord, RunConfig
from sampling import (
    make_rng,
    random_free_series,
    random_matrix_tuple,
    random_normal_matrix,
)
from suites.common import (
    INEQUALITY_TOLERANCE,
    as_float,
    base_parameters,
    tolerance,
)

JSR_MATRIX_SIZE = 4
JSR_RELATIVE_ERROR = 0.05
BRACKET_KMAX = 4
# rounding allowance for eigenvalues of non-normal powers
EIGENVALUE_TOLERANCE = 1e-9
MAX_CONTRACTION_SIZE = 6


def run_jsr_sanity(config: RunConfig) -> list[CheckRecord]:
    """The estimator on tuples whose radius is known or bracketed.

    A single normal matrix must come out within 5% of its spectral radius. A
    single Gaussian matrix, which is almost never normal, must have its spectral
    radius inside the certified bracket. The zero tuple must give exactly 0 and
    random tuples must have ``certified_lower ≤ certified_upper``.
    """

    slack = tolerance(config, INEQUALITY_TOLERANCE)
    eigenvalue_slack = max(slack, EIGENVALUE_TOLERANCE)
    rng = make_rng(config)
    parameters = {**base_parameters(config), "kmax": config.kmax}
    records = []
    for sample in range(config.samples):
        radius = float(rng.uniform(0.2, 2.0))
        matrix = random_normal_matrix(rng, JSR_MATRIX_SIZE, radius)
        exact = spectral_radius(matrix)
        estimate = joint_spectral_radius(MatrixTuple((matrix,)), config.kmax, config.budget)
        records.append(
            CheckRecord.inequality(
                "jsr-sanity/normal",
                sample,
                {**parameters, "d": JSR_MATRIX_SIZE},
                abs(estimate.value - exact),
                JSR_RELATIVE_ERROR * exact,
                slack,
            )
        )
        (general,) = random_matrix_tuple(rng, 1, JSR_MATRIX_SIZE, scale=radius).matrices
        exact = spectral_radius(general)
        estimate = joint_spectral_radius(MatrixTuple((general,)), config.kmax, config.budget)
        nonnormal = {**parameters, "d": JSR_MATRIX_SIZE}
        records.append(
            CheckRecord.inequality(
                "jsr-sanity/nonnormal-lower",
                sample,
                nonnormal,
                estimate.certified_lower,
                exact,
                eigenvalue_slack,
            )
        )
        records.append(
            CheckRecord.inequality(
                "jsr-sanity/nonnormal-upper",
                sample,
                nonnormal,
                exact,
                estimate.certified_upper,
                eigenvalue_slack,
            )
        )
        a = random_matrix_tuple(rng, config.n, 3, scale=radius)
        bracket = joint_spectral_radius(a, BRACKET_KMAX, config.budget)
        records.append(
            CheckRecord.inequality(
                "jsr-sanity/bracket",
                sample,
                {**parameters, "d": 3, "kmax": BRACKET_KMAX},
                bracket.certified_lower,
                bracket.certified_upper,
                slack,
            )
        )
    zero = joint_spectral_radius(
        MatrixTuple.zeros(config.n, JSR_MATRIX_SIZE), BRACKET_KMAX, config.budget
    )
    records.append(
        CheckRecord.equality(
            "jsr-sanity/zero", 0, parameters, zero.value, 0.0, 0.0
        )
    )
    return records


def run_popescu_bound(config: RunConfig) -> list[CheckRecord]:
    """``‖f(T)‖ ≤ Σ_k level_l2(f, k)·‖T‖_row^k`` for random strict row contractions."""

    config = as_float(config)
    slack = tolerance(config, INEQUALITY_TOLERANCE)
    rng = make_rng(config)
    records = []
    for sample in range(config.samples):
        f = random_free_series(rng, config)
        radius = float(rng.uniform(0.1, 0.95))
        d = int(rng.integers(1, MAX_CONTRACTION_SIZE + 1))
        t = random_row_contraction(rng, config.n, d, radius)
        check = popescu_eval_bound_check(f, t, slack)
        records.append(
            CheckRecord.inequality(
                "popescu-bound",
                sample,
                {**base_parameters(config), "d": d, "row_norm": check.row_norm},
                check.lhs,
                check.rhs,
                slack,
            )
        )
    return records
