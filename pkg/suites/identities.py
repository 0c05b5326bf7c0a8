"""Exact algebraic identities and representation relations."""

from __future__ import annotations

import structlog

from free_series import FreeSeries
from models import CheckRecord, RunConfig
from quantum_algebra import normal_order
from sampling import (
    make_rng,
    random_degree,
    random_free_series,
    random_star_word,
    random_word,
)
from scalars import NumericMode
from star_rep import RewriteStrategy, TruncatedRep, relation_residuals, star_normal_order
from suites.common import (
    RESIDUAL_TOLERANCE,
    SuiteConfigError,
    base_parameters,
    require_exact,
    require_unit_interval_q,
    tolerance,
)
from words import Word

log = structlog.get_logger()

DEFAULT_RELATION_CUTOFF = 6


def ideal_generator(n: int, i: int, j: int, q: object) -> FreeSeries:
    """``ζ_iζ_j - qζ_jζ_i`` in exact mode."""

    exact = NumericMode.EXACT
    return FreeSeries.monomial(Word(n, (i, j)), 1, exact) - FreeSeries.monomial(
        Word(n, (j, i)), q, exact
    )


def run_ideal(config: RunConfig) -> list[CheckRecord]:
    """``normal_order(u·(ζ_iζ_j - qζ_jζ_i)·v) = 0`` for random words ``u, v``."""

    require_exact(config, "ideal")
    if config.n < 2:
        raise SuiteConfigError("Suite ideal needs n >= 2")
    q = config.q_value
    rng = make_rng(config)
    records = []
    for sample in range(config.samples):
        i, j = sorted(int(index) for index in rng.choice(config.n, 2, replace=False) + 1)
        u = random_word(rng, config.n, random_degree(rng, config.degree))
        v = random_word(rng, config.n, random_degree(rng, config.degree))
        element = (
            FreeSeries.monomial(u, 1, NumericMode.EXACT)
            * ideal_generator(config.n, i, j, q)
            * FreeSeries.monomial(v, 1, NumericMode.EXACT)
        )
        image = normal_order(element, q)
        records.append(
            CheckRecord.exact_zero(
                "ideal",
                sample,
                {**base_parameters(config), "i": i, "j": j},
                len(image.terms),
            )
        )
    return records


def run_homomorphism(config: RunConfig) -> list[CheckRecord]:
    """``normal_order(fg) = normal_order(f) ⋆ normal_order(g)`` exactly."""

    require_exact(config, "homomorphism")
    q = config.q_value
    rng = make_rng(config)
    records = []
    for sample in range(config.samples):
        f = random_free_series(rng, config)
        g = random_free_series(rng, config)
        defect = normal_order(f * g, q) - normal_order(f, q) * normal_order(g, q)
        records.append(
            CheckRecord.exact_zero(
                "homomorphism", sample, base_parameters(config), len(defect.terms)
            )
        )
    return records


def run_confluence(config: RunConfig) -> list[CheckRecord]:
    """Leftmost and rightmost rewriting reach the same normal form."""

    require_exact(config, "confluence")
    q = config.q_value
    rng = make_rng(config)
    records = []
    for sample in range(config.samples):
        word = random_star_word(
            rng, config.n, config.star_word_length, NumericMode.EXACT
        )
        leftmost = star_normal_order(word, q, RewriteStrategy.LEFTMOST)
        rightmost = star_normal_order(word, q, RewriteStrategy.RIGHTMOST)
        records.append(
            CheckRecord.exact_zero(
                "confluence",
                sample,
                {**base_parameters(config), "length": word.degree},
                len((leftmost - rightmost).terms),
            )
        )
    return records


def run_relations(config: RunConfig) -> list[CheckRecord]:
    """Residuals of the twisted commutation relations in ``π_N`` on the interior."""

    q = require_unit_interval_q(config, "relations")
    cutoff = config.cutoff if config.cutoff is not None else DEFAULT_RELATION_CUTOFF
    if cutoff < 2:
        raise SuiteConfigError("Suite relations needs a cutoff of at least 2")
    rep = TruncatedRep(config.n, q, cutoff)
    slack = tolerance(config, RESIDUAL_TOLERANCE)
    parameters = {**base_parameters(config), "N": cutoff}
    residuals = relation_residuals(rep)
    log.debug("Computed relation residuals", count=len(residuals), cutoff=cutoff)
    return [
        CheckRecord.inequality(
            f"relations/{residual.relation}",
            index,
            {**parameters, "i": residual.i, "j": residual.j},
            residual.residual,
            0.0,
            slack,
        )
        for index, residual in enumerate(residuals)
    ]
