"""Norm estimates on the quantum ball: vacuum chain, ball/polydisk comparison, families."""

from __future__ import annotations

import structlog

from models import CheckRecord, RunConfig
from quantum_algebra import (
    SeminormVariant,
    affine_seminorm,
    family_equivalence_constants,
)
from sampling import make_rng, random_affine_series
from star_rep import (
    TruncatedRep,
    ball_seminorm,
    embed,
    euler_product_lower,
    op_norm,
    rep_apply,
    vacuum_lower_bound,
)
from suites.common import (
    INEQUALITY_TOLERANCE,
    EQUALITY_TOLERANCE,
    SuiteConfigError,
    as_float,
    base_parameters,
    cutoff_for,
    require_unit_interval_q,
    rho_r_pairs,
    tolerance,
)

log = structlog.get_logger()


def run_key_est(config: RunConfig) -> list[CheckRecord]:
    """``c^{n/2}‖a‖₁^{(2)} ≤ ‖π(a)e₀‖ ≤ ‖π_N(a)‖ ≤ ‖a‖₁^{(1)}``, three records a sample."""

    q = require_unit_interval_q(config, "key-est")
    config = as_float(config)
    slack = tolerance(config, INEQUALITY_TOLERANCE)
    constant = euler_product_lower(q) ** (config.n / 2)
    rng = make_rng(config)
    records = []
    for sample in range(config.samples):
        a = random_affine_series(rng, config)
        rep = TruncatedRep(config.n, q, cutoff_for(config, a.degree))
        parameters = {**base_parameters(config), "N": rep.cutoff}
        lower = constant * affine_seminorm(a, 1.0, SeminormVariant.L2)
        vacuum = vacuum_lower_bound(a, rep)
        truncated = op_norm(rep_apply(embed(a), rep))
        upper = affine_seminorm(a, 1.0, SeminormVariant.L1)
        records += [
            CheckRecord.inequality(
                "key-est/vacuum", sample, parameters, lower, vacuum, slack
            ),
            CheckRecord.inequality(
                "key-est/truncation", sample, parameters, vacuum, truncated, slack
            ),
            CheckRecord.inequality(
                "key-est/upper", sample, parameters, truncated, upper, slack
            ),
        ]
    return records


def run_key2(config: RunConfig) -> list[CheckRecord]:
    """``((r²-ρ²)/r²·c)^{n/2}‖a‖_ρ^{(1)} ≤ ‖π_N(γ_r a)‖ ≤ ‖a‖_r^{(1)}``."""

    q = require_unit_interval_q(config, "key2")
    pairs = rho_r_pairs(config, "key2", below_one=True)
    config = as_float(config)
    slack = tolerance(config, INEQUALITY_TOLERANCE)
    euler = euler_product_lower(q)
    rng = make_rng(config)
    records = []
    for position, (rho, r) in enumerate(pairs):
        constant = ((r * r - rho * rho) / (r * r) * euler) ** (config.n / 2)
        for sample in range(config.samples):
            index = position * config.samples + sample
            a = random_affine_series(rng, config)
            rep = TruncatedRep(config.n, q, cutoff_for(config, a.degree))
            parameters = {**base_parameters(config), "rho": rho, "r": r, "N": rep.cutoff}
            ball = ball_seminorm(a, r, rep)
            records += [
                CheckRecord.inequality(
                    "key2/lower",
                    index,
                    parameters,
                    constant * affine_seminorm(a, rho),
                    ball,
                    slack,
                ),
                CheckRecord.inequality(
                    "key2/upper", index, parameters, ball, affine_seminorm(a, r), slack
                ),
            ]
    return records


def run_families(config: RunConfig) -> list[CheckRecord]:
    """``‖a‖^{(∞)}_ρ ≤ ‖a‖^{(2)}_ρ ≤ ‖a‖^{(1)}_ρ ≤ C(ρ, r, n)·‖a‖^{(2)}_r``."""

    pairs = rho_r_pairs(config, "families", below_one=False)
    config = as_float(config)
    slack = tolerance(config, INEQUALITY_TOLERANCE)
    rng = make_rng(config)
    records = []
    for position, (rho, r) in enumerate(pairs):
        upper_constant = family_equivalence_constants(rho, r, config.n).upper
        for sample in range(config.samples):
            index = position * config.samples + sample
            a = random_affine_series(rng, config)
            parameters = {**base_parameters(config), "rho": rho, "r": r}
            sup = affine_seminorm(a, rho, SeminormVariant.SUP)
            l2 = affine_seminorm(a, rho, SeminormVariant.L2)
            l1 = affine_seminorm(a, rho, SeminormVariant.L1)
            l2_r = affine_seminorm(a, r, SeminormVariant.L2)
            records += [
                CheckRecord.inequality("families/sup-l2", index, parameters, sup, l2, slack),
                CheckRecord.inequality("families/l2-l1", index, parameters, l2, l1, slack),
                CheckRecord.inequality(
                    "families/cauchy-schwarz",
                    index,
                    parameters,
                    l1,
                    upper_constant * l2_r,
                    slack,
                ),
            ]
    return records


def run_shift_norm(config: RunConfig) -> list[CheckRecord]:
    """``‖π_N(z_j)‖ = √(1 - q^{2N})`` for every generator."""

    q = require_unit_interval_q(config, "shift-norm")
    cutoff = config.cutoff if config.cutoff is not None else 8
    if cutoff < 1:
        raise SuiteConfigError("Suite shift-norm needs a cutoff of at least 1")
    rep = TruncatedRep(config.n, q, cutoff)
    expected = (1 - q ** (2 * cutoff)) ** 0.5
    slack = tolerance(config, EQUALITY_TOLERANCE)
    parameters = {**base_parameters(config), "N": cutoff}
    log.debug("Checking shift norms", n=config.n, cutoff=cutoff)
    return [
        CheckRecord.equality(
            "shift-norm",
            j,
            {**parameters, "j": j + 1},
            op_norm(generator),
            expected,
            slack,
        )
        for j, generator in enumerate(rep.generators)
    ]
