# Verification suites: each one turns a RunConfig into CheckRecords
from __future__ import annotations

from collections.abc import Callable

import structlog

from models import CheckRecord, RunConfig, SuiteName
from suites.common import SuiteConfigError
from suites.estimates import run_families, run_key2, run_key_est, run_shift_norm
from suites.identities import run_confluence, run_homomorphism, run_ideal, run_relations
from suites.operators import run_jsr_sanity, run_popescu_bound
from suites.products import run_submult

log = structlog.get_logger()

SUITES: dict[SuiteName, Callable[[RunConfig], list[CheckRecord]]] = {
    SuiteName.KEY_EST: run_key_est,
    SuiteName.KEY2: run_key2,
    SuiteName.FAMILIES: run_families,
    SuiteName.SUBMULT: run_submult,
    SuiteName.RELATIONS: run_relations,
    SuiteName.IDEAL: run_ideal,
    SuiteName.HOMOMORPHISM: run_homomorphism,
    SuiteName.SHIFT_NORM: run_shift_norm,
    SuiteName.JSR_SANITY: run_jsr_sanity,
    SuiteName.CONFLUENCE: run_confluence,
    SuiteName.POPESCU_BOUND: run_popescu_bound,
}


def run_suite(name: SuiteName | str, config: RunConfig) -> list[CheckRecord]:
    """Run one suite and return its records sorted by (check_name, sample_index)."""

    suite = SuiteName(name)
    log.info("Running suite", suite=suite.value, n=config.n, q=config.q, seed=config.seed)
    records = sorted(
        SUITES[suite](config),
        key=lambda record: (record.check_name, record.sample_index),
    )
    failed = sum(1 for record in records if not record.passed)
    log.info("Suite finished", suite=suite.value, total=len(records), failed=failed)
    return records


__all__ = ["SUITES", "SuiteConfigError", "run_suite"]
