"""Submultiplicativity of every seminorm family on random product pairs."""

from __future__ import annotations

import itertools

from free_series import entire_seminorm, polydisk_seminorm, popescu_seminorm
from models import CheckRecord, RunConfig
from quantum_algebra import affine_seminorm, torus_seminorm
from sampling import (
    make_rng,
    random_affine_series,
    random_free_series,
    random_torus_series,
)
from suites.common import (
    INEQUALITY_TOLERANCE,
    SuiteConfigError,
    base_parameters,
    tolerance,
)

DEFAULT_RHO_GRID = (0.5, 1.0, 2.0)
DEFAULT_RHO2_GRID = (1.0, 2.0)
DEFAULT_R_GRID = (0.3, 0.7)
UNIT_MODULUS_TOLERANCE = 1e-12


def _grids(config: RunConfig) -> tuple[tuple[float, ...], ...]:
    rho = config.rho_grid or DEFAULT_RHO_GRID
    rho2 = config.rho2_grid or DEFAULT_RHO2_GRID
    r = config.r_grid or DEFAULT_R_GRID
    # Below 1 the alternation weight is not submultiplicative: ζ₁·ζ₁ has d = 0.
    if any(value < 1 for value in rho2):
        raise SuiteConfigError(f"Suite submult needs every rho2 >= 1, got {rho2}")
    if any(not 0 < value < 1 for value in r):
        raise SuiteConfigError(f"Suite submult needs every r in (0, 1), got {r}")
    return rho, rho2, r


def run_submult(config: RunConfig) -> list[CheckRecord]:
    """``‖fg‖ ≤ ‖f‖‖g‖`` for the entire, polydisk, Popescu and quantum seminorms.

    The torus family joins in when ``|q| = 1``. Sample ``s`` at grid point ``k``
    gets the index ``s·len(grid) + k``.
    """

    rho_grid, rho2_grid, r_grid = _grids(config)
    slack = tolerance(config, INEQUALITY_TOLERANCE)
    polydisk_grid = list(itertools.product(rho_grid, rho2_grid))
    on_unit_circle = abs(abs(config.q_value) - 1) <= UNIT_MODULUS_TOLERANCE
    # x₁·x₁⁻¹ = 1 bounds the torus family to ρ ≥ 1.
    torus_grid = [rho for rho in rho_grid if rho >= 1]
    rng = make_rng(config)
    records = []
    for sample in range(config.samples):
        f = random_free_series(rng, config)
        g = random_free_series(rng, config)
        fg = f * g
        for k, rho in enumerate(rho_grid):
            records.append(
                CheckRecord.inequality(
                    "submult/entire",
                    sample * len(rho_grid) + k,
                    {**base_parameters(config), "rho": rho},
                    entire_seminorm(fg, rho).value,
                    entire_seminorm(f, rho).value * entire_seminorm(g, rho).value,
                    slack,
                )
            )
        for k, (rho1, rho2) in enumerate(polydisk_grid):
            records.append(
                CheckRecord.inequality(
                    "submult/polydisk",
                    sample * len(polydisk_grid) + k,
                    {**base_parameters(config), "rho1": rho1, "rho2": rho2},
                    polydisk_seminorm(fg, rho1, rho2).value,
                    polydisk_seminorm(f, rho1, rho2).value
                    * polydisk_seminorm(g, rho1, rho2).value,
                    slack,
                )
            )
        for k, r in enumerate(r_grid):
            records.append(
                CheckRecord.inequality(
                    "submult/popescu",
                    sample * len(r_grid) + k,
                    {**base_parameters(config), "r": r},
                    popescu_seminorm(fg, r).value,
                    popescu_seminorm(f, r).value * popescu_seminorm(g, r).value,
                    slack,
                )
            )

        a = random_affine_series(rng, config)
        b = random_affine_series(rng, config)
        ab = a * b
        for k, rho in enumerate(rho_grid):
            records.append(
                CheckRecord.inequality(
                    "submult/affine",
                    sample * len(rho_grid) + k,
                    {**base_parameters(config), "rho": rho},
                    affine_seminorm(ab, rho),
                    affine_seminorm(a, rho) * affine_seminorm(b, rho),
                    slack,
                )
            )

        if on_unit_circle:
            s = random_torus_series(rng, config)
            t = random_torus_series(rng, config)
            st = s * t
            for k, rho in enumerate(torus_grid):
                records.append(
                    CheckRecord.inequality(
                        "submult/torus",
                        sample * len(torus_grid) + k,
                        {**base_parameters(config), "rho": rho},
                        torus_seminorm(st, rho),
                        torus_seminorm(s, rho) * torus_seminorm(t, rho),
                        slack,
                    )
                )
    return records
