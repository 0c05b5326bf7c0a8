"""Shared helpers for the verification suites."""

from __future__ import annotations

from typing import Final

from models import RunConfig

INEQUALITY_TOLERANCE: Final = 1e-12
EQUALITY_TOLERANCE: Final = 1e-10
RESIDUAL_TOLERANCE: Final = 1e-12

DEFAULT_PAIRS: Final = ((0.3, 0.6), (0.5, 0.9), (0.8, 0.9))


class SuiteConfigError(ValueError):
    """Raised when a run configuration is outside the range a suite requires."""


def tolerance(config: RunConfig, default: float) -> float:
    return default if config.tolerance is None else config.tolerance


def require_exact(config: RunConfig, suite: str) -> None:
    if not config.exact:
        raise SuiteConfigError(
            f"Suite {suite} runs in exact mode; pass q as num/den, got {config.q!r}"
        )


def as_float(config: RunConfig) -> RunConfig:
    """The same configuration with an exact ``q`` given as a decimal."""

    if not config.exact:
        return config
    return config.model_copy(update={"q": repr(config.q_float)})


def require_unit_interval_q(config: RunConfig, suite: str) -> float:
    q = config.q_float
    if not 0 < q < 1:
        raise SuiteConfigError(f"Suite {suite} needs 0 < q < 1, got {q}")
    return q


def rho_r_pairs(
    config: RunConfig, suite: str, *, below_one: bool
) -> list[tuple[float, float]]:
    """Zip ``rho_grid`` with ``r_grid`` and check ``0 < ρ < r`` (and ``r < 1``)."""

    if config.rho_grid is None and config.r_grid is None:
        pairs = list(DEFAULT_PAIRS)
    elif config.rho_grid is None or config.r_grid is None:
        raise SuiteConfigError(f"Suite {suite} needs both --rho and --r grids")
    elif len(config.rho_grid) != len(config.r_grid):
        raise SuiteConfigError(
            f"Suite {suite} pairs --rho with --r; got {len(config.rho_grid)} "
            f"and {len(config.r_grid)} values"
        )
    else:
        pairs = list(zip(config.rho_grid, config.r_grid, strict=True))
    for rho, r in pairs:
        if not 0 < rho < r:
            raise SuiteConfigError(f"Suite {suite} needs 0 < rho < r, got ({rho}, {r})")
        if below_one and not r < 1:
            raise SuiteConfigError(f"Suite {suite} needs r < 1, got {r}")
    return pairs


def cutoff_for(config: RunConfig, degree: int) -> int:
    """The truncation: the configured cutoff, raised to the degree if needed."""

    return max(degree, config.cutoff or 0)


def base_parameters(config: RunConfig) -> dict[str, str | int | float]:
    return {"n": config.n, "q": config.q, "seed": config.seed}
