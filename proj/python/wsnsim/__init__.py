"""Clustered sensor-network key management simulator."""

from ._core import (
    SimConfig,
    approx_share_probability,
    derive_rep_seed,
    effective_share_count,
    exact_birthday_probability,
    load_config,
    lloyd_refine,
    required_share_count,
    run_repetition,
    run_scenario,
    seed_centers,
)

__all__ = [
    "SimConfig",
    "approx_share_probability",
    "derive_rep_seed",
    "effective_share_count",
    "exact_birthday_probability",
    "load_config",
    "lloyd_refine",
    "required_share_count",
    "run_repetition",
    "run_scenario",
    "seed_centers",
]
