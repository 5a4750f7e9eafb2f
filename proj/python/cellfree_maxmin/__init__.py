"""Max-min fair power control for multigroup multicast cell-free massive MIMO."""

from ._core import (
    Dimensions,
    NetworkInstance,
    PhysicalConfig,
    RateModel,
    apg_solve,
    bisection_solve,
    build_rate_model,
    default_config,
    epa_rates,
    generate_instance,
    instance_from_json,
    instance_to_json,
    is_feasible,
    min_rate,
    monte_carlo_rates,
    noise_power,
    project_feasible,
    run_experiment,
    smooth_gradient,
    smooth_objective,
    user_rates,
)

__all__ = [
    "Dimensions",
    "NetworkInstance",
    "PhysicalConfig",
    "RateModel",
    "apg_solve",
    "bisection_solve",
    "build_rate_model",
    "default_config",
    "epa_rates",
    "generate_instance",
    "instance_from_json",
    "instance_to_json",
    "is_feasible",
    "min_rate",
    "monte_carlo_rates",
    "noise_power",
    "project_feasible",
    "run_experiment",
    "smooth_gradient",
    "smooth_objective",
    "user_rates",
]
