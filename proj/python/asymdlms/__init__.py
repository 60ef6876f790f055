"""Diffusion adaptive filtering with asymmetric error costs."""

from ._core import (
    CombinationMatrix,
    ConfigError,
    NetworkTopology,
    __version__,
    bounds_report,
    build_probability_graph,
    build_radius_graph,
    canonical_config,
    chi_v_gaussian,
    chi_v_impulsive,
    complexity_csv,
    complexity_table,
    cost_lec,
    cost_llc,
    cost_qqc,
    export_edge_list,
    lec_linearization_error,
    run_experiment,
    sample_alpha_stable,
    step_bound,
    uniform_combination,
    update_factor,
)

__all__ = [
    "CombinationMatrix",
    "ConfigError",
    "NetworkTopology",
    "__version__",
    "bounds_report",
    "build_probability_graph",
    "build_radius_graph",
    "canonical_config",
    "chi_v_gaussian",
    "chi_v_impulsive",
    "complexity_csv",
    "complexity_table",
    "cost_lec",
    "cost_llc",
    "cost_qqc",
    "export_edge_list",
    "lec_linearization_error",
    "run_experiment",
    "sample_alpha_stable",
    "step_bound",
    "uniform_combination",
    "update_factor",
]
