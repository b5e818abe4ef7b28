"""Duplication-deletion random graph laboratory.

Thin Python surface over the C++ core: theory tables (degree proportions,
stationary laws, first-passage probabilities), event-level simulators for the
three model versions, brute-force oracles, and the declarative experiment
harness.
"""

from ._core import (
    ModelParams,
    NumericError,
    a_binomial_sum,
    asympt_c,
    compute_a,
    compute_c,
    compute_q,
    enumerate_states,
    es_n_r_exact,
    expected_size,
    first_passage_solve,
    laguerre_eval,
    p0_asympt,
    run_experiment_json,
    simulate,
    simulate_fixed_vertex,
    stationary_solve,
    tail_q,
)

__all__ = [
    "ModelParams",
    "NumericError",
    "a_binomial_sum",
    "asympt_c",
    "compute_a",
    "compute_c",
    "compute_q",
    "enumerate_states",
    "es_n_r_exact",
    "expected_size",
    "first_passage_solve",
    "laguerre_eval",
    "p0_asympt",
    "run_experiment_json",
    "simulate",
    "simulate_fixed_vertex",
    "stationary_solve",
    "tail_q",
]
