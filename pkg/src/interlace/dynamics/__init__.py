"""Markov dynamics on interlacing configurations and their projections."""

from .charlier import (
    DiscreteStepParams,
    charlier_transition,
    discrete_charlier_transition,
    discrete_step_pmf,
    karlin_mcgregor,
    markov_link,
    poisson_pmf,
    sample_uniform_given_top,
)
from .simulate import (
    SimulationState,
    continuous_time_batch,
    continuous_time_simulate,
    direct_tasep_batch,
    direct_tasep_simulate,
    project_pushasep,
    project_tasep,
    sequential_update_batch,
    sequential_update_step,
)
from .toeplitz import ToeplitzReport, verify_intertwining, verify_toeplitz_props, weyl_window

__all__ = [
    "DiscreteStepParams",
    "SimulationState",
    "ToeplitzReport",
    "charlier_transition",
    "continuous_time_batch",
    "continuous_time_simulate",
    "direct_tasep_batch",
    "direct_tasep_simulate",
    "discrete_charlier_transition",
    "discrete_step_pmf",
    "karlin_mcgregor",
    "markov_link",
    "poisson_pmf",
    "project_pushasep",
    "project_tasep",
    "sample_uniform_given_top",
    "sequential_update_batch",
    "sequential_update_step",
    "verify_intertwining",
    "verify_toeplitz_props",
    "weyl_window",
]
