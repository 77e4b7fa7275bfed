"""Optimally weighted averaging of a local and a helper mean estimate.

Closed-form theory of how much a local mean estimator gains (or loses) by
averaging with a helper's estimate, plus a seeded Monte Carlo harness that
validates every formula by simulation, and a CLI for batch reports.
"""

from .distributions import (
    Bernoulli,
    Distribution,
    Exponential,
    Normal,
    PointMass,
    SeedSpec,
    Uniform,
    make_distribution,
    moments,
    sample,
)
from .estimation import SampleSet, empirical_mean, shrink, squared_error, weighted_average
from .federation import Agent, FederationScenario, personalized_weight, reduce_to_two_agent
from .montecarlo import (
    MonteCarloEstimate,
    SampledScenario,
    ValidationPoint,
    ValidationReport,
    estimate_error_curve,
    estimate_ese,
    validate_scenario,
)
from .theory import (
    INFINITE,
    ErrorProfile,
    Scenario,
    alpha_star_upper_bounds,
    donahue_mse,
    error_profile,
    ese0,
    ese1,
    ese_of_alpha,
    ese_of_alpha_reduced,
    max_ese,
)

__version__ = "0.1.0"

__all__ = [
    "Agent",
    "Bernoulli",
    "Distribution",
    "ErrorProfile",
    "Exponential",
    "FederationScenario",
    "INFINITE",
    "MonteCarloEstimate",
    "Normal",
    "PointMass",
    "SampleSet",
    "SampledScenario",
    "Scenario",
    "SeedSpec",
    "Uniform",
    "ValidationPoint",
    "ValidationReport",
    "alpha_star_upper_bounds",
    "donahue_mse",
    "empirical_mean",
    "error_profile",
    "ese0",
    "ese1",
    "ese_of_alpha",
    "ese_of_alpha_reduced",
    "estimate_error_curve",
    "estimate_ese",
    "make_distribution",
    "max_ese",
    "moments",
    "personalized_weight",
    "reduce_to_two_agent",
    "sample",
    "shrink",
    "squared_error",
    "validate_scenario",
    "weighted_average",
]
