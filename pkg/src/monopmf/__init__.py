"""Estimation of monotone probability mass functions with known flat regions."""

from .asymptotics import (
    limit_hellinger_risk_flat,
    limit_hellinger_risk_grenander,
    limit_l2_risk_flat,
    limit_l2_risk_grenander,
    sigma_grouped,
    sigma_star,
)
from .core import (
    CountVector,
    DimensionMismatchError,
    FlatSpec,
    GroupedEstimate,
    Pmf,
    expand,
    group_counts,
    group_pmf,
    mixture_of_uniforms,
    validate_monotone_with_flats,
)
from .estimators import (
    empirical_estimator,
    flat_mle,
    flat_mle_grouped,
    grenander_estimator,
    grouped_unrestricted_mle,
    rearrangement_estimator,
)
from .isotonic import WeightedSeq, lcm_left_derivatives, pava_decreasing
from .metrics import hellinger_squared, l1, l2_squared
from .simulate import (
    ExperimentConfig,
    RiskSummary,
    empirical_covariance_check,
    run_experiment,
    sample_counts,
    simulate,
)

__version__ = "0.1.0"
