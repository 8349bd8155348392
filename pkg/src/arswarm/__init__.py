"""Autoregressive model fitting with constriction-factor particle swarms.

Fits AR(p) models by swarm minimization of the residual sum of squares and
benchmarks the result against least squares, forward-backward, Yule-Walker
and geometric-lattice estimates.
"""
from .errors import *  # noqa: F401,F403
from .estimators import (
    EstimatorKind,
    autocovariance,
    fit_estimator,
    fit_forward_backward,
    fit_geometric_lattice,
    fit_least_squares,
    fit_yule_walker,
    lattice_reflection_coefficients,
    levinson_durbin,
    one_step_rss,
)
from .metrics import CFPSO, ComparisonReport, MetricsReport, build_comparison, emp, fpe, mse, nmse, nmse_raw
from .pso import (
    FitResult,
    PsoConfig,
    Swarm,
    Termination,
    VelocityRule,
    ar_objective,
    constriction_factor,
    fit_ar_cfpso,
    initialize_swarm,
    optimize,
    step,
)
from .selection import AicCurve, aic, select_order
from .series import (
    ARModel,
    PredictionMode,
    TimeSeries,
    demean,
    forecast,
    model_from_coefficients,
    predict,
    residual_sum_of_squares,
    simulate_ar,
    validate_series,
)

__version__ = "0.1.0"
