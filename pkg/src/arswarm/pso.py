"""Particle swarm optimization with constriction factor, and the AR driver.

Two velocity rules are available. The inertia-weight rule

    v <- w v + r1 c1 (p_i - x) + r2 c2 (p_g - x)

and the constriction-factor rule (the default)

    v <- k [v + r1 c1 (p_i - x) + r2 c2 (p_g - x)],
    k = 2 / |2 - phi - sqrt(phi^2 - 4 phi)|,  phi = c1 + c2 > 4.

Positions move by ``x <- x + v`` and are then clamped component-wise onto
the search box. Velocities are not touched by the clamp.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Sequence

import numpy as np

from .errors import ConfigurationError, ObjectiveNonFinite, PhiOutOfRange, SeriesTooShort
from .series import (
    ARModel,
    PredictionMode,
    TimeSeries,
    _as_array,
    demean as _demean,
    model_from_coefficients,
    predict,
    residual_sum_of_squares,
)

__all__ = [
    "VelocityRule",
    "Termination",
    "PsoConfig",
    "Particle",
    "Swarm",
    "OptimizeResult",
    "FitResult",
    "constriction_factor",
    "initialize_swarm",
    "step",
    "optimize",
    "ar_objective",
    "fit_ar_cfpso",
]

Objective = Callable[[np.ndarray], float]


class VelocityRule(enum.Enum):
    INERTIA_WEIGHT = "inertia"
    CONSTRICTION_FACTOR = "constriction"


class Termination(enum.Enum):
    MAX_ITERATIONS = "max_iterations"
    STALLED = "stalled"


def constriction_factor(c1: float, c2: float) -> float:
    """Clerc-Kennedy constriction coefficient for ``phi = c1 + c2 > 4``.

    >>> round(constriction_factor(2.05, 2.05), 4)
    0.7298
    """
    phi = c1 + c2
    if not phi > 4.0:
        raise PhiOutOfRange(f"c1 + c2 must exceed 4, got {phi}")
    return 2.0 / abs(2.0 - phi - math.sqrt(phi * phi - 4.0 * phi))


@dataclass(frozen=True)
class PsoConfig:
    """Swarm settings.

    ``lower`` and ``upper`` are scalars or per-dimension sequences. The stall
    rule stops the run once the global best has improved by less than
    ``stall_tolerance`` (relative) over the last ``stall_window`` iterations.
    """

    dimension: int
    lower: object = -2.0
    upper: object = 2.0
    swarm_size: int = 30
    c1: float = 2.05
    c2: float = 2.05
    inertia_weight: float = 0.7
    velocity_rule: VelocityRule = VelocityRule.CONSTRICTION_FACTOR
    max_iterations: int = 100
    stall_tolerance: float = 1e-3
    stall_window: int = 20
    rng_seed: int = 0
    seed_positions: Optional[Sequence[Sequence[float]]] = None

    def __post_init__(self):
        if isinstance(self.velocity_rule, str):
            object.__setattr__(self, "velocity_rule", VelocityRule(self.velocity_rule))
        if self.dimension < 1:
            raise ConfigurationError("dimension must be at least 1")
        if self.swarm_size < 2:
            raise ConfigurationError("swarm_size must be at least 2")
        if self.c1 <= 0 or self.c2 <= 0:
            raise ConfigurationError("learning coefficients must be positive")
        if self.inertia_weight <= 0:
            raise ConfigurationError("inertia_weight must be positive")
        if self.velocity_rule is VelocityRule.CONSTRICTION_FACTOR and not self.c1 + self.c2 > 4:
            raise PhiOutOfRange(f"c1 + c2 must exceed 4, got {self.c1 + self.c2}")
        if self.max_iterations < 0:
            raise ConfigurationError("max_iterations must be nonnegative")
        if self.stall_tolerance <= 0 or self.stall_window < 1:
            raise ConfigurationError("stall rule needs a positive tolerance and window")
        lo, hi = self.bounds
        if not np.all(lo < hi):
            raise ConfigurationError("every lower bound must be below its upper bound")
        if self.seed_positions is not None:
            seeds = np.asarray(self.seed_positions, dtype=float).reshape(-1, self.dimension)
            if seeds.shape[0] > self.swarm_size:
                raise ConfigurationError("more seed positions than particles")
            if np.any(seeds < lo) or np.any(seeds > hi):
                raise ConfigurationError("seed positions must lie within bounds")

    @property
    def bounds(self):
        lo = np.broadcast_to(np.asarray(self.lower, dtype=float), (self.dimension,)).copy()
        hi = np.broadcast_to(np.asarray(self.upper, dtype=float), (self.dimension,)).copy()
        return lo, hi

    @property
    def k(self) -> float:
        return constriction_factor(self.c1, self.c2)


@dataclass(frozen=True)
class Particle:
    position: np.ndarray
    velocity: np.ndarray
    personal_best_position: np.ndarray
    personal_best_value: float


@dataclass(frozen=True, eq=False)
class Swarm:
    """Swarm state, stored row-per-particle.

    ``rng_state`` is the generator's bit state so that :func:`step` stays a
    pure function of its inputs.
    """

    positions: np.ndarray
    velocities: np.ndarray
    best_positions: np.ndarray
    best_values: np.ndarray
    global_best_position: np.ndarray
    global_best_value: float
    iteration: int
    trace: tuple
    rng_state: dict = field(repr=False)

    @property
    def particles(self) -> List[Particle]:
        return [
            Particle(self.positions[i], self.velocities[i], self.best_positions[i], float(self.best_values[i]))
            for i in range(self.positions.shape[0])
        ]


@dataclass(frozen=True)
class OptimizeResult:
    best_position: np.ndarray
    best_value: float
    trace: tuple
    termination: Termination
    iterations: int


@dataclass(frozen=True, eq=False)
class FitResult:
    model: ARModel
    objective_value: float
    trace: tuple
    iterations_used: int
    termination: Termination


def _evaluate(objective: Objective, positions: np.ndarray) -> np.ndarray:
    values = np.empty(positions.shape[0])
    for i, x in enumerate(positions):
        value = float(objective(x.copy()))
        if not math.isfinite(value):
            raise ObjectiveNonFinite(f"objective returned {value} at {x.tolist()}")
        values[i] = value
    return values


def _rng(state: dict) -> np.random.Generator:
    bit_generator = np.random.PCG64()
    bit_generator.state = state
    return np.random.Generator(bit_generator)


def initialize_swarm(config: PsoConfig, objective: Objective) -> Swarm:
    """Uniform positions in the box, zero velocities, bests from one evaluation.

    Seed positions, if given, replace the first particles verbatim.
    """
    rng = np.random.Generator(np.random.PCG64(config.rng_seed))
    lo, hi = config.bounds
    positions = lo + (hi - lo) * rng.random((config.swarm_size, config.dimension))
    if config.seed_positions is not None:
        seeds = np.asarray(config.seed_positions, dtype=float).reshape(-1, config.dimension)
        positions[: seeds.shape[0]] = seeds
    values = _evaluate(objective, positions)
    g = int(np.argmin(values))
    return Swarm(
        positions=positions,
        velocities=np.zeros_like(positions),
        best_positions=positions.copy(),
        best_values=values,
        global_best_position=positions[g].copy(),
        global_best_value=float(values[g]),
        iteration=0,
        trace=(float(values[g]),),
        rng_state=rng.bit_generator.state,
    )


def step(swarm: Swarm, config: PsoConfig, objective: Objective) -> Swarm:
    """One synchronous swarm iteration; returns a new Swarm."""
    rng = _rng(swarm.rng_state)
    x = swarm.positions
    shape = x.shape
    r1 = rng.random(shape)
    r2 = rng.random(shape)
    pull = (
        r1 * config.c1 * (swarm.best_positions - x)
        + r2 * config.c2 * (swarm.global_best_position - x)
    )
    if config.velocity_rule is VelocityRule.CONSTRICTION_FACTOR:
        velocities = config.k * (swarm.velocities + pull)
    else:
        velocities = config.inertia_weight * swarm.velocities + pull
    lo, hi = config.bounds
    positions = np.clip(x + velocities, lo, hi)

    values = _evaluate(objective, positions)
    improved = values < swarm.best_values
    best_positions = np.where(improved[:, None], positions, swarm.best_positions)
    best_values = np.where(improved, values, swarm.best_values)

    g = int(np.argmin(best_values))
    if best_values[g] < swarm.global_best_value:
        gpos, gval = best_positions[g].copy(), float(best_values[g])
    else:
        gpos, gval = swarm.global_best_position, swarm.global_best_value
    return Swarm(
        positions=positions,
        velocities=velocities,
        best_positions=best_positions,
        best_values=best_values,
        global_best_position=gpos,
        global_best_value=gval,
        iteration=swarm.iteration + 1,
        trace=swarm.trace + (gval,),
        rng_state=rng.bit_generator.state,
    )


def _stalled(trace, tolerance, window) -> bool:
    if len(trace) <= window:
        return False
    old, new = trace[-1 - window], trace[-1]
    scale = max(abs(old), np.finfo(float).tiny)
    return (old - new) / scale < tolerance


def optimize(config: PsoConfig, objective: Objective, callback=None) -> OptimizeResult:
    """Iterate :func:`step` until the iteration cap or the stall rule fires.

    ``callback(swarm)``, if given, is called after initialization and after
    every step.
    """
    swarm = initialize_swarm(config, objective)
    if callback is not None:
        callback(swarm)
    termination = Termination.MAX_ITERATIONS
    while swarm.iteration < config.max_iterations:
        swarm = step(swarm, config, objective)
        if callback is not None:
            callback(swarm)
        if _stalled(swarm.trace, config.stall_tolerance, config.stall_window):
            termination = Termination.STALLED
            break
    return OptimizeResult(
        best_position=swarm.global_best_position.copy(),
        best_value=swarm.global_best_value,
        trace=swarm.trace,
        termination=termination,
        iterations=swarm.iteration,
    )


# Largest finite stand-in for a diverging free-run objective, so explosive
# coefficient vectors lose every comparison instead of aborting the run.
_DIVERGED = float(np.finfo(float).max)


def ar_objective(series, order: int, mode=PredictionMode.ONE_STEP_AHEAD, demean: bool = True) -> Objective:
    """RSS of the AR model with coefficients ``theta`` over ``t = p+1 .. n``.

    The intercept follows the series mean, as for the classical estimators.
    In free-run mode a diverging recursion scores the largest finite float.
    """
    x = _as_array(series)
    mean = _demean(TimeSeries(x))[1] if demean else 0.0
    actual = x[order:]
    mode = PredictionMode.parse(mode)

    def objective(theta):
        model = model_from_coefficients(theta, mean)
        rss = residual_sum_of_squares(actual, predict(model, x, mode))
        if mode is PredictionMode.FREE_RUN and not math.isfinite(rss):
            return _DIVERGED
        return rss

    return objective


def fit_ar_cfpso(
    series,
    order: int,
    config: Optional[PsoConfig] = None,
    mode=PredictionMode.ONE_STEP_AHEAD,
    demean: bool = True,
) -> FitResult:
    """Fit AR coefficients by minimizing RSS with the swarm.

    Each particle position is a coefficient vector. ``config`` defaults to a
    30-particle constriction swarm over [-2, 2] per coefficient.
    """
    x = _as_array(series)
    if order < 1:
        raise ConfigurationError("swarm fitting needs order >= 1")
    if x.shape[0] <= 2 * order:
        raise SeriesTooShort(f"order {order} needs more than {2 * order} samples")
    if config is None:
        config = PsoConfig(dimension=order)
    elif config.dimension != order:
        raise ConfigurationError(f"config.dimension={config.dimension} but order={order}")
    mode = PredictionMode.parse(mode)
    objective = ar_objective(x, order, mode, demean)
    result = optimize(config, objective)
    mean = _demean(TimeSeries(x))[1] if demean else 0.0
    model = model_from_coefficients(
        result.best_position, mean, result.best_value / (x.shape[0] - order)
    )
    return FitResult(model, result.best_value, result.trace, result.iterations, result.termination)


def with_seed(config: PsoConfig, seed: int) -> PsoConfig:
    return replace(config, rng_seed=seed)
