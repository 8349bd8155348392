"""Time series container, AR model, prediction and simulation.

An order-``p`` autoregressive model reads

    X_t = C + phi_1 X_{t-1} + ... + phi_p X_{t-p} + e_t

with ``e_t`` zero-mean white Gaussian noise. Every estimator in the package
works on the demeaned series and restores the intercept afterwards as
``C = mean * (1 - sum(phi))`` (see :func:`model_from_coefficients`).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.signal import lfilter, lfiltic

from .errors import (
    EmptyInput,
    EmptySeries,
    InvalidLength,
    LengthMismatch,
    NonFiniteSample,
    SeriesTooShort,
)

__all__ = [
    "TimeSeries",
    "ARModel",
    "PredictionMode",
    "validate_series",
    "demean",
    "predict",
    "residual_sum_of_squares",
    "simulate_ar",
    "forecast",
    "model_from_coefficients",
    "lag_matrix",
]


def _readonly(values) -> np.ndarray:
    arr = np.array(values, dtype=float, copy=True).reshape(-1)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Ordered real-valued samples.

    Build through :func:`validate_series` to get the finiteness checks.
    ``sample_interval`` is opaque metadata (seconds) and never used in
    computations.
    """

    values: np.ndarray
    sample_interval: Optional[float] = None
    label: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "values", _readonly(self.values))

    def __len__(self):
        return self.values.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def reversed(self) -> "TimeSeries":
        return TimeSeries(self.values[::-1], self.sample_interval, self.label)

    def scaled(self, factor: float) -> "TimeSeries":
        return TimeSeries(self.values * factor, self.sample_interval, self.label)


@dataclass(frozen=True, eq=False)
class ARModel:
    """AR(p) model: lag coefficients, intercept and innovation variance."""

    order: int
    coefficients: np.ndarray = field(default_factory=lambda: np.zeros(0))
    intercept: float = 0.0
    innovation_variance: float = 0.0

    def __post_init__(self):
        coefficients = _readonly(self.coefficients)
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        if coefficients.shape[0] != self.order:
            raise ValueError(
                f"expected {self.order} coefficients, got {coefficients.shape[0]}"
            )
        if not self.innovation_variance >= 0:
            raise ValueError("innovation_variance must be nonnegative")
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "intercept", float(self.intercept))
        object.__setattr__(self, "innovation_variance", float(self.innovation_variance))

    @property
    def process_mean(self) -> float:
        """Stationary mean ``C / (1 - sum(phi))``; NaN for a unit root."""
        denom = 1.0 - float(np.sum(self.coefficients))
        return self.intercept / denom if denom != 0.0 else float("nan")

    def roots(self) -> np.ndarray:
        """Roots of ``z^p - phi_1 z^(p-1) - ... - phi_p``.

        The model is stationary when all of them lie strictly inside the
        unit circle.
        """
        if self.order == 0:
            return np.zeros(0, dtype=complex)
        return np.roots(np.concatenate(([1.0], -self.coefficients)))

    def is_stable(self) -> bool:
        return bool(np.all(np.abs(self.roots()) < 1.0))

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "coefficients": [float(c) for c in self.coefficients],
            "intercept": self.intercept,
            "innovation_variance": self.innovation_variance,
        }


class PredictionMode(enum.Enum):
    """How the estimated data is produced from a fitted model.

    ``ONE_STEP_AHEAD`` conditions every prediction on the actual past
    samples. ``FREE_RUN`` seeds the recursion with the first ``p`` actual
    samples and then feeds its own predictions back.
    """

    ONE_STEP_AHEAD = "one-step"
    FREE_RUN = "free-run"

    @classmethod
    def parse(cls, value) -> "PredictionMode":
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower().replace("_", "-")
        aliases = {"one-step-ahead": "one-step", "onestep": "one-step", "freerun": "free-run"}
        return cls(aliases.get(text, text))


SeriesLike = Union[TimeSeries, Sequence[float], np.ndarray]


def _as_array(series: SeriesLike) -> np.ndarray:
    if isinstance(series, TimeSeries):
        return series.values
    return np.asarray(series, dtype=float).reshape(-1)


def validate_series(raw, sample_interval=None, label=None) -> TimeSeries:
    """Check ``raw`` is nonempty and finite and wrap it as a TimeSeries."""
    values = np.asarray(raw, dtype=float).reshape(-1)
    if values.size == 0:
        raise EmptySeries("series has no samples")
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise NonFiniteSample(int(bad[0]))
    return TimeSeries(values, sample_interval, label)


def demean(series: TimeSeries):
    """Return ``(centered_series, mean)``.

    A constant series centers to exact zeros, so downstream constant-series
    checks can compare against zero.
    """
    x = _as_array(series)
    if x.size and np.all(x == x[0]):
        mean = float(x[0])
        centered = np.zeros_like(x)
    else:
        mean = float(np.mean(x))
        centered = x - mean
    if isinstance(series, TimeSeries):
        return TimeSeries(centered, series.sample_interval, series.label), mean
    return TimeSeries(centered), mean


def model_from_coefficients(coefficients, mean=0.0, innovation_variance=0.0) -> ARModel:
    """Build the model whose intercept puts the process mean at ``mean``."""
    coefficients = np.asarray(coefficients, dtype=float).reshape(-1)
    intercept = mean * (1.0 - float(np.sum(coefficients)))
    return ARModel(coefficients.shape[0], coefficients, intercept, innovation_variance)


def lag_matrix(values, order: int) -> np.ndarray:
    """Rows ``[x_{t-1}, ..., x_{t-p}]`` for ``t = p .. n-1`` (0-based)."""
    x = np.asarray(values, dtype=float)
    if order == 0:
        return np.zeros((x.shape[0], 0))
    return sliding_window_view(x, order)[:-1, ::-1]


def predict(model: ARModel, series: SeriesLike, mode=PredictionMode.ONE_STEP_AHEAD) -> np.ndarray:
    """Model output aligned with the actual samples ``x[p:]``.

    Returns an array of length ``n - p``.
    """
    mode = PredictionMode.parse(mode)
    x = _as_array(series)
    p = model.order
    n = x.shape[0]
    if n <= p:
        raise SeriesTooShort(f"need more than {p} samples, got {n}")
    if p == 0:
        return np.full(n, model.intercept)
    if mode is PredictionMode.ONE_STEP_AHEAD:
        return model.intercept + lag_matrix(x, p) @ model.coefficients
    return _free_run(model, x[:p], n - p)


def _free_run(model: ARModel, history, steps: int) -> np.ndarray:
    """Run the noiseless recursion ``steps`` samples past ``history``."""
    a = np.concatenate(([1.0], -model.coefficients))
    zi = lfiltic([1.0], a, np.asarray(history, dtype=float)[::-1])
    drive = np.full(steps, model.intercept)
    with np.errstate(over="ignore", invalid="ignore"):
        out, _ = lfilter([1.0], a, drive, zi=zi)
    return out


def forecast(model: ARModel, series: SeriesLike, horizon: int) -> np.ndarray:
    """Free-run extension of ``series`` by ``horizon`` future samples."""
    if horizon < 1:
        raise InvalidLength("horizon must be at least 1")
    x = _as_array(series)
    p = model.order
    if x.shape[0] < p:
        raise SeriesTooShort(f"need at least {p} samples to forecast")
    if p == 0:
        return np.full(horizon, model.intercept)
    return _free_run(model, x[-p:], horizon)


def residual_sum_of_squares(actual, estimated) -> float:
    """Sum of squared differences between actual and estimated samples."""
    a = np.asarray(actual, dtype=float).reshape(-1)
    e = np.asarray(estimated, dtype=float).reshape(-1)
    if a.shape != e.shape:
        raise LengthMismatch(f"lengths differ: {a.shape[0]} vs {e.shape[0]}")
    if a.size == 0:
        raise EmptyInput("nothing to compare")
    d = a - e
    return float(np.dot(d, d))


def simulate_ar(
    model: ARModel,
    n: int,
    noise_std: float = 1.0,
    seed: int = 0,
    warmup: int = 200,
    init=None,
) -> TimeSeries:
    """Generate ``n`` samples of the AR recursion driven by Gaussian noise.

    Noise comes from ``numpy.random.Generator(PCG64(seed))``, which yields the
    same stream on every platform. ``init`` is the pre-sample history
    ``[x_{-1}, ..., x_{-p}]`` read oldest-first, i.e. ``init[-1]`` is the
    sample right before the first generated one; it defaults to zeros. The
    first ``warmup`` generated samples are dropped.
    """
    if n < 1:
        raise InvalidLength("n must be at least 1")
    if warmup < 0:
        raise InvalidLength("warmup must be nonnegative")
    if noise_std < 0:
        raise InvalidLength("noise_std must be nonnegative")
    p = model.order
    if init is None:
        history = np.zeros(p)
    else:
        history = np.asarray(init, dtype=float).reshape(-1)
        if history.shape[0] != p:
            raise InvalidLength(f"init must hold {p} samples")
    total = warmup + n
    rng = np.random.Generator(np.random.PCG64(seed))
    noise = noise_std * rng.standard_normal(total)
    drive = model.intercept + noise
    if p == 0:
        out = drive
    else:
        a = np.concatenate(([1.0], -model.coefficients))
        zi = lfiltic([1.0], a, history[::-1])
        out, _ = lfilter([1.0], a, drive, zi=zi)
    return TimeSeries(out[warmup:])
