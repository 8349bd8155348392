"""Classical AR parameter estimators.

Four baselines: ordinary least squares (LS), forward-backward least squares
(FB), Yule-Walker via Levinson-Durbin (YW) and the geometric lattice (GL).
All of them fit the demeaned series and restore the intercept from the
sample mean. Pass ``demean=False`` to treat the series as already zero-mean,
which pins the intercept at zero.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .errors import (
    ConstantSeries,
    LagTooLarge,
    NumericallySingular,
    SeriesTooShort,
    SingularDesign,
)
from .series import (
    ARModel,
    PredictionMode,
    TimeSeries,
    _as_array,
    demean as _demean,
    lag_matrix,
    model_from_coefficients,
    predict,
    residual_sum_of_squares,
)

__all__ = [
    "EstimatorKind",
    "AutocorrelationSequence",
    "LevinsonResult",
    "autocovariance",
    "levinson_durbin",
    "fit_yule_walker",
    "fit_least_squares",
    "fit_forward_backward",
    "lattice_reflection_coefficients",
    "fit_geometric_lattice",
    "fit_estimator",
    "one_step_rss",
]

# relative to the largest |R_ii| of the QR factor
SINGULAR_THRESHOLD = 1e-12


class EstimatorKind(enum.Enum):
    LS = "LS"
    FB = "FB"
    YW = "YW"
    GL = "GL"

    @classmethod
    def parse(cls, value) -> "EstimatorKind":
        if isinstance(value, cls):
            return value
        return cls(str(value).strip().upper())


@dataclass(frozen=True, eq=False)
class AutocorrelationSequence:
    """Biased sample autocovariances ``lags[0..K]``."""

    lags: np.ndarray

    def __len__(self):
        return self.lags.shape[0]


@dataclass(frozen=True, eq=False)
class LevinsonResult:
    coefficients: np.ndarray
    reflection: np.ndarray
    error_power: np.ndarray  # prediction-error power after each stage, [0..p]


def _centered(series, demean):
    x = _as_array(series)
    if demean:
        centered, mean = _demean(TimeSeries(x))
        return centered.values, mean
    return x, 0.0


def autocovariance(series, max_lag: int) -> AutocorrelationSequence:
    """``lags[k] = (1/n) sum_t x_t x_{t+k}`` on the series as given.

    The caller is expected to pass a demeaned series.
    """
    x = _as_array(series)
    n = x.shape[0]
    if max_lag < 0 or max_lag >= n:
        raise LagTooLarge(f"max_lag={max_lag} needs a series longer than {max_lag}")
    lags = np.array([np.dot(x[: n - k], x[k:]) for k in range(max_lag + 1)]) / n
    if lags[0] <= 0.0:
        raise ConstantSeries("zero-variance series")
    return AutocorrelationSequence(lags)


def levinson_durbin(lags, order: int) -> LevinsonResult:
    """Solve the Toeplitz normal equations ``R phi = r`` by order recursion.

    ``lags`` holds ``r_0 .. r_p`` (at least ``order + 1`` entries).
    """
    r = np.asarray(getattr(lags, "lags", lags), dtype=float)
    if r.shape[0] < order + 1:
        raise LagTooLarge("not enough autocovariance lags for the requested order")
    if r[0] <= 0.0:
        raise ConstantSeries("zero-variance series")
    phi = np.zeros(order)
    kappa = np.zeros(order)
    power = np.empty(order + 1)
    power[0] = r[0]
    for m in range(order):
        acc = r[m + 1] - np.dot(phi[:m], r[m:0:-1])
        k = acc / power[m]
        prev = phi[:m].copy()
        phi[:m] = prev - k * prev[::-1]
        phi[m] = k
        kappa[m] = k
        power[m + 1] = power[m] * (1.0 - k * k)
        if power[m + 1] <= 0.0:
            raise NumericallySingular(f"prediction-error power vanished at stage {m + 1}")
    return LevinsonResult(phi, kappa, power)


def one_step_rss(model: ARModel, series) -> float:
    """One-step-ahead RSS over ``t = p+1 .. n``."""
    x = _as_array(series)
    return residual_sum_of_squares(x[model.order:], predict(model, x, PredictionMode.ONE_STEP_AHEAD))


def _check_length(n, order, minimum, what):
    if order < 0:
        raise ValueError("order must be nonnegative")
    if n <= minimum:
        raise SeriesTooShort(f"{what} of order {order} needs more than {minimum} samples, got {n}")


def fit_yule_walker(series, order: int, demean: bool = True) -> ARModel:
    """Yule-Walker estimate; innovation variance is the final error power."""
    x, mean = _centered(series, demean)
    _check_length(x.shape[0], order, order + 1, "Yule-Walker fit")
    acov = autocovariance(x, order)
    result = levinson_durbin(acov, order)
    return model_from_coefficients(result.coefficients, mean, result.error_power[-1])


def _qr_solve(design, target):
    if design.shape[1] == 0:
        return np.zeros(0)
    q, r = np.linalg.qr(design)
    diag = np.abs(np.diag(r))
    top = diag.max()
    if top == 0.0 or diag.min() <= SINGULAR_THRESHOLD * top:
        raise SingularDesign("lagged regressors are (nearly) collinear")
    return solve_triangular(r, q.T @ target)


def _residual_variance(coefficients, x):
    model = model_from_coefficients(coefficients, 0.0)
    return one_step_rss(model, x) / (x.shape[0] - model.order)


def fit_least_squares(series, order: int, demean: bool = True) -> ARModel:
    """Exact minimizer of the forward one-step RSS.

    Solved by Householder QR of the lag matrix. The returned model's
    ``innovation_variance`` is the mean squared one-step residual.
    """
    x, mean = _centered(series, demean)
    _check_length(x.shape[0], order, 2 * order, "least-squares fit")
    phi = _qr_solve(lag_matrix(x, order), x[order:])
    return model_from_coefficients(phi, mean, _residual_variance(phi, x))


def fit_forward_backward(series, order: int, demean: bool = True) -> ARModel:
    """Least squares on stacked forward and time-reversed prediction errors.

    The backward predictor reuses the forward coefficients:
    ``x_t ~ sum_i phi_i x_{t+i}``.
    """
    x, mean = _centered(series, demean)
    _check_length(x.shape[0], order, 2 * order, "forward-backward fit")
    xr = x[::-1]
    design = np.vstack((lag_matrix(x, order), lag_matrix(xr, order)))
    target = np.concatenate((x[order:], xr[order:]))
    phi = _qr_solve(design, target)
    return model_from_coefficients(phi, mean, _residual_variance(phi, x))


def lattice_reflection_coefficients(series, order: int, demean: bool = True) -> np.ndarray:
    """Stage-wise reflection coefficients of the geometric lattice.

    At each stage the coefficient is the normalized cross-correlation of the
    forward error and the delayed backward error,
    ``sum(f_t b_{t-1}) / sqrt(sum(f_t^2) * sum(b_{t-1}^2))``, so it never
    leaves [-1, 1]. If the error energy runs out before ``order`` stages
    (noiseless data) the remaining coefficients are zero.
    """
    x, _ = _centered(series, demean)
    _check_length(x.shape[0], order, order + 1, "lattice fit")
    energy0 = float(np.dot(x, x))
    if energy0 <= 0.0:
        raise ConstantSeries("zero-variance series")
    floor = np.finfo(float).eps * energy0
    f = x.copy()
    b = x.copy()
    kappa = np.zeros(order)
    for m in range(order):
        fm = f[1:]
        bm = b[:-1]
        ef = np.dot(fm, fm)
        eb = np.dot(bm, bm)
        if ef <= floor or eb <= floor:
            break
        k = np.clip(np.dot(fm, bm) / (np.sqrt(ef) * np.sqrt(eb)), -1.0, 1.0)
        kappa[m] = k
        f, b = fm - k * bm, bm - k * fm
    return kappa


def _step_up(kappa) -> np.ndarray:
    """Reflection coefficients to prediction coefficients (Levinson step-up)."""
    phi = np.zeros(0)
    for k in kappa:
        phi = np.concatenate((phi - k * phi[::-1], [k]))
    return phi


def fit_geometric_lattice(series, order: int, demean: bool = True) -> ARModel:
    x, mean = _centered(series, demean)
    kappa = lattice_reflection_coefficients(x, order, demean=False)
    phi = _step_up(kappa)
    return model_from_coefficients(phi, mean, _residual_variance(phi, x))


_FITTERS = {
    EstimatorKind.LS: fit_least_squares,
    EstimatorKind.FB: fit_forward_backward,
    EstimatorKind.YW: fit_yule_walker,
    EstimatorKind.GL: fit_geometric_lattice,
}


def fit_estimator(kind, series, order: int, demean: bool = True) -> ARModel:
    """Dispatch to the estimator named by ``kind`` (an EstimatorKind or 'LS', ...)."""
    return _FITTERS[EstimatorKind.parse(kind)](series, order, demean=demean)
