"""Lag-order selection by Akaike's information criterion."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .errors import ConfigurationError, NonPositiveVariance, SeriesTooShort
from .estimators import EstimatorKind, fit_estimator, one_step_rss
from .series import _as_array, demean as _demean, TimeSeries

__all__ = ["AicCurve", "aic", "select_order", "write_aic_csv"]


def aic(sigma_hat: float, n: int, M: int) -> float:
    """``n * ln(sigma_hat) + 2 M``."""
    if not sigma_hat > 0:
        raise NonPositiveVariance(f"sigma_hat must be positive, got {sigma_hat}")
    if n < 1 or M < 0:
        raise ConfigurationError("need n >= 1 and M >= 0")
    return n * math.log(sigma_hat) + 2 * M


@dataclass(frozen=True)
class AicCurve:
    """AIC per candidate order.

    ``reference`` is the order-0 row (sample variance of the demeaned
    series). It is reported for context and is never a candidate.
    """

    entries: Tuple[Tuple[int, float], ...]
    chosen_order: int
    estimator: EstimatorKind
    n_effective: int
    scale: str
    reference: Tuple[int, float]

    @property
    def orders(self) -> List[int]:
        return [order for order, _ in self.entries]

    @property
    def values(self) -> np.ndarray:
        return np.array([value for _, value in self.entries])


def select_order(series, rho_max: int, estimator=EstimatorKind.YW, scale: str = "std") -> AicCurve:
    """Fit orders 1..rho_max and keep the one with the smallest AIC.

    The residual spread of order ``p`` comes from its one-step RSS over
    ``t = p+1 .. n``: ``scale="std"`` (default) plugs ``sqrt(RSS / (n - p))``
    into ``n * ln(sigma_hat) + 2 M``, ``scale="variance"`` plugs
    ``RSS / (n - p)``. The variance form doubles the weight of the fit term
    relative to the penalty and overfits noticeably more often. The
    multiplier ``n`` is held at ``N - rho_max`` for every candidate so that
    rescaling the series shifts the whole curve by one constant. Ties go to
    the smaller order.
    """
    if rho_max < 1:
        raise ConfigurationError("rho_max must be at least 1")
    if scale not in ("std", "variance"):
        raise ConfigurationError("scale must be 'std' or 'variance'")
    x = _as_array(series)
    N = x.shape[0]
    if N <= 2 * rho_max:
        raise SeriesTooShort(f"rho_max={rho_max} needs more than {2 * rho_max} samples")
    kind = EstimatorKind.parse(estimator)
    n_eff = N - rho_max
    spread = math.sqrt if scale == "std" else (lambda v: v)
    entries = []
    for p in range(1, rho_max + 1):
        model = fit_estimator(kind, x, p)
        sigma_hat = spread(one_step_rss(model, x) / (N - p))
        entries.append((p, aic(sigma_hat, n_eff, p)))
    values = [v for _, v in entries]
    chosen = entries[int(np.argmin(values))][0]
    centered, _ = _demean(TimeSeries(x))
    variance = float(np.dot(centered.values, centered.values)) / N
    reference = (0, aic(spread(variance), n_eff, 0)) if variance > 0 else (0, float("nan"))
    return AicCurve(tuple(entries), chosen, kind, n_eff, scale, reference)


def write_aic_csv(curves, path) -> None:
    """Write ``order,aic`` rows; several curves become one column per estimator."""
    if isinstance(curves, AicCurve):
        curves = [curves]
    curves = list(curves)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if len(curves) == 1:
            writer.writerow(["order", "aic"])
            for order, value in curves[0].entries:
                writer.writerow([order, format(value, ".17g")])
        else:
            writer.writerow(["order"] + [f"aic_{c.estimator.value}" for c in curves])
            for i, (order, _) in enumerate(curves[0].entries):
                writer.writerow([order] + [format(c.entries[i][1], ".17g") for c in curves])
