"""Evaluation indices and the five-method comparison table.

Indices: mean square error, Akaike's final prediction error, a normalized
fit score (1 is a perfect fit, unbounded below) and the error-minimization
percentage relative to the least-squares baseline.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace
from typing import Dict, List, Optional, Sequence

import numpy as np

from .errors import (
    ArswarmError,
    ConstantActual,
    DegenerateRatio,
    EmptyInput,
    LengthMismatch,
    NonPositiveBaseline,
)
from .estimators import EstimatorKind, fit_estimator
from .pso import PsoConfig, fit_ar_cfpso
from .series import ARModel, PredictionMode, _as_array, predict, residual_sum_of_squares

__all__ = [
    "CFPSO",
    "METHODS",
    "mse",
    "fpe",
    "nmse",
    "nmse_raw",
    "emp",
    "MetricsReport",
    "ComparisonReport",
    "build_comparison",
]

CFPSO = "CF-PSO"
METHODS = ("LS", "FB", "YW", "GL", CFPSO)


def _pair(actual, estimated):
    a = np.asarray(actual, dtype=float).reshape(-1)
    e = np.asarray(estimated, dtype=float).reshape(-1)
    if a.shape != e.shape:
        raise LengthMismatch(f"lengths differ: {a.shape[0]} vs {e.shape[0]}")
    if a.size == 0:
        raise EmptyInput("nothing to compare")
    return a, e


def mse(actual, estimated) -> float:
    a, e = _pair(actual, estimated)
    return residual_sum_of_squares(a, e) / a.shape[0]


def fpe(loss: float, h: int, H: int) -> float:
    """Final prediction error ``loss * (1 + h/H) / (1 - h/H)``."""
    if H <= 0 or h >= H:
        raise DegenerateRatio(f"need H > h, got h={h}, H={H}")
    if h < 0 or loss < 0:
        raise ValueError("h and loss must be nonnegative")
    ratio = h / H
    return loss * (1.0 + ratio) / (1.0 - ratio)


def nmse_raw(actual, estimated) -> float:
    """``sum((Y - Yhat)^2) / (delta^2 n)`` with ``delta^2`` the unbiased variance of Y."""
    a, e = _pair(actual, estimated)
    n = a.shape[0]
    if n < 2:
        raise EmptyInput("need at least two samples")
    centered = a - a.mean()
    spread = float(np.dot(centered, centered))
    if spread == 0.0:
        raise ConstantActual("actual data has zero variance")
    delta2 = spread / (n - 1)
    return residual_sum_of_squares(a, e) / (delta2 * n)


def nmse(actual, estimated) -> float:
    """Normalized fit score ``1 - nmse_raw``; 1 for a perfect fit."""
    return 1.0 - nmse_raw(actual, estimated)


def emp(error_ls: float, error_i: float) -> float:
    """Percent error reduction relative to the least-squares baseline."""
    if not error_ls > 0:
        raise NonPositiveBaseline(f"baseline error must be positive, got {error_ls}")
    return (error_ls - error_i) / error_ls * 100.0


@dataclass(frozen=True)
class MetricsReport:
    """One row of the comparison table.

    For the swarm row ``mse``, ``fpe`` and ``nmse`` are means over runs and
    ``std_mse`` their spread. A failed method has ``error`` set and NaN
    metrics.
    """

    method: str
    mse: float
    fpe: float
    nmse: float
    nmse_raw: float
    emp_mse_pct: Optional[float] = None
    emp_fpe_pct: Optional[float] = None
    runs: int = 1
    std_mse: float = 0.0
    coefficients: tuple = ()
    intercept: float = float("nan")
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_dict(self) -> dict:
        out = asdict(self)
        out["coefficients"] = list(self.coefficients)
        for key, value in out.items():
            if isinstance(value, float) and not math.isfinite(value):
                out[key] = None
        return out


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    rows: List[MetricsReport]
    order: int
    mode: PredictionMode
    span_length: int
    actual: np.ndarray
    estimated: Dict[str, np.ndarray]
    best_trace: tuple = ()
    run_rss: tuple = ()
    run_traces: tuple = field(default=(), repr=False)

    def row(self, method) -> MetricsReport:
        for r in self.rows:
            if r.method == method:
                return r
        raise KeyError(method)


def _row_for(method, model: ARModel, x, order, mode):
    actual = x[order:]
    estimated = predict(model, x, mode)
    rss = residual_sum_of_squares(actual, estimated)
    H = actual.shape[0]
    loss = rss / H
    return (
        MetricsReport(
            method=method,
            mse=loss,
            fpe=fpe(loss, order, H),
            nmse=nmse(actual, estimated),
            nmse_raw=nmse_raw(actual, estimated),
            coefficients=tuple(float(c) for c in model.coefficients),
            intercept=model.intercept,
        ),
        estimated,
    )


def _failed(method, exc):
    nan = float("nan")
    return MetricsReport(method, nan, nan, nan, nan, runs=0, std_mse=nan, error=f"{type(exc).__name__}: {exc}")


def build_comparison(
    series,
    order: int,
    methods: Sequence[str] = METHODS,
    mode=PredictionMode.ONE_STEP_AHEAD,
    pso_config: Optional[PsoConfig] = None,
    runs: int = 30,
    ls_seeding: bool = False,
    demean: bool = True,
) -> ComparisonReport:
    """Fit every method on the same data and tabulate the indices.

    All rows are scored on the common span ``t = order+1 .. n``; FPE uses the
    mean loss with ``h = order`` and ``H = n - order``. The swarm is restarted
    ``runs`` times with seeds ``pso_config.rng_seed + r``. With
    ``ls_seeding`` the least-squares coefficients (clipped into the box) are
    injected as one initial particle of every run.
    """
    x = _as_array(series)
    mode = PredictionMode.parse(mode)
    methods = [CFPSO if m.upper().replace("_", "-") in ("CF-PSO", "CFPSO", "PSO") else m.upper() for m in methods]
    rows: List[MetricsReport] = []
    estimated: Dict[str, np.ndarray] = {}
    models: Dict[str, ARModel] = {}

    need_ls = "LS" in methods or (CFPSO in methods and ls_seeding)
    for method in [m for m in methods if m != CFPSO] + (["LS"] if need_ls and "LS" not in methods else []):
        try:
            model = fit_estimator(EstimatorKind.parse(method), x, order, demean=demean)
            row, est = _row_for(method, model, x, order, mode)
        except ArswarmError as exc:
            if method in methods:
                rows.append(_failed(method, exc))
            continue
        models[method] = model
        if method in methods:
            rows.append(row)
            estimated[method] = est

    best_trace, run_rss, run_traces = (), (), ()
    if CFPSO in methods:
        try:
            if runs < 1:
                raise ValueError("runs must be at least 1")
            config = pso_config if pso_config is not None else PsoConfig(dimension=order)
            if ls_seeding and "LS" in models:
                lo, hi = config.bounds
                seed = np.clip(models["LS"].coefficients, lo, hi)
                config = replace(config, seed_positions=[seed.tolist()])
            fits = [
                fit_ar_cfpso(x, order, replace(config, rng_seed=config.rng_seed + r), mode, demean)
                for r in range(runs)
            ]
            scored = [_row_for(CFPSO, fit.model, x, order, mode) for fit in fits]
            best = int(np.argmin([fit.objective_value for fit in fits]))
            mses = np.array([s[0].mse for s in scored])
            best_row = scored[best][0]
            rows.append(
                replace(
                    best_row,
                    mse=float(np.mean(mses)),
                    fpe=float(np.mean([s[0].fpe for s in scored])),
                    nmse=float(np.mean([s[0].nmse for s in scored])),
                    nmse_raw=float(np.mean([s[0].nmse_raw for s in scored])),
                    runs=runs,
                    std_mse=float(np.std(mses, ddof=1)) if runs > 1 else 0.0,
                )
            )
            estimated[CFPSO] = scored[best][1]
            best_trace = fits[best].trace
            run_rss = tuple(fit.objective_value for fit in fits)
            run_traces = tuple(fit.trace for fit in fits)
        except (ArswarmError, ValueError) as exc:
            rows.append(_failed(CFPSO, exc))

    baseline = next((r for r in rows if r.method == "LS" and r.ok), None)
    if baseline is not None:
        rows = [
            replace(r, emp_mse_pct=emp(baseline.mse, r.mse), emp_fpe_pct=emp(baseline.fpe, r.fpe)) if r.ok else r
            for r in rows
        ]
    rows.sort(key=lambda r: METHODS.index(r.method) if r.method in METHODS else len(METHODS))
    return ComparisonReport(
        rows=rows,
        order=order,
        mode=mode,
        span_length=x.shape[0] - order,
        actual=x[order:].copy(),
        estimated=estimated,
        best_trace=best_trace,
        run_rss=run_rss,
        run_traces=run_traces,
    )
