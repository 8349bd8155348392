"""
Forecasting and plot data
=========================

Free-run forecasts from a swarm-fitted model, plus the convergence trace.
Plots are drawn only if matplotlib is installed.
"""

import numpy as np

from arswarm import PsoConfig, fit_ar_cfpso, forecast
from arswarm.datasets import load_ar2_fixture

x = load_ar2_fixture()
fit = fit_ar_cfpso(x, 2, PsoConfig(dimension=2, rng_seed=0))
print("coefficients:", np.round(fit.model.coefficients, 4), "after", fit.iterations_used, "iterations")
print("next 8 samples:", np.round(forecast(fit.model, x, 8), 3))

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots()
    ax.semilogy(np.array(fit.trace) - min(fit.trace) + 1e-9)
    ax.set_xlabel("iteration")
    ax.set_ylabel("gbest RSS - final")
    fig.savefig("convergence.png", dpi=100)
    print("wrote convergence.png")
