"""
Four classical AR estimators
============================

Least squares, forward-backward, Yule-Walker and the geometric lattice,
fitted to a synthetic AR(2) process with phi = [0.6, -0.3].
"""

import numpy as np

from arswarm import ARModel, EstimatorKind, fit_estimator, lattice_reflection_coefficients, one_step_rss, simulate_ar

x = simulate_ar(ARModel(2, [0.6, -0.3], intercept=5.0), 4096, noise_std=1.0, seed=1)
print(f"{len(x)} samples, mean {x.values.mean():.3f}")

# %%
for kind in EstimatorKind:
    model = fit_estimator(kind, x, 2)
    print(f"{kind.value}: phi = {np.round(model.coefficients, 4)}, C = {model.intercept:.4f}, "
          f"one-step RSS = {one_step_rss(model, x):.4f}, stable = {model.is_stable()}")

# %%
# Reflection coefficients of the geometric lattice stay inside [-1, 1].
print("lattice reflection coefficients:", np.round(lattice_reflection_coefficients(x, 5), 4))
