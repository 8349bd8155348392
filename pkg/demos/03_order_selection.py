"""
Choosing the lag order with AIC
===============================

Sweep orders 1..10 and keep the minimum of n ln(sigma_hat) + 2M.
"""

import numpy as np

from arswarm import ARModel, select_order, simulate_ar

x = simulate_ar(ARModel(2, [0.6, -0.3]), 2048, seed=3)
curve = select_order(x, 10)
for order, value in curve.entries:
    marker = "  <-" if order == curve.chosen_order else ""
    print(f"order {order:2d}  AIC {value:10.3f}{marker}")

# %%
# Over many realizations the true order wins most of the time.
chosen = [select_order(simulate_ar(ARModel(2, [0.6, -0.3]), 2048, seed=s), 10).chosen_order for s in range(50)]
print("order histogram:", dict(zip(*np.unique(chosen, return_counts=True))))

# %%
# The variance form of sigma_hat overfits more often.
chosen = [select_order(simulate_ar(ARModel(2, [0.6, -0.3]), 2048, seed=s), 10, scale="variance").chosen_order
          for s in range(50)]
print("variance form:", dict(zip(*np.unique(chosen, return_counts=True))))
