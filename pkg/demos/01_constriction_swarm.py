"""
Constriction-factor swarms on benchmark functions
=================================================

The constriction coefficient k scales the whole velocity update. For the
usual c1 = c2 = 2.05 it is about 0.7298. Here both velocity rules run on a
sphere and a Rastrigin function.
"""

import numpy as np

from arswarm import PsoConfig, VelocityRule, constriction_factor, optimize

print("k(2.05, 2.05) =", round(constriction_factor(2.05, 2.05), 4))
print("k(3.0, 3.0)   =", round(constriction_factor(3.0, 3.0), 5))


def sphere(x):
    return float(np.dot(x, x))


def rastrigin(x):
    return float(10 * x.size + np.sum(x * x - 10 * np.cos(2 * np.pi * x)))


# %%
# Same seeds, two velocity rules. The inertia rule uses c1 = c2 = 2 with w = 0.7.
for name, fn, bound in (("sphere", sphere, 10.0), ("rastrigin", rastrigin, 5.12)):
    for rule in VelocityRule:
        kw = dict(c1=2.0, c2=2.0) if rule is VelocityRule.INERTIA_WEIGHT else {}
        best = [
            optimize(PsoConfig(dimension=5, lower=-bound, upper=bound, rng_seed=s,
                               velocity_rule=rule, **kw), fn).best_value
            for s in range(20)
        ]
        print(f"{name:>9} {rule.value:>12}: median best {np.median(best):.3e}")

# %%
# The global-best trace never increases.
result = optimize(PsoConfig(dimension=5, lower=-10, upper=10, rng_seed=0), sphere)
print("iterations:", result.iterations, "termination:", result.termination.value)
print("trace head:", np.round(result.trace[:6], 3))
