"""
Five-method comparison table
============================

Fits LS, FB, YW, GL and the constriction swarm on the same data and
tabulates MSE, FPE, NMSE and the error reduction relative to LS. With
one-step prediction LS is the exact optimum, so the swarm can at best tie
it. In free-run mode the swarm minimizes a different, non-convex objective
and the table shifts accordingly.
"""

from arswarm import PredictionMode, PsoConfig, build_comparison
from arswarm.datasets import load_ar2_fixture

x = load_ar2_fixture()


def show(report):
    print(f"mode={report.mode.value}, span={report.span_length}")
    print(f"{'Method':<8}{'MSE':>10}{'EMP_MSE':>10}{'FPE':>10}{'EMP_FPE':>10}{'NMSE':>8}")
    for r in report.rows:
        print(f"{r.method:<8}{r.mse:>10.4f}{r.emp_mse_pct:>+10.3f}{r.fpe:>10.4f}{r.emp_fpe_pct:>+10.3f}{r.nmse:>8.4f}")


# %%
show(build_comparison(x, 2, runs=30))

# %%
show(build_comparison(x, 2, mode=PredictionMode.FREE_RUN, pso_config=PsoConfig(dimension=2), runs=10))
