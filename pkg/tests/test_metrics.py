from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from arswarm.errors import ConstantActual, DegenerateRatio, EmptyInput, LengthMismatch, NonPositiveBaseline
from arswarm.metrics import CFPSO, build_comparison, emp, fpe, mse, nmse, nmse_raw
from arswarm.pso import PsoConfig
from arswarm.series import ARModel, PredictionMode, residual_sum_of_squares, simulate_ar

finite = st.integers(-10**6, 10**6).map(lambda i: i / 1000.0)


def test_mse_examples():
    assert mse([1, 2, 3], [1, 2, 3]) == 0.0
    assert mse([1, 2, 5], [1, 2, 3]) == pytest.approx(4 / 3)
    with pytest.raises(LengthMismatch):
        mse([1], [1, 2])
    with pytest.raises(EmptyInput):
        mse([], [])


@given(st.integers(1, 40).flatmap(lambda n: st.tuples(arrays(float, n, elements=finite), arrays(float, n, elements=finite))))
def test_mse_times_n_is_rss(pair):
    a, b = pair
    assert mse(a, b) * len(a) == pytest.approx(residual_sum_of_squares(a, b), rel=1e-15, abs=0)


def test_fpe_examples():
    assert fpe(0.5, 0, 100) == 0.5
    oracle = float(Fraction(1, 100) * Fraction(102, 100) / Fraction(98, 100))
    assert fpe(0.01, 2, 100) == pytest.approx(0.0104082, abs=1e-7)
    assert fpe(0.01, 2, 100) == pytest.approx(oracle, rel=1e-15)
    with pytest.raises(DegenerateRatio):
        fpe(1.0, 100, 100)


def test_nmse_examples():
    y = np.array([1.0, 4.0, 2.0, 8.0, 5.0])
    assert nmse(y, y) == 1.0
    assert nmse_raw(y, y) == 0.0
    n = len(y)
    assert nmse(y, np.full(n, y.mean())) == pytest.approx(1 - (n - 1) / n, abs=1e-12)
    with pytest.raises(ConstantActual):
        nmse([2.0, 2.0, 2.0], [1.0, 2.0, 3.0])


@given(st.integers(2, 40).flatmap(lambda n: st.tuples(arrays(float, n, elements=finite), arrays(float, n, elements=finite))), finite)
def test_nmse_bounded_and_shift_invariant(pair, c):
    a, b = pair
    if np.ptp(a) == 0:
        return
    score = nmse(a, b)
    assert score <= 1.0
    assert nmse(a + c, b + c) == pytest.approx(score, rel=1e-6, abs=1e-6)


def test_emp_paper_rows():
    assert emp(46.7133, 45.612) == pytest.approx(2.357, abs=0.01)
    assert emp(17.17, 10.22) == pytest.approx(40.48, abs=0.5)
    for printed, value in ((-0.004, 46.7153), (-0.066, 46.7441)):
        assert emp(46.7133, value) == pytest.approx(printed, abs=0.01)
    assert emp(5.0, 5.0) == 0.0
    with pytest.raises(NonPositiveBaseline):
        emp(0.0, 1.0)


@given(st.floats(1e-3, 1e3), st.floats(-1e3, 1e3))
def test_emp_antisymmetric(a, b):
    assert emp(a, b) == pytest.approx(-emp(a, 2 * a - b), rel=1e-9, abs=1e-9)


def test_comparison_protocol(ar2_fixture):
    report = build_comparison(ar2_fixture, 2, runs=3)
    assert [r.method for r in report.rows] == ["LS", "FB", "YW", "GL", CFPSO]
    ls = report.row("LS")
    assert ls.emp_mse_pct == 0.0 and ls.emp_fpe_pct == 0.0
    assert report.span_length == len(ar2_fixture) - 2
    for name, est in report.estimated.items():
        assert est.shape == (report.span_length,)
    for r in report.rows:
        assert r.fpe == pytest.approx(fpe(r.mse, 2, report.span_length), rel=1e-12)
    pso = report.row(CFPSO)
    assert pso.runs == 3
    assert len(report.run_rss) == 3
    assert pso.mse == pytest.approx(np.mean(report.run_rss) / report.span_length)


def test_comparison_ls_seeding_never_worse(ar2_fixture):
    report = build_comparison(ar2_fixture, 2, runs=4, ls_seeding=True)
    assert report.row(CFPSO).mse <= report.row("LS").mse
    assert max(report.run_rss) <= report.row("LS").mse * report.span_length


def test_comparison_high_snr_nmse():
    # AR(2) phi=[1.5, -0.6]: stationary variance
    # (1 - phi2) / ((1 + phi2)((1 - phi2)^2 - phi1^2)) = 12.9x the innovation variance
    x = simulate_ar(ARModel(2, [1.5, -0.6]), 8192, seed=12)
    assert x.values.var() >= 10.0
    report = build_comparison(x, 2, runs=3)
    assert all(r.nmse >= 0.9 for r in report.rows)


def test_comparison_records_failures_without_aborting():
    x = np.array([1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0])
    report = build_comparison(x, 2, methods=["LS", "YW", "GL"], runs=1)
    assert all(not r.ok for r in report.rows)
    assert report.row("LS").error.startswith("SingularDesign")


def test_comparison_without_ls_has_no_emp(ar2_fixture):
    report = build_comparison(ar2_fixture, 2, methods=["YW", "GL"])
    assert all(r.emp_mse_pct is None for r in report.rows)


def test_comparison_free_run_mode(ar2_fixture):
    cfg = PsoConfig(dimension=2, rng_seed=5)
    report = build_comparison(ar2_fixture, 2, mode=PredictionMode.FREE_RUN, pso_config=cfg, runs=2)
    assert report.mode is PredictionMode.FREE_RUN
    assert all(r.ok for r in report.rows)
