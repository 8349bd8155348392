import csv
import json

import numpy as np
import pytest

from arswarm.cli import main
from arswarm.data_io import load_csv
from arswarm.datasets import ar2_fixture_path, generate_ar2, load_ar2_fixture
from arswarm.errors import ColumnNotFound, EmptySeries, NonFiniteSample, ParseError, SeriesFileNotFound
from arswarm.series import ARModel, simulate_ar


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


# -- load_csv -------------------------------------------------------------------

def test_load_single_column(tmp_path):
    ts = load_csv(write(tmp_path, "a.csv", "7.5\n8.1\n6.9\n"))
    np.testing.assert_array_equal(ts.values, [7.5, 8.1, 6.9])


def test_load_by_header_name(tmp_path):
    path = write(tmp_path, "b.csv", "time,mw\n00:00,7.5\n00:05,8.25\n\n00:10,1e1\n")
    ts = load_csv(path, "mw")
    np.testing.assert_array_equal(ts.values, [7.5, 8.25, 10.0])
    np.testing.assert_array_equal(load_csv(path, 1).values, ts.values)


def test_load_reports_parse_line(tmp_path):
    with pytest.raises(ParseError) as info:
        load_csv(write(tmp_path, "c.csv", "1.0\n2.0\nabc\n"))
    assert info.value.line == 3


def test_load_header_autodetect_counts_lines(tmp_path):
    with pytest.raises(ParseError) as info:
        load_csv(write(tmp_path, "d.csv", "value\n1\n\n2,5\nx\n"))
    assert info.value.line == 5


@pytest.mark.parametrize(
    "text, column, error",
    [
        ("a,b\n1,2\n", "c", ColumnNotFound),
        ("1,2\n3\n", 1, ColumnNotFound),
        ("\n\n", 0, EmptySeries),
        ("mw\n", "mw", EmptySeries),
        ("1\nnan\n", 0, NonFiniteSample),
    ],
)
def test_load_errors(tmp_path, text, column, error):
    with pytest.raises(error):
        load_csv(write(tmp_path, "e.csv", text), column)


def test_load_missing_file(tmp_path):
    with pytest.raises(SeriesFileNotFound):
        load_csv(str(tmp_path / "nope.csv"))


def test_bundled_fixture_matches_generator():
    assert load_ar2_fixture().values.tobytes() == generate_ar2().values.tobytes()


# -- simulate -------------------------------------------------------------------

def test_simulate_deterministic_files(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        assert main(["simulate", "--coefficients", "0.6,-0.3", "-n", "2048", "--seed", "7", "-o", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(a.read_text().splitlines()) == 2048


def test_simulate_round_trip_exact(tmp_path):
    out = tmp_path / "s.csv"
    main(["simulate", "--coefficients", "0.6,-0.3", "-n", "500", "--seed", "3", "-o", str(out)])
    expected = simulate_ar(ARModel(2, [0.6, -0.3], 0.0), 500, 1.0, 3, 200)
    assert load_csv(str(out)).values.tobytes() == expected.values.tobytes()


def test_simulate_unit_root_constant(tmp_path):
    out = tmp_path / "u.csv"
    main(["simulate", "--coefficients", "1", "--noise-std", "0", "--init", "1", "-n", "6", "-o", str(out)])
    np.testing.assert_array_equal(load_csv(str(out)).values, np.ones(6))


def test_simulate_bad_spec(tmp_path):
    assert main(["simulate", "--coefficients", "0.5", "--init", "1,2", "-o", str(tmp_path / "x.csv")]) == 1
    assert main(["simulate", "-n", "0", "-o", str(tmp_path / "x.csv")]) == 1


# -- select-order ---------------------------------------------------------------

def test_select_order_fixture(tmp_path, capsys):
    assert main(["select-order", "--rho-max", "10", "--output-dir", str(tmp_path)]) == 0
    assert "YW: chosen order 2" in capsys.readouterr().out
    lines = (tmp_path / "aic_curve.csv").read_text().splitlines()
    assert lines[0] == "order,aic" and len(lines) == 11


def test_select_order_majority_of_seeds(tmp_path, capsys):
    chosen = []
    for seed in range(9):
        path = tmp_path / f"s{seed}.csv"
        main(["simulate", "-n", "2048", "--seed", str(seed), "-o", str(path)])
        capsys.readouterr()
        main(["select-order", str(path), "--output-dir", str(tmp_path)])
        chosen.append(capsys.readouterr().out.strip().endswith("order 2"))
    assert sum(chosen) > len(chosen) / 2


def test_select_order_multiple_estimators(tmp_path, capsys):
    main(["select-order", "--rho-max", "4", "--estimator", "LS,GL", "--output-dir", str(tmp_path)])
    out = capsys.readouterr().out
    assert "LS: chosen order" in out and "GL: chosen order" in out
    header = (tmp_path / "aic_curve.csv").read_text().splitlines()[0]
    assert header == "order,aic_LS,aic_GL"


def test_select_order_rejects_zero_rho_max(tmp_path):
    assert main(["select-order", "--rho-max", "0", "--output-dir", str(tmp_path)]) == 1


# -- compare ---------------------------------------------------------------------

def test_compare_default_artifacts(tmp_path, capsys):
    out = tmp_path / "run"
    assert main(["compare", "--runs", "4", "--output-dir", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    assert [r["method"] for r in report["rows"]] == ["LS", "FB", "YW", "GL", "CF-PSO"]
    ls = report["rows"][0]
    assert ls["emp_mse_pct"] == 0.0 and ls["emp_fpe_pct"] == 0.0
    for key in ("method", "mse", "fpe", "nmse", "emp_mse_pct", "emp_fpe_pct", "runs", "std_mse"):
        assert key in ls
    assert report["rows"][-1]["runs"] == 4

    with open(out / "report.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0][:6] == ["Method", "MSE", "EMP_MSE", "FPE", "EMP_FPE", "NMSE"]
    assert len(rows) == 6

    trace = (out / "convergence_trace.csv").read_text().splitlines()
    assert trace[0] == "iteration,gbest_rss"
    values = [float(line.split(",")[1]) for line in trace[1:]]
    assert all(b <= a for a, b in zip(values, values[1:]))

    est = (out / "estimated_vs_actual.csv").read_text().splitlines()
    assert est[0] == "t,actual,LS,FB,YW,GL,CF-PSO"
    assert len(est) == 1 + report["span_length"]

    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["seeds"] == [0, 1, 2, 3]
    assert {"numpy", "scipy", "python", "arswarm"} <= set(manifest["versions"])
    assert "CF-PSO" in capsys.readouterr().out


def test_compare_ls_seeding(tmp_path):
    out = tmp_path / "seeded"
    main(["compare", "--order", "2", "--runs", "3", "--ls-seeding", "--output-dir", str(out)])
    rows = {r["method"]: r for r in json.loads((out / "report.json").read_text())["rows"]}
    assert rows["CF-PSO"]["mse"] <= rows["LS"]["mse"]


def test_compare_manifest_replay_is_byte_identical(tmp_path):
    first, second = tmp_path / "one", tmp_path / "two"
    main(["compare", "--runs", "3", "--seed", "11", "--output-dir", str(first)])
    assert main(["compare", "--config", str(first / "manifest.json"), "--output-dir", str(second)]) == 0
    assert (first / "report.json").read_bytes() == (second / "report.json").read_bytes()
    assert (first / "convergence_trace.csv").read_bytes() == (second / "convergence_trace.csv").read_bytes()


def test_compare_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"order": 3, "runs": 2, "methods": "LS,CF-PSO", "formats": "json"}))
    out = tmp_path / "cfgrun"
    assert main(["compare", "--config", str(cfg), "--output-dir", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["order"] == 3
    assert [r["method"] for r in report["rows"]] == ["LS", "CF-PSO"]
    assert not (out / "report.csv").exists()


def test_compare_unknown_config_key(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"swarm": 3}))
    assert main(["compare", "--config", str(cfg)]) == 1


def test_compare_free_run_mode(tmp_path):
    out = tmp_path / "fr"
    assert main(["compare", "--order", "2", "--mode", "free-run", "--runs", "2", "--output-dir", str(out)]) == 0
    assert json.loads((out / "report.json").read_text())["mode"] == "free-run"


def test_compare_failed_rows_are_recorded(tmp_path):
    path = write(tmp_path, "flat.csv", "\n".join(["4.0"] * 40) + "\n")
    out = tmp_path / "flat"
    code = main(["compare", path, "--order", "2", "--runs", "1", "--methods", "LS,YW", "--output-dir", str(out)])
    assert code == 3
    rows = json.loads((out / "report.json").read_text())["rows"]
    assert all(r["error"] for r in rows) and all(r["mse"] is None for r in rows)


@pytest.mark.parametrize(
    "argv, code",
    [
        (["compare", "--rho-max", "0"], 1),
        (["compare", "--order", "0"], 1),
        (["compare", "--c1", "2", "--c2", "2", "--order", "2"], 1),
        (["compare", "--bounds", "1,2,3"], 1),
        (["compare", "/definitely/missing.csv"], 2),
        (["compare", "--order", "banana"], 1),
        (["frobnicate"], 1),
    ],
)
def test_exit_codes(tmp_path, argv, code):
    if argv[0] == "compare":
        argv = argv + ["--output-dir", str(tmp_path)]
    assert main(argv) == code


def test_exit_code_for_data_parse_error(tmp_path):
    path = write(tmp_path, "bad.csv", "1\n2\noops\n")
    assert main(["select-order", path, "--output-dir", str(tmp_path)]) == 2


# -- forecast ---------------------------------------------------------------------

def test_forecast_given_model(tmp_path, capsys):
    path = write(tmp_path, "f.csv", "1\n3\n8\n")
    assert main(["forecast", path, "--coefficients", "0.5", "--horizon", "1"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["step,forecast", "1,4"]


def test_forecast_memoryless_model(tmp_path):
    path = write(tmp_path, "f.csv", "1\n3\n8\n")
    out = tmp_path / "fc.csv"
    main(["forecast", path, "--coefficients", "0", "--intercept", "2.5", "--horizon", "3", "-o", str(out)])
    rows = out.read_text().splitlines()
    assert rows == ["step,forecast", "1,2.5", "2,2.5", "3,2.5"]


@pytest.mark.parametrize("method", ["LS", "GL", "CF-PSO"])
def test_forecast_fitted(tmp_path, method):
    out = tmp_path / "fc.csv"
    assert main(["forecast", "--method", method, "--order", "2", "--horizon", "5", "-o", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 6


def test_forecast_zero_horizon():
    assert main(["forecast", "--horizon", "0"]) == 1
