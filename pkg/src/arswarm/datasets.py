"""Bundled synthetic fixtures.

The AR(2) fixture is ``simulate_ar`` output for phi = [0.6, -0.3], C = 0,
unit noise, 4096 samples, seed 2012 and 200 warm-up samples, stored with
round-trip precision.
"""
from importlib import resources

from .data_io import load_csv, write_series_csv
from .series import ARModel, simulate_ar

AR2_COEFFICIENTS = (0.6, -0.3)
AR2_LENGTH = 4096
AR2_SEED = 2012


def ar2_model() -> ARModel:
    return ARModel(2, AR2_COEFFICIENTS, 0.0, 1.0)


def generate_ar2(seed=AR2_SEED, n=AR2_LENGTH):
    return simulate_ar(ar2_model(), n, noise_std=1.0, seed=seed, warmup=200)


def ar2_fixture_path() -> str:
    return str(resources.files("arswarm") / "data" / "ar2_fixture.csv")


def load_ar2_fixture():
    return load_csv(ar2_fixture_path())


if __name__ == "__main__":
    write_series_csv(generate_ar2().values, ar2_fixture_path())
