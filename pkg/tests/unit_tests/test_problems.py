import numpy as np
import pytest

from src.exceptions import ConfigurationException
from src.models.families import NewsvendorModel
from src.models.types import Regularity
from src.services.problems import (
    ProblemFamily,
    make_environment,
    make_model,
    newsvendor_population,
    sample_linear_opt,
)


@pytest.mark.parametrize(
    "family, regularity",
    [
        ("gaussian-mean", Regularity.STRONGLY_CONVEX),
        ("linear-regression", Regularity.STRONGLY_CONVEX),
        ("logistic-regression", Regularity.STRONGLY_CONVEX),
        ("linear-opt", Regularity.LIPSCHITZ),
        ("quantile-regression", Regularity.LIPSCHITZ),
        ("newsvendor", Regularity.LIPSCHITZ),
        ("svm", Regularity.LIPSCHITZ),
    ],
)
def test_make_model(family, regularity):
    model = make_model(family, d=2 if family != "newsvendor" else 1)

    assert model.name == ProblemFamily(family)
    assert model.regularity == regularity


@pytest.mark.parametrize(
    "family, path, B, params",
    [
        ("gaussian-mean", [[1.5]], 1, {}),
        ("linear-opt", [[0.6]], 1, {}),
        ("newsvendor", [[-1.0]], 1, {}),
        ("gaussian-mean", [[0.0]], 0, {}),
        ("quantile-regression", [[0.0]], 1, {"nu": 1.0}),
    ],
)
def test_make_environment_rejects_parameters(family, path, B, params):
    with pytest.raises(ConfigurationException):
        make_environment(family, path, B=B, seed=0, **params)


def test_make_model_rejects_dimension():
    with pytest.raises(ConfigurationException):
        make_model("gaussian-mean", d=0)


def test_stream_is_reproducible():
    path = np.linspace(0, 0.5, 10)
    first = make_environment("logistic-regression", path, B=4, seed=5, replication=1)
    second = make_environment("logistic-regression", path, B=4, seed=5, replication=1)
    other = make_environment("logistic-regression", path, B=4, seed=5, replication=2)

    for a, b, c in zip(first.stream(), second.stream(), other.stream()):
        assert np.array_equal(a.samples, b.samples)
        assert not np.array_equal(a.samples, c.samples)
    assert np.array_equal(first.batch(7).samples, first.stream()[6].samples)


def test_newsvendor_population_matches_sampling(rng):
    model = NewsvendorModel(c1=1.0, c2=3.0, sigma0=1.0)
    population = newsvendor_population(model, mean=5.0)
    demand = rng.normal(5.0, 1.0, size=(400_000, 1))

    for theta in (3.0, 5.0, 6.5):
        sampled = float(np.mean(model.losses(np.array([theta]), demand)))
        assert population.value([theta]) == pytest.approx(sampled, abs=0.01)
    assert population.excess(population.minimizer).value == pytest.approx(0.0)
    assert population.value([5.5]) > population.minimum


def test_linear_opt_sample_mean(rng):
    mu = np.array([0.5, -0.25, 0.0, 0.1])
    samples = np.vstack([sample_linear_opt(mu, 4, rng) for _ in range(40_000)])

    # E z = 2μ/√d
    assert np.allclose(samples.mean(axis=0), mu, atol=0.03)
    assert np.all(np.count_nonzero(samples, axis=1) == 1)


def test_linear_opt_sample_rejects_mean():
    with pytest.raises(ConfigurationException):
        sample_linear_opt([0.7], 1, np.random.default_rng(0))


def test_linear_regression_excess_is_quadratic():
    environment = make_environment("linear-regression", [[0.2, -0.1]], B=1, seed=0)

    assert environment.excess(1, [0.2, -0.1]).value == pytest.approx(0.0)
    assert environment.excess(1, [1.2, -0.1]).value == pytest.approx(0.5)


def test_logistic_excess_is_nonnegative():
    environment = make_environment(
        "logistic-regression", [[0.3, 0.0]], B=1, seed=4, mc_samples=20_000
    )

    assert environment.excess(1, [0.3, 0.0]).value == pytest.approx(0.0)
    assert environment.excess(1, [-0.8, 0.5]).value > 0
