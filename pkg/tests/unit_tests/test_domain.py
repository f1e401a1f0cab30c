import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from src.exceptions import (
    ConfigurationException,
    ContractViolationException,
    DimensionMismatchException,
    MonteCarloSeedException,
    WindowOutOfRangeException,
)
from src.models.batches import SampleBatch
from src.models.empirical import EmpiricalLoss, pre_average
from src.models.families import GaussianMeanModel, NewsvendorModel, QuantileRegressionModel
from src.models.feasible_sets import Box, EuclideanBall, Interval, project
from src.models.population import MonteCarloPopulationLoss
from src.services.problems import make_environment, sample_linear_opt

coordinates = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize(
    "feasible_set, x, expected",
    [
        (EuclideanBall.centered(2, 1.0), [0.2, 0.1], [0.2, 0.1]),
        (EuclideanBall.centered(2, 1.0), [3.0, 4.0], [0.6, 0.8]),
        (Box(np.zeros(2), np.ones(2)), [-2.0, 0.5], [0.0, 0.5]),
        (Interval.between(0.0, 10.0), [12.0], [10.0]),
    ],
)
def test_project(feasible_set, x, expected):
    assert np.allclose(project(feasible_set, x), expected)


def test_project_dimension_mismatch():
    with pytest.raises(DimensionMismatchException):
        EuclideanBall.centered(2, 1.0).project([1.0, 2.0, 3.0])


def test_interval_is_one_dimensional():
    with pytest.raises(ConfigurationException):
        Interval(np.zeros(2), np.ones(2))


def test_box_bounds_order():
    with pytest.raises(ConfigurationException):
        Box(np.ones(2), np.zeros(2))


@hypothesis_settings(max_examples=200)
@given(x=st.lists(coordinates, min_size=3, max_size=3), y=st.lists(coordinates, min_size=3, max_size=3))
def test_projection_is_idempotent_and_nonexpansive(x, y):
    for feasible_set in (EuclideanBall.centered(3, 1.5), Box.cube(3, 0.5)):
        px, py = feasible_set.project(x), feasible_set.project(y)
        assert feasible_set.contains(px, atol=1e-9)
        assert np.allclose(feasible_set.project(px), px)
        assert np.linalg.norm(px - py) <= np.linalg.norm(np.subtract(x, y)) + 1e-9


def test_sample_batch_contract():
    with pytest.raises(ContractViolationException):
        SampleBatch(np.zeros((1, 1)), period=0)
    with pytest.raises(ContractViolationException):
        SampleBatch(np.zeros((0, 1)), period=1)
    batch = SampleBatch(np.arange(3.0), period=2)
    assert batch.size == 3
    assert batch.samples.shape == (3, 1)


def test_pre_average_single_window(batches_of):
    model = GaussianMeanModel(1)
    batches = batches_of([0.0, 1.0, 3.0], B=2)
    loss = pre_average(batches, n=4, k=1, model=model)

    for theta in (-1.0, 0.0, 2.5):
        assert loss.evaluate([theta]) == pytest.approx(0.5 * (theta - 3.0) ** 2)


def test_pre_average_minimizer_is_mean_of_batch_means(batches_of):
    model = GaussianMeanModel(2)
    batches = batches_of([[1.0, 0.0], [0.0, -1.0]], B=3)
    loss = pre_average(batches, n=3, k=2, model=model)

    assert np.allclose(loss.stacked.mean(axis=0), [0.5, -0.5])
    assert np.allclose(loss.subgradient([0.5, -0.5]), 0.0)


def test_pre_average_newsvendor_check_loss(batches_of):
    loss = pre_average(batches_of([0.0, 1.0, 5.0]), n=4, k=3, model=NewsvendorModel(c1=1, c2=1))

    assert loss.evaluate([1.0]) == pytest.approx(5 / 3)


@pytest.mark.parametrize("n, k", [(4, 0), (4, 4), (2, 2)])
def test_pre_average_window_out_of_range(batches_of, n, k):
    with pytest.raises(WindowOutOfRangeException):
        pre_average(batches_of([0.0, 1.0, 2.0]), n=n, k=k, model=GaussianMeanModel(1))


def test_pre_average_missing_periods(batches_of):
    batches = batches_of([0.0, 1.0, 2.0])
    with pytest.raises(WindowOutOfRangeException):
        pre_average(batches[1:], n=4, k=3, model=GaussianMeanModel(1))


def test_empirical_loss_is_linear_in_windows(rng):
    model = QuantileRegressionModel(2, nu=0.3)
    batches = tuple(
        SampleBatch(model.sample(rng, 4, np.array([0.2, -0.1])), period) for period in range(1, 6)
    )
    loss = EmpiricalLoss(model, batches)
    older, newer = EmpiricalLoss(model, batches[:2]), loss.suffix(3)

    for theta in rng.normal(size=(5, 2)):
        combined = (2 * older.evaluate(theta) + 3 * newer.evaluate(theta)) / 5
        assert loss.evaluate(theta) == pytest.approx(combined)
        assert loss.period_means(theta).mean() == pytest.approx(loss.evaluate(theta))


def test_gaussian_population_excess():
    environment = make_environment("gaussian-mean", [[0.0, 0.0]], B=1, seed=0)

    assert environment.excess(1, [1.0, 0.0]).value == pytest.approx(0.5)
    assert environment.excess(1, [0.0, 0.0]).value == pytest.approx(0.0)


def test_linear_opt_population_excess(rng):
    environment = make_environment("linear-opt", [[0.5]], B=1, seed=0)

    assert environment.excess(1, [0.0]).value == pytest.approx(1.0)
    assert environment.excess(1, [-1.0]).value == pytest.approx(0.0)
    assert np.array_equal(sample_linear_opt([0.5], 1, rng), [1.0])


def test_monte_carlo_requires_seed(rng):
    model = QuantileRegressionModel(1)
    samples = model.sample(rng, 100, np.array([0.0]))
    population = MonteCarloPopulationLoss(model, samples, [0.0], seed=None)

    with pytest.raises(MonteCarloSeedException):
        population.excess(np.array([0.5]))


def test_monte_carlo_excess_at_minimizer_is_zero():
    environment = make_environment(
        "quantile-regression", [[0.3]], B=1, seed=3, mc_samples=5000, nu=0.5
    )
    estimate = environment.excess(1, environment.population(1).minimizer)

    assert estimate.value == pytest.approx(0.0)
    assert estimate.standard_error == pytest.approx(0.0)
