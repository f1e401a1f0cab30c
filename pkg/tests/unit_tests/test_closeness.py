import math

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from src.exceptions import ContractViolationException, GridMismatchException
from src.models.types import Regularity
from src.services.closeness import (
    ErrorProfile,
    GridFunction,
    closeness_from_sufficient,
    compute_kbar,
    grid_range,
    is_close,
    min_delta,
    pairwise_sup_distances,
    quasi_stationarity_delta,
    sublevel_inclusion_holds,
    sublevel_set,
)
from src.services.saws import ThresholdSchedule, threshold

GRID = np.linspace(-1, 1, 4001)
SIZE = 24
values = st.lists(st.floats(-5, 5, allow_nan=False), min_size=SIZE, max_size=SIZE)
epsilons = st.floats(0, 2)


def on_grid(*arrays):
    grid = np.arange(SIZE, dtype=np.float64)
    return [GridFunction(grid, np.asarray(array)) for array in arrays]


def tolerance(delta: float) -> float:
    return delta * (1 + 1e-9) + 1e-9


def test_grid_function_contract():
    with pytest.raises(ContractViolationException):
        GridFunction(np.array([]), np.array([]))
    with pytest.raises(ContractViolationException):
        GridFunction(np.arange(3.0), np.array([0.0, np.nan, 1.0]))
    with pytest.raises(ContractViolationException):
        GridFunction(np.arange(3.0), np.arange(2.0))


def test_grid_mismatch():
    f = GridFunction(np.arange(3.0), np.zeros(3))
    g = GridFunction(np.arange(1.0, 4.0), np.zeros(3))
    with pytest.raises(GridMismatchException):
        min_delta(f, g, 0.0)


def test_absolute_value_example():
    f = GridFunction.from_callable(GRID, lambda x: np.abs(x[:, 0] - 0.3))
    g = GridFunction.from_callable(GRID, lambda x: 2 * np.abs(x[:, 0] - 0.1))

    assert min_delta(f, g, math.log(2)) <= 0.2 + 1e-9
    assert is_close(f, g, math.log(2), 0.2 + 1e-9)


@pytest.mark.parametrize("epsilon", [0.0, 0.5, 3.0])
def test_constant_shift_is_free(epsilon):
    f = GridFunction.from_callable(GRID, lambda x: x[:, 0] ** 2)

    assert min_delta(f, f.shifted(7.0), epsilon) == pytest.approx(0.0, abs=1e-12)


def test_reflexivity():
    (f,) = on_grid(np.linspace(0, 1, SIZE) ** 2)

    assert is_close(f, f, 0.0, 0.0)
    assert min_delta(f, f, 0.0) == 0.0


@hypothesis_settings(max_examples=300)
@given(a=values, b=values, epsilon=epsilons)
def test_min_delta_is_tight_and_symmetric(a, b, epsilon):
    f, g = on_grid(a, b)
    delta = min_delta(f, g, epsilon)

    assert delta >= 0
    assert delta == min_delta(g, f, epsilon)
    assert is_close(f, g, epsilon, tolerance(delta))
    if delta > 1e-6:
        assert not is_close(f, g, epsilon, delta / 2)


@hypothesis_settings(max_examples=300)
@given(a=values, b=values, epsilon=epsilons, shift=st.floats(-100, 100))
def test_shift_invariance(a, b, epsilon, shift):
    f, g = on_grid(a, b)

    assert min_delta(f.shifted(shift), g, epsilon) == pytest.approx(
        min_delta(f, g, epsilon), abs=1e-9
    )


@hypothesis_settings(max_examples=300)
@given(a=values, b=values, epsilon=epsilons, extra=st.floats(0, 1), more=st.floats(0, 2))
def test_monotonicity(a, b, epsilon, extra, more):
    f, g = on_grid(a, b)
    delta = tolerance(min_delta(f, g, epsilon))

    assert is_close(f, g, epsilon, delta + extra)
    assert is_close(f, g, epsilon + more, delta)


@hypothesis_settings(max_examples=300)
@given(a=values, b=values, c=values, e1=epsilons, e2=epsilons)
def test_transitivity(a, b, c, e1, e2):
    f, g, h = on_grid(a, b, c)
    d1, d2 = min_delta(f, g, e1), min_delta(g, h, e2)

    assert is_close(f, h, e1 + e2, tolerance(d1 + d2))


@hypothesis_settings(max_examples=200)
@given(
    a=values,
    family=st.lists(values, min_size=1, max_size=5),
    epsilon=epsilons,
)
def test_averaging(a, family, epsilon):
    (f,) = on_grid(a)
    members = on_grid(*family)
    delta = max(min_delta(f, g, epsilon) for g in members)
    (average,) = on_grid(np.mean([g.values for g in members], axis=0))

    assert is_close(f, average, epsilon, tolerance((math.exp(epsilon) + 1) * delta))


@hypothesis_settings(max_examples=300)
@given(a=values, b=values, epsilon=epsilons, scale=st.floats(0, 2))
def test_sublevel_inclusion_matches_closeness(a, b, epsilon, scale):
    f, g = on_grid(a, b)
    delta = scale * min_delta(f, g, epsilon)

    assert sublevel_inclusion_holds(f, g, epsilon, delta) == is_close(f, g, epsilon, delta)


def test_sublevel_step_example():
    f = GridFunction.from_callable(GRID, lambda x: x[:, 0] ** 2)
    g = GridFunction.from_callable(GRID, lambda x: x[:, 0] ** 2 + 0.5 * (x[:, 0] > 0))

    assert sublevel_inclusion_holds(f, g, 0.0, 0.9)
    assert not sublevel_inclusion_holds(f, g, 0.0, 0.4)


@pytest.mark.parametrize(
    "kind, params, epsilon, delta",
    [
        ("sup-norm", {"D0": 0.0}, 0.0, 0.0),
        ("sup-norm", {"D0": 0.1}, 0.0, 0.2),
        ("gradient-sup", {"D1": 0.1, "M": 2.0}, 0.0, 0.4),
        ("minimizers", {"rho": 1.0, "L": 1.0, "theta_f": [0.4], "theta_g": [0.0]}, math.log(2), 0.08),
        (
            "strongly-convex-gradient",
            {"D1": 0.1, "M": 1.0, "rho": 1.0, "L": 1.0, "r": 1.0},
            math.log(2),
            0.03,
        ),
    ],
)
def test_closeness_from_sufficient(kind, params, epsilon, delta):
    result = closeness_from_sufficient(kind, **params)

    assert result.epsilon == pytest.approx(epsilon)
    assert result.delta == pytest.approx(delta)


@pytest.mark.parametrize(
    "params",
    [
        {"kind": "sup-norm"},
        {"kind": "minimizers", "rho": 0.0, "L": 1.0, "theta_f": [0.0], "theta_g": [1.0]},
        {"kind": "minimizers", "rho": 2.0, "L": 1.0, "theta_f": [0.0], "theta_g": [1.0]},
    ],
)
def test_closeness_from_sufficient_contract(params):
    with pytest.raises(ContractViolationException):
        closeness_from_sufficient(**params)


def test_minimizers_condition_holds_for_quadratics():
    f = GridFunction.from_callable(GRID, lambda x: 0.5 * (x[:, 0] - 0.2) ** 2)
    g = GridFunction.from_callable(GRID, lambda x: 0.5 * (x[:, 0] + 0.2) ** 2)
    params = closeness_from_sufficient("minimizers", rho=1.0, L=1.0, theta_f=[0.2], theta_g=[-0.2])

    assert is_close(f, g, params.epsilon, params.delta + 1e-12)


def test_quasi_stationarity_delta():
    f, g, h = on_grid(np.zeros(SIZE), np.linspace(0, 1, SIZE), np.linspace(1, 0, SIZE))

    assert quasi_stationarity_delta([f, f, f], 0.5) == 0.0
    assert quasi_stationarity_delta([f, g], 0.3) == min_delta(f, g, 0.3)
    assert quasi_stationarity_delta([f, g, h], 0.0) == pytest.approx(1.0)
    assert grid_range([f, g, h]) == pytest.approx(1.0)


def test_pairwise_sup_distances():
    f, g = on_grid(np.zeros(SIZE), np.linspace(0, 1, SIZE))
    distances = pairwise_sup_distances([f, g, f])

    assert np.allclose(distances, distances.T)
    assert np.allclose(np.diag(distances), 0.0)
    assert distances[0, 1] == pytest.approx(1.0)


def parabola(center: float) -> GridFunction:
    return GridFunction.from_callable(GRID, lambda x: (x[:, 0] - center) ** 2)


def test_kbar_identical_sequence():
    populations = [parabola(0.0)] * 6

    assert compute_kbar(populations, 0.0, lambda k: 0.0) == 6


def test_kbar_after_far_shift():
    populations = [parabola(0.9), parabola(0.9), parabola(0.0), parabola(0.0)]

    assert compute_kbar(populations, 0.0, lambda k: 0.01) == 2
    assert compute_kbar(populations, 0.0, lambda k: 10.0) == 4


def test_error_profile_from_schedule():
    schedule = ThresholdSchedule(Regularity.LIPSCHITZ, c_tau=1.0, d=1, B=1)
    profile = ErrorProfile.from_schedule(schedule)

    assert profile(20, 4) == pytest.approx(threshold(schedule, 20, 4) / 7)
    assert np.all(np.diff(profile.values(20, 10)) <= 0)


def test_sublevel_set():
    h = GridFunction([0.0, 1.0, 2.0, 3.0], [3.0, 1.0, 2.0, 5.0])

    assert sublevel_set(h, 0.0).tolist() == [False, True, False, False]
    assert sublevel_set(h, 2.0).tolist() == [True, True, True, False]
