import numpy as np
import pytest

from src.exceptions import UnknownBaselineException
from src.models.families import GaussianMeanModel
from src.models.feasible_sets import EuclideanBall
from src.models.types import Regularity
from src.services.learners import RestartOracleLearner, baseline
from src.services.solvers import solver_budget

MODEL = GaussianMeanModel(1)
BALL = EuclideanBall.centered(1, 2.0)
BUDGET = solver_budget(Regularity.STRONGLY_CONVEX, M=4, sigma=1)
VALUES = [0.0, 0.2, 0.4, 1.0, 1.2, 1.4]


def play(learner, batches):
    decisions = []
    for batch in batches:
        decisions.append((float(learner.decide(batch.period)[0]), learner.window))
        learner.observe(batch)
    return decisions


@pytest.mark.parametrize(
    "kind, k, boundaries, expected",
    [
        ("fixed-window", 1, None, [(0.0, 0), (0.0, 1), (0.2, 1), (0.4, 1), (1.0, 1), (1.2, 1)]),
        ("fixed-window", 2, None, [(0.0, 0), (0.0, 1), (0.1, 2), (0.3, 2), (0.7, 2), (1.1, 2)]),
        ("erm-all", None, None, [(0.0, 0), (0.0, 1), (0.1, 2), (0.2, 3), (0.4, 4), (0.56, 5)]),
        ("restart-oracle", None, [3], [(0.0, 0), (0.0, 1), (0.1, 2), (0.2, 3), (1.0, 1), (1.1, 2)]),
    ],
)
def test_baseline_decisions(batches_of, kind, k, boundaries, expected):
    learner = baseline(kind, MODEL, BALL, BUDGET, k=k, boundaries=boundaries)
    decisions = play(learner, batches_of(VALUES))

    assert [window for _, window in decisions] == [window for _, window in expected]
    assert np.allclose([theta for theta, _ in decisions], [theta for theta, _ in expected])


def test_fixed_window_memory(batches_of):
    learner = baseline("fixed-window", MODEL, BALL, BUDGET, k=2)
    play(learner, batches_of(VALUES))

    assert len(learner.retained) == 2


def test_restart_oracle_segment_start():
    learner = RestartOracleLearner(MODEL, BALL, BUDGET, boundaries=(3, 7))

    assert [learner.segment_start(n) for n in (1, 3, 4, 7, 8)] == [0, 0, 3, 3, 7]


def test_unknown_baseline():
    with pytest.raises(UnknownBaselineException):
        baseline("oracle-of-delphi", MODEL, BALL, BUDGET)


def test_fixed_window_needs_positive_k():
    with pytest.raises(UnknownBaselineException):
        baseline("fixed-window", MODEL, BALL, BUDGET, k=-1)
