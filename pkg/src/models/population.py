from abc import ABC, abstractmethod
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.exceptions import MonteCarloSeedException
from src.models.losses import LossModel
from src.models.types import ParamVector, as_param_vector


@dataclass(frozen=True)
class ExcessEstimate:
    value: float
    standard_error: float = 0.0


class PopulationLoss(ABC):
    mode: str
    minimizer: ParamVector | None

    @abstractmethod
    def values(self, thetas: NDArray[np.float64]) -> NDArray[np.float64]:
        """F_n для каждой строки thetas"""

    @property
    @abstractmethod
    def minimum(self) -> float: ...

    @abstractmethod
    def excess(self, theta: ParamVector) -> ExcessEstimate: ...

    def value(self, theta: ArrayLike) -> float:
        return float(self.values(np.atleast_2d(np.asarray(theta, dtype=np.float64)))[0])


class ClosedFormPopulationLoss(PopulationLoss):
    mode = "closed-form"

    def __init__(
        self,
        evaluator: Callable[[NDArray[np.float64]], NDArray[np.float64]],
        minimizer: ArrayLike,
        minimum: float | None = None,
    ):
        self._evaluator = evaluator
        self.minimizer = as_param_vector(minimizer)
        self._minimum = self.value(self.minimizer) if minimum is None else float(minimum)

    def values(self, thetas):
        return self._evaluator(np.atleast_2d(thetas))

    @property
    def minimum(self) -> float:
        return self._minimum

    def excess(self, theta):
        return ExcessEstimate(value=self.value(theta) - self._minimum)


class MonteCarloPopulationLoss(PopulationLoss):
    """F_n, оценённая по фиксированной оценочной выборке с известным минимизатором.

    Избыточный риск оценивается по парным разностям ℓ(θ,z) − ℓ(θ*,z),
    поэтому его стандартная ошибка заметно меньше, чем у самого F_n.
    """

    mode = "monte-carlo"

    def __init__(
        self,
        model: LossModel,
        evaluation_samples: NDArray[np.float64],
        minimizer: ArrayLike,
        seed: int | None,
    ):
        self.model = model
        self.evaluation_samples = evaluation_samples
        self.minimizer = as_param_vector(minimizer, model.dimension)
        self.seed = seed
        self._reference_losses = model.losses(self.minimizer, evaluation_samples)

    def values(self, thetas):
        return np.array(
            [np.mean(self.model.losses(theta, self.evaluation_samples)) for theta in thetas]
        )

    @property
    def minimum(self) -> float:
        return float(np.mean(self._reference_losses))

    def excess(self, theta):
        if self.seed is None:
            raise MonteCarloSeedException
        differences = self.model.losses(theta, self.evaluation_samples) - self._reference_losses
        return ExcessEstimate(
            value=float(np.mean(differences)),
            standard_error=float(np.std(differences, ddof=1) / np.sqrt(differences.shape[0])),
        )


def population_excess(problem: PopulationLoss, theta: ArrayLike) -> ExcessEstimate:
    point = as_param_vector(theta)
    return problem.excess(point)
