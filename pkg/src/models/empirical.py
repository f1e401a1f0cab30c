from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.exceptions import ContractViolationException, WindowOutOfRangeException
from src.models.batches import SampleBatch
from src.models.losses import LossModel
from src.models.types import ParamVector, as_param_vector


@dataclass(frozen=True, eq=False)
class EmpiricalLoss:
    """Предусреднение f_{n,k}: среднее потерь по kB точкам последних k периодов"""

    model: LossModel
    batches: tuple[SampleBatch, ...]
    stacked: NDArray[np.float64] = field(init=False, repr=False)

    def __post_init__(self):
        if not self.batches:
            raise WindowOutOfRangeException("Окно предусреднения пусто")
        sizes = {batch.size for batch in self.batches}
        if len(sizes) != 1:
            raise ContractViolationException("Размер пакета должен быть одинаковым во всём окне")
        object.__setattr__(self, "batches", tuple(self.batches))
        object.__setattr__(self, "stacked", np.vstack([batch.samples for batch in self.batches]))

    @property
    def window(self) -> int:
        return len(self.batches)

    @property
    def batch_size(self) -> int:
        return self.batches[0].size

    @property
    def dimension(self) -> int:
        return self.model.dimension

    def evaluate(self, theta: ArrayLike) -> float:
        point = as_param_vector(theta, self.dimension)
        return float(np.mean(self.model.losses(point, self.stacked)))

    def subgradient(self, theta: ArrayLike) -> ParamVector:
        point = as_param_vector(theta, self.dimension)
        return self.model.subgradients(point, self.stacked).mean(axis=0)

    def period_means(self, theta: ArrayLike) -> NDArray[np.float64]:
        """f_i(θ) для каждого периода окна, от старого к новому"""
        point = as_param_vector(theta, self.dimension)
        losses = self.model.losses(point, self.stacked)
        return losses.reshape(self.window, self.batch_size).mean(axis=1)

    def suffix(self, k: int) -> "EmpiricalLoss":
        """Вложенное окно из k самых свежих периодов"""
        if not 1 <= k <= self.window:
            raise WindowOutOfRangeException(f"Окно {k} вне диапазона [1, {self.window}]")
        return EmpiricalLoss(self.model, self.batches[self.window - k :])


def pre_average(
    history: Sequence[SampleBatch], n: int, k: int, model: LossModel
) -> EmpiricalLoss:
    """f_{n,k} = (1/k)·Σ_{i=n−k}^{n−1} f_i по батчам истории"""
    if not 1 <= k <= n - 1:
        raise WindowOutOfRangeException(f"Окно k={k} вне диапазона [1, {n - 1}] для n={n}")
    by_period = {batch.period: batch for batch in history}
    missing = [i for i in range(n - k, n) if i not in by_period]
    if missing:
        raise WindowOutOfRangeException(f"Нет данных за периоды {missing}")
    return EmpiricalLoss(model, tuple(by_period[i] for i in range(n - k, n)))
