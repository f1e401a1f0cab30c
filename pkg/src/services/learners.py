from abc import ABC, abstractmethod
from collections import deque
from collections.abc import Sequence

import numpy as np
from numpy.typing import ArrayLike

from src.exceptions import UnknownBaselineException
from src.models.batches import SampleBatch
from src.models.empirical import EmpiricalLoss
from src.models.feasible_sets import FeasibleSet
from src.models.losses import LossModel
from src.models.types import ParamVector
from src.services.solvers import SolverBudget, minimize_empirical


class BaseLearner(ABC):
    """Общий интерфейс онлайн-алгоритмов.

    На шаге n вызывается decide(n), возвращающий θ_n по данным периодов < n,
    затем observe(batch) с данными периода n. Атрибут window хранит K_n -
    число последних периодов, по которым принято решение.
    """

    name: str

    def __init__(
        self,
        model: LossModel,
        feasible_set: FeasibleSet,
        budget: SolverBudget,
        theta_1: ArrayLike | None = None,
    ):
        self.model = model
        self.feasible_set = feasible_set
        self.budget = budget
        self.theta_1 = feasible_set.project(
            np.zeros(model.dimension) if theta_1 is None else theta_1
        )
        self.window = 0
        self.retained: deque[SampleBatch] = deque()

    @abstractmethod
    def decide(self, n: int) -> ParamVector: ...

    def observe(self, batch: SampleBatch) -> None:
        self.retained.append(batch)
        self._release()

    def _release(self) -> None:
        """Освобождает данные, которые больше никогда не понадобятся"""

    def _solve(self, n: int, k: int) -> ParamVector:
        loss = EmpiricalLoss(self.model, tuple(self.retained)[len(self.retained) - k :])
        return minimize_empirical(loss, self.feasible_set, self.budget, n=n).theta


class FixedWindowLearner(BaseLearner):
    name = "fixed-window"

    def __init__(self, *args, k: int = 1, **kwargs):
        super().__init__(*args, **kwargs)
        if k < 1:
            raise UnknownBaselineException(f"Размер окна должен быть ≥ 1, получено {k}")
        self.k = k
        self.name = f"fixed-window-{k}"

    def decide(self, n):
        if n == 1:
            self.window = 0
            return self.theta_1
        self.window = min(self.k, n - 1)
        return self._solve(n, self.window)

    def _release(self):
        while len(self.retained) > self.k:
            self.retained.popleft()


class ErmAllLearner(BaseLearner):
    name = "erm-all"

    def decide(self, n):
        if n == 1:
            self.window = 0
            return self.theta_1
        self.window = n - 1
        return self._solve(n, self.window)


class RestartOracleLearner(BaseLearner):
    """Знает истинные границы 0 = N_0 < N_1 < … и объединяет данные текущего куска"""

    name = "restart-oracle"

    def __init__(self, *args, boundaries: Sequence[int] = (), **kwargs):
        super().__init__(*args, **kwargs)
        self.boundaries = np.array(sorted({0, *boundaries}), dtype=np.int64)

    def segment_start(self, period: int) -> int:
        """N_{j−1} для куска, содержащего период"""
        return int(self.boundaries[np.searchsorted(self.boundaries, period) - 1])

    def decide(self, n):
        if n == 1:
            self.window = 0
            return self.theta_1
        self.window = (n - 1) - self.segment_start(n - 1)
        return self._solve(n, self.window)

    def _release(self):
        latest = self.retained[-1].period
        start = self.segment_start(latest)
        # на следующем шаге нужен хотя бы последний период, даже если он открывает кусок
        while len(self.retained) > 1 and self.retained[0].period <= start:
            self.retained.popleft()


def baseline(
    kind: str,
    model: LossModel,
    feasible_set: FeasibleSet,
    budget: SolverBudget,
    theta_1: ArrayLike | None = None,
    k: int | None = None,
    boundaries: Sequence[int] | None = None,
) -> BaseLearner:
    match kind:
        case "fixed-window":
            return FixedWindowLearner(model, feasible_set, budget, theta_1, k=k or 1)
        case "erm-all":
            return ErmAllLearner(model, feasible_set, budget, theta_1)
        case "restart-oracle":
            return RestartOracleLearner(
                model, feasible_set, budget, theta_1, boundaries=boundaries or ()
            )
    raise UnknownBaselineException(f"Неизвестный тип базового алгоритма: {kind}")
