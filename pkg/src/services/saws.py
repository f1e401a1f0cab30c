import logging
import math
from collections import deque
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.exceptions import (
    ConfigurationException,
    ContractViolationException,
    EmptyCandidatesException,
    WindowOutOfRangeException,
)
from src.models.batches import SampleBatch
from src.models.empirical import EmpiricalLoss
from src.models.feasible_sets import FeasibleSet
from src.models.losses import LossModel
from src.models.types import ParamVector, Regularity
from src.services.learners import BaseLearner
from src.services.solvers import SolveResult, SolverBudget, minimize_empirical


@dataclass(frozen=True)
class ThresholdSchedule:
    """Пороги τ(n, k) для попарных тестов устойчивости"""

    regime: Regularity
    c_tau: float
    d: int
    B: int
    alpha: float = 0.05

    def __post_init__(self):
        if self.c_tau <= 0:
            raise ConfigurationException(f"C_τ должно быть > 0, получено {self.c_tau}")
        if not 0 < self.alpha <= 1:
            raise ConfigurationException(f"α должно лежать в (0, 1], получено {self.alpha}")
        if self.d < 1 or self.B < 1:
            raise ConfigurationException(f"Нужны d ≥ 1 и B ≥ 1, получено d={self.d}, B={self.B}")

    @property
    def regularity_constant(self) -> float:
        """C в τ(n, k) ≤ C·τ(n, 2k)"""
        return 2.0 if self.regime == Regularity.STRONGLY_CONVEX else math.sqrt(2.0)

    def __call__(self, n: int, k: int) -> float:
        return threshold(self, n, k)


def threshold(schedule: ThresholdSchedule, n: int, k: int) -> float:
    if not 1 <= k <= n - 1:
        raise WindowOutOfRangeException(f"Окно k={k} вне диапазона [1, {n - 1}] для n={n}")
    base = schedule.d / (schedule.B * k)
    if schedule.regime == Regularity.STRONGLY_CONVEX:
        return schedule.c_tau * base * math.log(1 / schedule.alpha + schedule.d + schedule.B + n)
    return schedule.c_tau * math.sqrt(base * math.log(1 / schedule.alpha + schedule.B + n))


def candidate_windows(K_prev: int) -> tuple[int, ...]:
    """k_j = 2^{j−1}, j < m, и k_m = K_prev + 1, где m = ⌈log₂(K_prev + 1)⌉ + 1"""
    if K_prev < 0:
        raise ContractViolationException(f"K_prev должно быть ≥ 0, получено {K_prev}")
    largest = K_prev + 1
    m = (largest - 1).bit_length() + 1
    return tuple(2**j for j in range(m - 1)) + (largest,)


def pairwise_test(
    i: int,
    k: int,
    theta_i: ArrayLike,
    theta_k: ArrayLike,
    loss_i: EmpiricalLoss,
    tau_i: float,
    values: tuple[float, float] | None = None,
) -> bool:
    """True (тест пройден) ⇔ f_{n,i}(θ̂_k) − f_{n,i}(θ̂_i) ≤ τ_i.

    values - уже посчитанные (f_{n,i}(θ̂_k), f_{n,i}(θ̂_i)).
    """
    if i > k:
        raise ContractViolationException(f"Тест сравнивает окно i={i} только с k ≥ i, получено k={k}")
    if values is None:
        values = (loss_i.evaluate(theta_k), loss_i.evaluate(theta_i))
    challenger, reference = values
    return challenger - reference <= tau_i


@dataclass(frozen=True, eq=False)
class WindowSelection:
    index: int
    window: int
    theta: ParamVector
    candidates: tuple[int, ...]
    thresholds: tuple[float, ...]
    tests: NDArray[np.bool_] = field(repr=False)
    solves: tuple[SolveResult, ...] = field(repr=False)

    @property
    def admissible(self) -> NDArray[np.bool_]:
        """T_s = 0 для каждого кандидата s"""
        return np.array([bool(np.all(self.tests[s, : s + 1])) for s in range(len(self.candidates))])


def _validate_candidates(candidates: Sequence[int], n: int, available: int) -> tuple[int, ...]:
    if len(candidates) == 0:
        raise EmptyCandidatesException
    windows = tuple(int(k) for k in candidates)
    if any(a >= b for a, b in zip(windows, windows[1:])):
        raise ContractViolationException(f"Окна-кандидаты должны строго возрастать: {windows}")
    if windows[0] < 1 or windows[-1] > n - 1:
        raise WindowOutOfRangeException(f"Кандидаты {windows} вне диапазона [1, {n - 1}]")
    if windows[-1] > available:
        raise WindowOutOfRangeException(
            f"Для окна {windows[-1]} нужно {windows[-1]} пакетов, доступно {available}"
        )
    return windows


def select_window_offline(
    batches: Sequence[SampleBatch],
    n: int,
    candidates: Sequence[int],
    schedule: ThresholdSchedule,
    model: LossModel,
    feasible_set: FeasibleSet,
    budget: SolverBudget,
    warm_start: bool = True,
    parallel: bool = False,
    max_workers: int | None = None,
) -> WindowSelection:
    """Выбор окна по попарным тестам: наибольший кандидат, прошедший тесты со всеми меньшими.

    batches - последние пакеты в порядке периодов; используются самые свежие k_m из них.
    """
    history = tuple(batches)
    windows = _validate_candidates(candidates, n, len(history))
    full = EmpiricalLoss(model, history[len(history) - windows[-1] :])
    losses = [full.suffix(k) for k in windows]

    if parallel and not warm_start:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            solves = list(
                pool.map(lambda loss: minimize_empirical(loss, feasible_set, budget, n=n), losses)
            )
    else:
        solves = []
        previous = None
        for loss in losses:
            result = minimize_empirical(loss, feasible_set, budget, n=n, warm_start=previous)
            solves.append(result)
            if warm_start:
                previous = result.theta

    m = len(windows)
    thresholds = tuple(threshold(schedule, n, k) for k in windows)
    # values[s, i] = f_{n,k_i}(θ̂_{k_s}) через суффиксные средние по периодам
    values = np.empty((m, m))
    counts = np.array(windows)
    for s, result in enumerate(solves):
        suffix_sums = np.cumsum(full.period_means(result.theta)[::-1])
        values[s] = suffix_sums[counts - 1] / counts

    tests = np.zeros((m, m), dtype=bool)
    for s in range(m):
        for i in range(s + 1):
            tests[s, i] = pairwise_test(
                windows[i],
                windows[s],
                solves[i].theta,
                solves[s].theta,
                losses[i],
                thresholds[i],
                values=(values[s, i], values[i, i]),
            )

    admissible = [s for s in range(m) if tests[s, : s + 1].all()]
    chosen = admissible[-1]
    return WindowSelection(
        index=chosen + 1,
        window=windows[chosen],
        theta=solves[chosen].theta,
        candidates=windows,
        thresholds=thresholds,
        tests=tests,
        solves=tuple(solves),
    )


@dataclass
class OnlineState:
    period: int = 0
    memory: int = 0
    retained: deque[SampleBatch] = field(default_factory=deque)
    decisions: list[tuple[ParamVector, int]] = field(default_factory=list)


class SawsLearner(BaseLearner):
    name = "saws"

    def __init__(
        self,
        model: LossModel,
        feasible_set: FeasibleSet,
        budget: SolverBudget,
        schedule: ThresholdSchedule,
        theta_1: ArrayLike | None = None,
        warm_start: bool = True,
        parallel: bool = False,
    ):
        if schedule.regime != model.regularity:
            raise ConfigurationException(
                f"Режим порогов {schedule.regime} не совпадает с классом потерь {model.regularity}"
            )
        super().__init__(model, feasible_set, budget, theta_1)
        self.schedule = schedule
        self.warm_start = warm_start
        self.parallel = parallel
        self.state = OnlineState(retained=self.retained)
        self.last_selection: WindowSelection | None = None

    def decide(self, n):
        if n != self.state.period + 1:
            raise ContractViolationException(f"Ожидался период {self.state.period + 1}, получен {n}")
        self.state.period = n
        if n == 1:
            theta, window = self.theta_1, 0
        else:
            selection = select_window_offline(
                self.retained,
                n,
                candidate_windows(self.state.memory),
                self.schedule,
                self.model,
                self.feasible_set,
                self.budget,
                warm_start=self.warm_start,
                parallel=self.parallel,
            )
            self.last_selection = selection
            theta, window = selection.theta, selection.window
        self.window = self.state.memory = window
        self.state.decisions.append((theta, window))
        return theta

    def _release(self):
        # после периода n нужны последние K_n + 1 пакетов
        while len(self.retained) > self.state.memory + 1:
            self.retained.popleft()


@dataclass(frozen=True, eq=False)
class OnlineTrace:
    thetas: NDArray[np.float64]
    windows: NDArray[np.int64]

    def __len__(self) -> int:
        return self.windows.shape[0]


def run_online(
    stream: Sequence[SampleBatch],
    schedule: ThresholdSchedule,
    model: LossModel,
    feasible_set: FeasibleSet,
    budget: SolverBudget,
    theta_1: ArrayLike | None = None,
    warm_start: bool = True,
    parallel: bool = False,
) -> OnlineTrace:
    if len(stream) == 0:
        raise ContractViolationException("Поток пакетов пуст")
    learner = SawsLearner(
        model, feasible_set, budget, schedule, theta_1, warm_start=warm_start, parallel=parallel
    )
    thetas, windows = [], []
    for expected, batch in enumerate(stream, start=1):
        if batch.period != expected:
            raise ContractViolationException(
                f"Периоды потока должны идти подряд с 1: ожидался {expected}, получен {batch.period}"
            )
        thetas.append(learner.decide(batch.period))
        windows.append(learner.window)
        learner.observe(batch)
    return OnlineTrace(np.vstack(thetas), np.array(windows, dtype=np.int64))


@dataclass(frozen=True)
class CrossValidationResult:
    index: int
    c_tau: float
    scores: tuple[float, ...]


def cv_score(
    trace: OnlineTrace, prefix: Sequence[SampleBatch], model: LossModel
) -> float:
    """Σ_n f_n(θ_n): каждое решение оценивается на ещё не использованном пакете периода n"""
    return float(
        sum(np.mean(model.losses(theta, batch.samples)) for theta, batch in zip(trace.thetas, prefix))
    )


def select_hyperparameter_cv(
    schedules: Sequence[ThresholdSchedule],
    prefix: Sequence[SampleBatch],
    model: LossModel,
    feasible_set: FeasibleSet,
    budget: SolverBudget,
    theta_1: ArrayLike | None = None,
) -> CrossValidationResult:
    """Скользящая кросс-валидация C_τ; index - номер выбранного расписания с единицы, как в WindowSelection.

    При равенстве сумм выбирается меньшее C_τ, затем более ранний кандидат.
    """
    if not schedules:
        raise EmptyCandidatesException("Сетка порогов для кросс-валидации пуста")
    if len(prefix) < 2:
        raise ConfigurationException(f"Для кросс-валидации нужно N₀ ≥ 2, получено {len(prefix)}")

    scores = []
    for schedule in schedules:
        trace = run_online(prefix, schedule, model, feasible_set, budget, theta_1)
        scores.append(cv_score(trace, prefix, model))
    chosen = min(range(len(schedules)), key=lambda h: (scores[h], schedules[h].c_tau, h))
    logging.info(
        f"✅ Кросс-валидация выбрала C_τ={schedules[chosen].c_tau} "
        f"(сумма потерь {scores[chosen]:.4g}, N₀={len(prefix)})"
    )
    return CrossValidationResult(chosen + 1, schedules[chosen].c_tau, tuple(scores))
