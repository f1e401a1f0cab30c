import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.exceptions import ConfigurationException, ContractViolationException, GridMismatchException
from src.models.population import PopulationLoss
from src.services.saws import ThresholdSchedule, threshold


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Функция Ω → ℝ, заданная значениями в точках конечной сетки.

    Все величины близости считаются точно на сетке; истинное δ* по всему Ω
    может быть только больше сеточного.
    """

    grid: NDArray[np.float64]
    values: NDArray[np.float64]
    minimum: float = field(init=False)

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=np.float64)
        if grid.ndim == 1:
            grid = grid[:, None]
        values = np.asarray(self.values, dtype=np.float64).ravel()
        if grid.shape[0] == 0:
            raise ContractViolationException("Сетка функции пуста")
        if values.shape[0] != grid.shape[0]:
            raise ContractViolationException(
                f"Число значений {values.shape[0]} ≠ числу точек сетки {grid.shape[0]}"
            )
        if not np.all(np.isfinite(values)):
            raise ContractViolationException("Значения функции содержат NaN или Inf")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "minimum", float(values.min()))

    @classmethod
    def from_callable(
        cls, grid: ArrayLike, function: Callable[[NDArray[np.float64]], ArrayLike]
    ) -> "GridFunction":
        points = np.asarray(grid, dtype=np.float64)
        if points.ndim == 1:
            points = points[:, None]
        return cls(points, np.asarray(function(points), dtype=np.float64))

    @classmethod
    def from_population(cls, population: PopulationLoss, grid: ArrayLike) -> "GridFunction":
        return cls.from_callable(grid, population.values)

    @property
    def suboptimality(self) -> NDArray[np.float64]:
        """f̃ = f − min f"""
        return self.values - self.minimum

    @property
    def range(self) -> float:
        return float(self.values.max()) - self.minimum

    def shifted(self, constant: float) -> "GridFunction":
        return GridFunction(self.grid, self.values + constant)


@dataclass(frozen=True)
class ClosenessParams:
    epsilon: float
    delta: float

    def __post_init__(self):
        if self.epsilon < 0 or self.delta < 0:
            raise ContractViolationException(
                f"Параметры близости должны быть ≥ 0, получено ε={self.epsilon}, δ={self.delta}"
            )


def _check_shared(*functions: GridFunction) -> None:
    first = functions[0].grid
    for function in functions[1:]:
        if function.grid is not first and not np.array_equal(function.grid, first):
            raise GridMismatchException


def min_delta(f: GridFunction, g: GridFunction, epsilon: float) -> float:
    """Наименьшее δ ≥ 0, при котором f и g (ε, δ)-близки на сетке"""
    _check_shared(f, g)
    f_gap, g_gap = f.suboptimality, g.suboptimality
    factor = math.exp(-epsilon)
    return max(0.0, float(np.max(factor * g_gap - f_gap)), float(np.max(factor * f_gap - g_gap)))


def is_close(f: GridFunction, g: GridFunction, epsilon: float, delta: float) -> bool:
    # g̃ ≤ e^ε(f̃ + δ) и f̃ ≤ e^ε(g̃ + δ) во всех точках сетки
    _check_shared(f, g)
    f_gap, g_gap = f.suboptimality, g.suboptimality
    scale = math.exp(epsilon)
    return bool(np.all(g_gap <= scale * (f_gap + delta)) and np.all(f_gap <= scale * (g_gap + delta)))


def sublevel_set(h: GridFunction, t: float) -> NDArray[np.bool_]:
    """S(h, t) = {θ : h(θ) − inf h ≤ t} как маска по сетке"""
    return h.suboptimality <= t


def realized_levels(
    f: GridFunction, g: GridFunction, epsilon: float, delta: float
) -> NDArray[np.float64]:
    """Все уровни t, на которых может нарушиться вложение подуровневых множеств"""
    _check_shared(f, g)
    f_gap, g_gap = f.suboptimality, g.suboptimality
    scale = math.exp(epsilon)
    return np.unique(np.concatenate([f_gap, g_gap, scale * (f_gap + delta), scale * (g_gap + delta)]))


def sublevel_inclusion_holds(
    f: GridFunction,
    g: GridFunction,
    epsilon: float,
    delta: float,
    levels: ArrayLike | None = None,
) -> bool:
    """S(g, e^{−ε}t − δ) ⊆ S(f, t) ⊆ S(g, e^ε(t + δ)) для каждого t из levels"""
    _check_shared(f, g)
    if levels is None:
        levels = realized_levels(f, g, epsilon, delta)
    levels = np.asarray(levels, dtype=np.float64)
    f_gap, g_gap = f.suboptimality, g.suboptimality
    scale = math.exp(epsilon)

    middle = f_gap[None, :] <= levels[:, None]
    outer = g_gap[None, :] <= scale * (levels[:, None] + delta)
    # g̃ ≤ e^{−ε}t − δ записано как e^ε(g̃ + δ) ≤ t
    inner = (scale * (g_gap + delta))[None, :] <= levels[:, None]
    return bool(np.all(~inner | middle) and np.all(~middle | outer))


class SufficientCondition(StrEnum):
    SUP_NORM = "sup-norm"
    GRADIENT_SUP = "gradient-sup"
    STRONGLY_CONVEX_GRADIENT = "strongly-convex-gradient"
    MINIMIZERS = "minimizers"


def _require(kind: SufficientCondition, **inputs) -> None:
    missing = [name for name, value in inputs.items() if value is None]
    if missing:
        raise ContractViolationException(f"Для условия {kind} не заданы: {', '.join(missing)}")


def _check_curvature(rho: float, L: float) -> None:
    if rho <= 0:
        raise ContractViolationException(f"ρ должно быть > 0, получено {rho}")
    if L < rho:
        raise ContractViolationException(f"Нужно L ≥ ρ, получено L={L}, ρ={rho}")


def closeness_from_sufficient(
    kind: SufficientCondition | str,
    D0: float | None = None,
    D1: float | None = None,
    M: float | None = None,
    rho: float | None = None,
    L: float | None = None,
    r: float | None = None,
    theta_f: ArrayLike | None = None,
    theta_g: ArrayLike | None = None,
) -> ClosenessParams:
    kind = SufficientCondition(kind)
    match kind:
        case SufficientCondition.SUP_NORM:
            _require(kind, D0=D0)
            return ClosenessParams(0.0, 2 * D0)
        case SufficientCondition.GRADIENT_SUP:
            _require(kind, D1=D1, M=M)
            return ClosenessParams(0.0, 2 * M * D1)
        case SufficientCondition.STRONGLY_CONVEX_GRADIENT:
            _require(kind, D1=D1, M=M, rho=rho, L=L, r=r)
            _check_curvature(rho, L)
            ratio = D1 / (rho * r)
            delta = 3 * L * M * r * min(ratio**2, ratio)
            if D1 <= rho * r:
                delta = min(delta, 3 * L * D1**2 / rho**2)
            return ClosenessParams(math.log(2), delta)
        case SufficientCondition.MINIMIZERS:
            _require(kind, rho=rho, L=L, theta_f=theta_f, theta_g=theta_g)
            _check_curvature(rho, L)
            offset = np.asarray(theta_f, dtype=np.float64) - np.asarray(theta_g, dtype=np.float64)
            return ClosenessParams(math.log(2 * L / rho), rho / 2 * float(offset @ offset))


def quasi_stationarity_delta(functions: Sequence[GridFunction], epsilon: float) -> float:
    """max_{i,j} min_delta(g_i, g_j, ε); min_delta симметрична, поэтому достаточно i < j"""
    if not functions:
        raise ContractViolationException("Последовательность функций пуста")
    _check_shared(*functions)
    return max(
        (
            min_delta(functions[i], functions[j], epsilon)
            for i in range(len(functions))
            for j in range(i + 1, len(functions))
        ),
        default=0.0,
    )


def grid_range(functions: Sequence[GridFunction]) -> float:
    """U = max по функциям (sup − inf) на сетке"""
    return max((function.range for function in functions), default=0.0)


def pairwise_sup_distances(functions: Sequence[GridFunction]) -> NDArray[np.float64]:
    """Матрица ‖F_i − F_j‖_∞ по общей сетке"""
    _check_shared(*functions)
    values = np.vstack([function.values for function in functions])
    distances = np.zeros((len(functions), len(functions)))
    for i in range(len(functions)):
        distances[i] = np.max(np.abs(values - values[i]), axis=1)
    return distances


@dataclass(frozen=True)
class ErrorProfile:
    """ψ(n, k), невозрастающая по k, и запас ε"""

    psi: Callable[[int, int], float]
    epsilon: float = 0.0

    def __call__(self, n: int, k: int) -> float:
        return self.psi(n, k)

    @classmethod
    def constant(cls, value: float, epsilon: float = 0.0) -> "ErrorProfile":
        if value < 0:
            raise ConfigurationException(f"ψ должно быть ≥ 0, получено {value}")
        return cls(lambda n, k: value, epsilon)

    @classmethod
    def from_schedule(cls, schedule: ThresholdSchedule, epsilon: float = 0.0) -> "ErrorProfile":
        """Наибольшая ψ, при которой τ ≥ 7e^{5ε}ψ"""
        factor = 7 * math.exp(5 * epsilon)
        return cls(lambda n, k: threshold(schedule, n, k) / factor, epsilon)

    def values(self, n: int, windows: int) -> NDArray[np.float64]:
        return np.array([self.psi(n, k) for k in range(1, windows + 1)])


def compute_kbar(
    populations: Sequence[GridFunction], epsilon: float, psi: Callable[[int], float]
) -> int:
    """Наибольшее k, при котором все F_{n−k..n−1} (ε, ψ(k))-близки к F_{n−1}.

    populations - F_{n−K}, …, F_{n−1} от старых к новым; psi(k) - ψ(n, k) при фиксированном n.
    """
    if not populations:
        raise ContractViolationException("Последовательность функций пуста")
    _check_shared(*populations)
    latest = populations[-1]
    deltas = np.array([min_delta(function, latest, epsilon) for function in populations[::-1]])
    worst = np.maximum.accumulate(deltas)
    admissible = [k for k in range(1, len(populations) + 1) if worst[k - 1] <= psi(k)]
    return max(admissible, default=0)
